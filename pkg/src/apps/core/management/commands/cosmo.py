import logging

from django.core.management.base import BaseCommand

from apps.core.cli import common_parser
from apps.core.config import load_config
from apps.core.exceptions import CosmologyError
from apps.core.lib.tables import emit_report, emit_table, render_json
from cosmotoy.routers import subcommands

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Run one cosmotoy computation and write its table or report.'

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.registry = {command.name: command for command in subcommands()}

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', metavar='SUBCOMMAND', required=True)
        parents = [common_parser()]
        for command in self.registry.values():
            command.attach(subparsers, parents)

    def handle(self, *args, **options):
        command = self.registry[options['subcommand']]
        logger.info(f"cosmo {command.name} started")
        try:
            config = load_config(options['config'])
            self._echo(config, command.artifact_path(options, config), options)
            artifact = command.handle(options, config)
            self._write(artifact)
        except CosmologyError as exc:
            document = exc.as_dict()
            document['context'] = {'subcommand': command.name, **document['context']}
            self._fail(document)
        except (ValueError, ArithmeticError) as exc:
            logger.exception(f"cosmo {command.name} hit an unmapped numerical error")
            self._fail({
                'success': False,
                'error': 'computation_error',
                'message': str(exc),
                'context': {'subcommand': command.name, 'exception': type(exc).__name__},
            })
        except OSError as exc:
            self._fail({
                'success': False,
                'error': 'io_error',
                'message': f"{exc.strerror}: {exc.filename}",
                'context': {'subcommand': command.name, 'path': exc.filename},
            })

        if not artifact.passed:
            self._fail(artifact.failure)
        logger.info(f"cosmo {command.name} finished")

    def _echo(self, config, artifact_path, options):
        path = options['echo_config'] or (f'{artifact_path}.config.json' if artifact_path else None)
        if path is None:
            self.stderr.write(config.echo().decode('utf-8'), style_func=lambda x: x, ending='')
            return
        with open(path, 'wb') as handle:
            handle.write(config.echo())

    def _write(self, artifact):
        stream = None if artifact.path else self.stdout
        if artifact.is_table:
            payload = emit_table(artifact.rows, fmt=artifact.fmt, path=artifact.path,
                                 stream=stream, columns=artifact.columns)
        else:
            payload = emit_report(artifact.document, path=artifact.path, stream=stream)
        if artifact.path:
            logger.info(f"Wrote {len(payload)} bytes to {artifact.path}")

    def _fail(self, document):
        logger.error(f"cosmo failed: {document['error']}: {document['message']}")
        self.stderr.write(render_json(document).decode('utf-8'), style_func=lambda x: x, ending='')
        raise SystemExit(1)
