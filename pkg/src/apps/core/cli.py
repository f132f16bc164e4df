"""
Subcommand plumbing for the `cosmo` management command.

Each app exposes a `subcommands` list in its subcommands.py; the project
router collects them. A subcommand builds one Artifact from the loaded run
configuration and its own flags, and never writes output itself.
"""

import argparse
import logging

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from apps.core.lib.tables import FORMATS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Artifact:
    """
    Output of one run: table rows or a report document.

    Nothing is encoded here; the command emits it. A failed artifact is
    still written; failure carries the error document the command reports
    on stderr before exiting with status 1.
    """

    rows: Optional[List[Dict[str, Any]]] = None
    document: Any = None
    fmt: str = 'json'
    columns: Optional[Sequence[str]] = None
    failure: Optional[Dict[str, Any]] = None
    path: Optional[str] = None

    @property
    def is_table(self) -> bool:
        return self.rows is not None

    @property
    def passed(self) -> bool:
        return self.failure is None


def common_parser() -> argparse.ArgumentParser:
    """Options shared by every subcommand, attached as an argparse parent."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', default=None, help='JSON run configuration')
    parser.add_argument('--output', default=None, help='Artifact path; stdout when omitted')
    parser.add_argument('--format', choices=FORMATS, default=None,
                        help='Table format; the config output.format when omitted')
    parser.add_argument('--echo-config', dest='echo_config', default=None,
                        help='Where to write the effective configuration')
    return parser


def log_space(start: float, stop: float, points: int) -> np.ndarray:
    if points == 1:
        return np.array([float(start)])
    return np.logspace(np.log10(start), np.log10(stop), points)


class Subcommand:
    """
    Base class for one `cosmo` subcommand.

    Subclasses set name and help, declare flags in add_arguments and return
    an Artifact from handle.
    """

    name = ''
    help = ''
    csv_flag = False

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def attach(self, subparsers, parents: Sequence[argparse.ArgumentParser]) -> None:
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help, parents=list(parents))
        if self.csv_flag:
            parser.add_argument('--csv', nargs='?', const='', default=None, metavar='PATH',
                                help='Write CSV, to PATH when given')
        self.add_arguments(parser)

    def handle(self, options: Dict[str, Any], config) -> Artifact:
        raise NotImplementedError

    # Helpers

    def table_format(self, options: Dict[str, Any], config) -> str:
        if options.get('csv') is not None:
            return 'csv'
        return options.get('format') or config.output['format']

    def artifact_path(self, options: Dict[str, Any], config) -> Optional[str]:
        return options.get('csv') or options.get('output') or config.output['path'] or None

    def table(self, rows: List[Dict[str, Any]], options: Dict[str, Any], config,
              columns: Optional[Sequence[str]] = None) -> Artifact:
        fmt = self.table_format(options, config)
        logger.debug(f"{self.name}: {len(rows)} {fmt} rows")
        return Artifact(rows=list(rows), fmt=fmt, columns=columns, path=self.artifact_path(options, config))

    def report(self, document: Any, options: Dict[str, Any], config,
               failure: Optional[Dict[str, Any]] = None) -> Artifact:
        return Artifact(document=document, failure=failure,
                        path=self.artifact_path(options, config))


def check_failure(name: str, message: str, **context: Any) -> Dict[str, Any]:
    """Error document for a property check that ran but did not pass."""
    return {'success': False, 'error': 'check_failed', 'message': message,
            'context': {'subcommand': name, **context}}


def pick(options: Dict[str, Any], settings: Any, key: str) -> Any:
    """Flag value, falling back to the configured setting of the same name."""
    return getattr(settings, key) if options.get(key) is None else options[key]
