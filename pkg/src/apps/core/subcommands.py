from apps.core.cli import Artifact, Subcommand, check_failure
from apps.core.lib.units import constants_document


class ConstantsCommand(Subcommand):
    name = 'constants'
    help = 'Dump the constant set, Planck scales and identity checks as JSON'

    def handle(self, options, config) -> Artifact:
        document = constants_document(config.constants)
        failure = None
        if not document['success']:
            failed = [name for name, item in document['identities'].items() if not item['passed']]
            failure = check_failure(self.name, 'Planck identities failed', identities=failed)
        return self.report(document, options, config, failure=failure)


subcommands = [ConstantsCommand()]
