from dataclasses import replace

from apps.burst.lib.graviton import burst_table
from apps.core.cli import Artifact, Subcommand

BURST_COLUMNS = ('k', 'T_kelvin', 'occupation', 'power_watts')


class BurstTableCommand(Subcommand):
    name = 'burst-table'
    help = 'Mean graviton occupation and radiated power at k * T_star for k = 1..5'
    csv_flag = True

    def add_arguments(self, parser):
        parser.add_argument('--tstar', type=float, default=None, metavar='K',
                            help='Reference temperature (K); the configured T_star when omitted')

    def handle(self, options, config) -> Artifact:
        burst = config.burst
        if options['tstar'] is not None:
            burst = replace(burst, T_star=options['tstar'])
        rows = [row.as_row() for row in burst_table(burst, config.constants)]
        return self.table(rows, options, config, columns=BURST_COLUMNS)


subcommands = [BurstTableCommand()]
