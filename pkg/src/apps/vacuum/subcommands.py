from apps.core.cli import Artifact, Subcommand, log_space
from apps.vacuum.lib.vacuum_energy import hh_amplitude, lambda_table

LAMBDA_COLUMNS = ('T', 'lambda4', 'lambda5', 'hh_amplitude')


class LambdaCommand(Subcommand):
    name = 'lambda'
    help = 'Vacuum-energy parameters and Hartle-Hawking amplitude over temperature'

    def add_arguments(self, parser):
        parser.add_argument('--temp', type=float, nargs='+', default=None, metavar='K',
                            help='Temperatures (K); the configured sweep when omitted')
        parser.add_argument('--post-burst', dest='post_burst', action='store_true',
                            help='Clamp lambda_4 to the post-burst cap')

    def handle(self, options, config) -> Artifact:
        settings = config.vacuum
        temperatures = options['temp']
        if temperatures is None:
            temperatures = log_space(settings.sweep_T_min, settings.sweep_T_max, settings.sweep_points).tolist()
        rows = lambda_table(temperatures, settings.model, post_burst=options['post_burst'])
        return self.table(rows, options, config, columns=LAMBDA_COLUMNS)


class HartleHawkingCommand(Subcommand):
    name = 'hh'
    help = 'Hartle-Hawking amplitude exp(3 pi / 2 G lambda) in natural units'

    def add_arguments(self, parser):
        parser.add_argument('--lambda', dest='lam', type=float, required=True, help='Vacuum-energy parameter')
        parser.add_argument('--G', type=float, default=1.0, help='Gravitational constant')

    def handle(self, options, config) -> Artifact:
        amplitude = hh_amplitude(options['lam'], options['G'])
        document = {
            'lambda': options['lam'],
            'G': options['G'],
            'hh_amplitude': amplitude.value,
            'log_hh_amplitude': amplitude.log_value,
            'saturated': amplitude.saturated,
        }
        return self.report(document, options, config)


subcommands = [LambdaCommand(), HartleHawkingCommand()]
