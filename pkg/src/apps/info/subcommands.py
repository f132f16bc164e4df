import logging

from apps.core.cli import Artifact, Subcommand, log_space, pick
from apps.info.lib.bounds import SECONDS_PER_YEAR, entropy_profile, lloyd_bounds

logger = logging.getLogger(__name__)

LLOYD_COLUMNS = ('rho', 'age_years', 'energy', 'entropy',
                 'rate_bound', 'memory_bound', 'matter_bound', 'refined')
ENTROPY_COLUMNS = ('t_seconds', 't_planck', 'entropy', 'density', 'regime')


class LloydCommand(Subcommand):
    name = 'lloyd'
    help = 'Rate, memory, matter and refined operation bounds (SI inputs)'

    def add_arguments(self, parser):
        parser.add_argument('--rho', type=float, default=None, help='Mass density (kg/m^3)')
        parser.add_argument('--age', dest='age_years', type=float, default=None, help='Age (yr)')
        parser.add_argument('--energy', type=float, default=None, help='Energy (J)')
        parser.add_argument('--entropy', type=float, default=None, help='Entropy (J/K)')

    def handle(self, options, config) -> Artifact:
        settings = config.info
        row = {key: pick(options, settings, key) for key in ('rho', 'age_years', 'energy', 'entropy')}
        t = row['age_years'] * SECONDS_PER_YEAR
        row.update(lloyd_bounds(row['energy'], row['entropy'], row['rho'], t, config.constants))
        logger.info(f"lloyd: matter bound {row['matter_bound']:.4e} at t={t:.4e} s")
        return self.table([row], options, config, columns=LLOYD_COLUMNS)


class EntropyCommand(Subcommand):
    name = 'entropy'
    help = 'Piecewise entropy history sampled at times given in seconds'

    def add_arguments(self, parser):
        parser.add_argument('--t', type=float, nargs='+', default=None, metavar='S',
                            help='Times (s); the configured sweep when omitted')

    def handle(self, options, config) -> Artifact:
        settings = config.info
        seconds = options['t']
        if seconds is None:
            seconds = log_space(settings.sweep_t_min, settings.sweep_t_max, settings.sweep_points).tolist()

        rows = []
        for t_seconds in seconds:
            t_planck = config.constants.seconds_to_planck(t_seconds)
            value = entropy_profile(t_planck, settings.profile)
            rows.append({
                't_seconds': t_seconds,
                't_planck': t_planck,
                'entropy': value.entropy,
                'density': value.density,
                'regime': value.regime,
            })
        return self.table(rows, options, config, columns=ENTROPY_COLUMNS)


subcommands = [LloydCommand(), EntropyCommand()]
