import logging

from apps.core.cli import Artifact, Subcommand, log_space, pick
from apps.core.lib.units import Constants
from apps.scale.lib.dynamics import causal_scan, critical_lambda
from apps.scale.lib.polynomial import relative_residual, scale_polynomial

logger = logging.getLogger(__name__)


class CausalScanCommand(Subcommand):
    name = 'causal-scan'
    help = 'Causal-discontinuity bound and flag over a log-spaced lambda sweep (Planck units)'

    def add_arguments(self, parser):
        parser.add_argument('--lambda-min', dest='lambda_min', type=float, default=None)
        parser.add_argument('--lambda-max', dest='lambda_max', type=float, default=None)
        parser.add_argument('--points', type=int, default=None)
        parser.add_argument('--dt', type=float, default=None, help='Time step (t_p)')
        parser.add_argument('--alpha', type=float, default=None, help='Decade exponent')

    def handle(self, options, config) -> Artifact:
        settings = config.scale
        dt, alpha = pick(options, settings, 'dt'), pick(options, settings, 'alpha')
        lambdas = log_space(
            pick(options, settings, 'lambda_min'),
            pick(options, settings, 'lambda_max'),
            pick(options, settings, 'points'),
        )
        constants = Constants.natural()

        lam_star = critical_lambda(dt, alpha, settings.density, constants, settings.epsilon_causal)
        rows = [
            {**row, 'lambda_star': lam_star}
            for row in causal_scan(lambdas, dt, alpha, settings.density, constants, settings.epsilon_causal)
        ]
        logger.info(f"causal-scan: {len(rows)} rows, lambda* = {lam_star}")
        return self.table(rows, options, config, columns=('lambda', 'bound', 'flag', 'lambda_star'))


class RootsCommand(Subcommand):
    name = 'roots'
    help = 'Real roots of the near-big-bang scale polynomial as JSON'

    def add_arguments(self, parser):
        parser.add_argument('--t', type=float, default=None, help='Time; the configured t when omitted')

    def handle(self, options, config) -> Artifact:
        settings = config.scale
        t = settings.t if options['t'] is None else options['t']
        roots = scale_polynomial(settings.density, t)
        document = {
            't': t,
            'coefficients': roots.coefficients,
            'real_roots': roots.real_roots,
            'positive_roots': roots.positive_roots,
            'residuals': [relative_residual(roots.coefficients, float(u)) for u in roots.real_roots],
            'complex_root_count': int(roots.all_roots.size - roots.real_roots.size),
        }
        return self.report(document, options, config)


subcommands = [CausalScanCommand(), RootsCommand()]
