from dataclasses import replace

from apps.core.cli import Artifact, Subcommand, check_failure
from apps.vacuum.lib.vacuum_energy import lambda_4d
from apps.wormhole.lib.bridge import bridge_terms, eta, metric_f, theorem1_chain


class WormholeCommand(Subcommand):
    name = 'wormhole'
    help = 'Metric coefficient, eta(T) and the bridge amplitude at one point'

    def add_arguments(self, parser):
        parser.add_argument('--temp', type=float, required=True, metavar='K', help='Temperature (K)')
        parser.add_argument('--time', type=float, default=0.0, metavar='S', help='Pseudo-time (s)')
        parser.add_argument('--radius', type=float, default=None, metavar='M',
                            help='Radius (m); the configured shell radius when omitted')

    def handle(self, options, config) -> Artifact:
        settings = config.wormhole
        constants = config.constants
        model = config.vacuum.model
        T = options['temp']
        t = constants.seconds_to_planck(options['time'])
        r = settings.metric.r_shell if options['radius'] is None else constants.meters_to_planck(options['radius'])

        metric = replace(settings.metric, lam=lambda_4d(T, model))
        terms = bridge_terms(T, t, r, settings.bridge, model)
        document = {
            'T': T,
            't_planck': t,
            'r_planck': r,
            'lambda_4d': metric.lam,
            'metric_f': metric_f(r, metric),
            'eta': terms.eta,
            'eta_slope': eta(T, model, r).slope,
            'c1': terms.c1,
            'c2': terms.c2,
            'eta_squared_term': terms.eta_squared_term,
            'eta_term': terms.eta_term,
            'log_abs_eta_squared_term': terms.log_eta_squared_term,
            'log_abs_eta_term': terms.log_eta_term,
            'amplitude': terms.amplitude,
        }
        return self.report(document, options, config)


class TheoremOneCommand(Subcommand):
    name = 'theorem1'
    help = 'Run the four-link metric / bridge / burst / amplitude chain'

    def add_arguments(self, parser):
        parser.add_argument('--tmax', type=float, default=None, metavar='K',
                            help='Chain temperature (K); the configured T_max when omitted')

    def handle(self, options, config) -> Artifact:
        settings = config.wormhole
        T_max = settings.T_max if options['tmax'] is None else options['tmax']
        report = theorem1_chain(T_max, settings.bridge, config.vacuum.model, config.burst,
                                metric=settings.metric, constants=config.constants)
        failure = None
        if not report.passed:
            failure = check_failure(self.name, f"Chain failed at T_max={T_max!r} K",
                                    failed_links=report.failed_links)
        return self.report(report.as_dict(), options, config, failure=failure)


subcommands = [WormholeCommand(), TheoremOneCommand()]
