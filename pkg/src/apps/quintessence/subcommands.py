from apps.core.cli import Artifact, Subcommand, log_space, pick
from apps.quintessence.lib.eom import CASES, bifurcation_scan, integrate_case

TRAJECTORY_COLUMNS = ('t', 'phi', 'phi_dot')
BIFURCATION_COLUMNS = ('T', 're_p1', 'im_p1', 're_p2', 'im_p2', 'regime')


class QuintessenceCommand(Subcommand):
    name = 'quintessence'
    help = 'Field trajectory under one of the four temperature/coupling cases'

    def add_arguments(self, parser):
        parser.add_argument('--case', type=int, choices=range(1, len(CASES) + 1), required=True,
                            help='1 slow roll, 2 hot, 3 hot weak coupling, 4 quintic axion')

    def handle(self, options, config) -> Artifact:
        settings = config.quintessence
        trajectory = integrate_case(
            CASES[options['case'] - 1],
            settings.template,
            settings.phi0,
            settings.phidot0,
            settings.t_end,
            f_case_iv=settings.f_case_iv,
            thresholds=settings.thresholds,
            rtol=settings.rtol,
            atol=settings.atol,
            samples=settings.samples,
        )
        return self.table(trajectory.rows(), options, config, columns=TRAJECTORY_COLUMNS)


class BifurcationCommand(Subcommand):
    name = 'bifurcation'
    help = 'Characteristic roots over temperature and the oscillatory/overdamped crossing'

    def add_arguments(self, parser):
        parser.add_argument('--t-min', dest='T_min', type=float, default=None, metavar='K')
        parser.add_argument('--t-max', dest='T_max', type=float, default=None, metavar='K')
        parser.add_argument('--points', type=int, default=None)
        parser.add_argument('--summary', action='store_true',
                            help='Report T_crit and the decay rate as JSON instead of the table')

    def handle(self, options, config) -> Artifact:
        settings = config.quintessence
        grid = log_space(
            pick(options, settings, 'T_min'),
            pick(options, settings, 'T_max'),
            pick(options, settings, 'points'),
        )
        report = bifurcation_scan(grid, settings.template, config.fields.axion, rel_tol=settings.rel_tol)
        if options['summary']:
            return self.report(report.summary(), options, config)
        return self.table(report.rows, options, config, columns=BIFURCATION_COLUMNS)


subcommands = [QuintessenceCommand(), BifurcationCommand()]
