from dataclasses import replace

from apps.core.cli import Artifact, Subcommand
from apps.wdw.lib.minisuperspace import wdw_solve
from apps.wdw.lib.wavefunction import assemble_wavefunction

WDW_COLUMNS = ('a', 'psi')


class WdwCommand(Subcommand):
    name = 'wdw'
    help = 'Minisuperspace Wheeler-DeWitt wavefunction over the scale factor'
    csv_flag = True

    def add_arguments(self, parser):
        parser.add_argument('--lambda', dest='lam', type=float, default=None,
                            help='Effective vacuum parameter; the configured lambda_eff when omitted')
        parser.add_argument('--a-max', dest='a_max', type=float, default=None,
                            help='Right end of the scale-factor domain')
        parser.add_argument('--product', type=float, default=None, metavar='A_BAR',
                            help='Report the oscillator product wavefunction at A_BAR instead')

    def handle(self, options, config) -> Artifact:
        settings = config.wdw
        if options['product'] is not None:
            a_bar = options['product']
            document = {
                'a_bar': a_bar,
                'p': settings.scale.p,
                'modes': [{'n': mode.n, 'p_n': mode.p_n, 'd_n': mode.d_n} for mode in settings.modes],
                'literal_argument': settings.literal_argument,
                'psi': assemble_wavefunction(settings.scale, settings.modes, a_bar,
                                             literal_argument=settings.literal_argument),
            }
            return self.report(document, options, config)

        overrides = {}
        if options['lam'] is not None:
            overrides['lambda_eff'] = options['lam']
        if options['a_max'] is not None:
            overrides['a_max'] = options['a_max']
        solution = wdw_solve(replace(settings.solver, **overrides))
        return self.table(solution.rows(), options, config, columns=WDW_COLUMNS)


subcommands = [WdwCommand()]
