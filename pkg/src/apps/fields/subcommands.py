import logging

from dataclasses import asdict, replace

import numpy as np

from apps.core.cli import Artifact, Subcommand, check_failure, log_space
from apps.fields.lib.axion import (
    axion_amplitude,
    axion_mass,
    axion_to_quadratic,
    chaotic_potentials,
    transition_temperature,
    wall_amplitude,
)
from apps.fields.lib.branes import brane_params, kk_mass, rs_minimize, rs_scan

logger = logging.getLogger(__name__)

AXION_COLUMNS = ('T', 'axion_mass', 'amplitude', 'wall_amplitude', 'axion_to_quadratic')
RS_COLUMNS = ('R', 'V', 'dV')

# Kaluza-Klein levels reported at the radius minimum
KK_LEVELS = 5


def axion_row(T: float, p) -> dict:
    return {
        'T': T,
        'axion_mass': axion_mass(T, p),
        'amplitude': axion_amplitude(T, p),
        'wall_amplitude': wall_amplitude(T, p),
        'axion_to_quadratic': axion_to_quadratic(T, p),
    }


def potential_point(T: float, p, post_burst_form: str) -> dict:
    """Axion row plus both chaotic-potential phases at phi = phi* + 1."""
    phi = p.phi_star + 1.0
    return {
        **axion_row(T, p),
        'V_pre_burst': chaotic_potentials(phi, T, 'pre-burst', p),
        'V_post_burst': chaotic_potentials(phi, T, 'post-burst', p, post_burst_form=post_burst_form),
    }


class AxionCommand(Subcommand):
    name = 'axion'
    help = 'Axion mass, amplitude f[m_axion(T)] and wall height over temperature'

    def add_arguments(self, parser):
        parser.add_argument('--temp', type=float, nargs='+', default=None, metavar='K', help='Temperatures (K)')
        parser.add_argument('--temp-sweep', dest='temp_sweep', action='store_true',
                            help='Tabulate the configured log-spaced temperature sweep')

    def handle(self, options, config) -> Artifact:
        settings = config.fields
        p = settings.axion
        if options['temp_sweep']:
            temperatures = log_space(settings.sweep_T_min, settings.sweep_T_max, settings.sweep_points)
            rows = [axion_row(float(T), p) for T in temperatures]
            return self.table(rows, options, config, columns=AXION_COLUMNS)

        temperatures = options['temp'] or [p.T_cold]
        document = {
            'params': asdict(p),
            'transition_temperature': transition_temperature(p),
            'post_burst_form': settings.post_burst_form,
            'points': [potential_point(T, p, settings.post_burst_form) for T in temperatures],
        }
        return self.report(document, options, config)


class RSPotentialCommand(Subcommand):
    name = 'rs-potential'
    help = 'Randall-Sundrum radius potential: a scan table, or the metastable minimum and brane checks'
    csv_flag = True

    def add_arguments(self, parser):
        parser.add_argument('--scan', type=float, nargs=2, default=None, metavar=('R_MIN', 'R_MAX'),
                            help='Tabulate V and dV/dR on an even radius grid')

    def handle(self, options, config) -> Artifact:
        settings = config.fields
        if options['scan'] is not None:
            lo, hi = options['scan']
            bracket = replace(settings.rs, R_min=lo, R_max=hi)
            rows = rs_scan(np.linspace(lo, hi, settings.scan_points), bracket)
            return self.table(rows, options, config, columns=RS_COLUMNS)

        minimum = rs_minimize(settings.rs, settings.rs_tol)
        document = {
            'minimum': asdict(minimum),
            'kk_masses': [],
            'brane': brane_params(settings.brane, settings.probe_m, settings.probe_phi),
        }
        if not minimum.found:
            failure = check_failure(self.name, minimum.reason, R_end=minimum.R_critical)
            return self.report(document, options, config, failure=failure)

        logger.info(f"rs-potential: minimum at R={minimum.R_critical:.12g}")
        document['kk_masses'] = [kk_mass(n, minimum.R_critical, settings.rs.m5) for n in range(KK_LEVELS)]
        return self.report(document, options, config)


subcommands = [AxionCommand(), RSPotentialCommand()]
