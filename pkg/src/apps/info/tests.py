import io
import json
import math

from decimal import Decimal, getcontext

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase as HypothesisTestCase

from apps.core.exceptions import DomainError
from apps.core.lib.units import Constants
from apps.info.lib.bounds import (
    LN2,
    SECONDS_PER_YEAR,
    EntropyProfileParams,
    energy_density,
    entropy_density,
    entropy_for_operations,
    entropy_profile,
    fit_power_law,
    free_energy,
    graviton_critical_density,
    horizon_quantities,
    lloyd_bounds,
    one_loop_potential,
    operations_from_graviton,
    ops_from_entropy,
)

SI = Constants()


def high_precision_entropy_anchor() -> float:
    """(3 ln2 / 4)^(4/3) evaluated with 50-digit decimals."""
    getcontext().prec = 50
    base = Decimal(3) * Decimal(2).ln() / Decimal(4)
    return float((Decimal(4) / Decimal(3) * base.ln()).exp())


class LloydBoundTests(SimpleTestCase):
    def test_present_universe_matter_bound(self):
        bounds = lloyd_bounds(1.0, 1.0, 1.0e-27, 1.0e10 * SECONDS_PER_YEAR, SI)
        self.assertGreaterEqual(bounds['matter_bound'], 1.0e118)
        self.assertLessEqual(bounds['matter_bound'], 1.0e122)

    def test_one_operation_per_second(self):
        bounds = lloyd_bounds(math.pi * SI.hbar / 2.0, 1.0, 1.0, 1.0, SI)
        self.assertAlmostEqual(bounds['rate_bound'], 1.0, places=14)

    def test_one_bit_of_memory(self):
        bounds = lloyd_bounds(1.0, SI.k_B * LN2, 1.0, 1.0, SI)
        self.assertAlmostEqual(bounds['memory_bound'], 1.0, places=14)

    def test_all_bounds_positive(self):
        bounds = lloyd_bounds(1.0, 1.0, 1.0e-27, 1.0, SI)
        self.assertTrue(all(value > 0 for value in bounds.values()))

    def test_non_positive_input_rejected(self):
        with self.assertRaises(DomainError) as ctx:
            lloyd_bounds(1.0, 1.0, 0.0, 1.0, SI)
        self.assertEqual(ctx.exception.parameter, 'rho')

    def test_fitted_exponents(self):
        scales = np.logspace(-3, 3, 13)
        t = 1.0e17
        fits = {
            ('rate_bound', 'E'): fit_power_law(scales, [lloyd_bounds(s, 1.0, 1.0, t, SI)['rate_bound'] for s in scales]),
            ('memory_bound', 'S'): fit_power_law(scales, [lloyd_bounds(1.0, s, 1.0, t, SI)['memory_bound'] for s in scales]),
            ('matter_bound', 'rho'): fit_power_law(scales, [lloyd_bounds(1.0, 1.0, s, t, SI)['matter_bound'] for s in scales]),
            ('matter_bound', 't'): fit_power_law(scales, [lloyd_bounds(1.0, 1.0, 1.0, s * t, SI)['matter_bound'] for s in scales]),
            ('refined', 'E'): fit_power_law(scales, [lloyd_bounds(s, 1.0, 1.0, t, SI)['refined'] for s in scales]),
        }
        expected = {('rate_bound', 'E'): 1.0, ('memory_bound', 'S'): 1.0, ('matter_bound', 'rho'): 1.0,
                    ('matter_bound', 't'): 4.0, ('refined', 'E'): 1.0}
        for key, (slope, _) in fits.items():
            self.assertAlmostEqual(slope, expected[key], places=9, msg=key)


class RefinedBoundTests(HypothesisTestCase):
    @given(st.floats(min_value=1.0, max_value=1.0e20))
    @settings(max_examples=200, deadline=None)
    def test_refined_below_naive_bound(self, ticks):
        t = ticks * SI.t_p
        bounds = lloyd_bounds(1.0, 1.0, 1.0, t, SI)
        self.assertLessEqual(bounds['refined'], 4.0 / SI.hbar * t)


class HorizonTests(SimpleTestCase):
    def test_square_root_scaling(self):
        base = horizon_quantities(SI, rho_crit=1.0e-26)
        quadrupled = horizon_quantities(SI, rho_crit=4.0e-26)
        self.assertAlmostEqual(quadrupled['H'] / base['H'], 2.0, places=12)
        self.assertAlmostEqual(quadrupled['horizon_energy'] / base['horizon_energy'], 0.5, places=12)

    def test_energy_identity(self):
        for H in (1.0e-18, 2.3e-18, 1.0e40):
            quantities = horizon_quantities(SI, H=H)
            self.assertAlmostEqual(quantities['horizon_energy'] * SI.t_p ** 2 * H, 1.0, places=12)
            self.assertAlmostEqual(quantities['horizon_distance'] * H / SI.c, 1.0, places=12)

    def test_graviton_frequency_doubling(self):
        single = horizon_quantities(SI, rho_crit=graviton_critical_density(1.0e10, 1.0e3, SI))
        double = horizon_quantities(SI, rho_crit=graviton_critical_density(2.0e10, 1.0e3, SI))
        self.assertAlmostEqual(double['H'] / single['H'], math.sqrt(2.0), places=12)

    def test_exactly_one_input(self):
        with self.assertRaises(DomainError):
            horizon_quantities(SI)
        with self.assertRaises(DomainError):
            horizon_quantities(SI, rho_crit=1.0, H=1.0)


class EntropyOperationTests(SimpleTestCase):
    def test_one_bit_anchor_matches_high_precision_oracle(self):
        value = ops_from_entropy(SI.k_B * LN2, SI)
        oracle = high_precision_entropy_anchor()
        self.assertLessEqual(abs(value - oracle), 1.0e-12 * oracle)
        self.assertAlmostEqual(value, 0.4181, places=4)

    def test_four_thirds_power_law(self):
        S = 1.0e-20
        for scale in (2.0 ** 0.75, 3.0, 1.0e5):
            ratio = ops_from_entropy(scale * S, SI) / ops_from_entropy(S, SI)
            self.assertAlmostEqual(ratio / scale ** (4.0 / 3.0), 1.0, places=12)

    def test_entropy_for_operations_inverts(self):
        for n_ops in (1.0, 1.0e20, 1.0e120):
            self.assertAlmostEqual(ops_from_entropy(entropy_for_operations(n_ops, SI), SI) / n_ops, 1.0, places=12)

    def test_volume_and_horizon_forms_agree(self):
        result = operations_from_graviton(1.0e60, 1.0e3, SI)
        self.assertAlmostEqual(result['volume_form'] / result['horizon_form'], 1.0, places=12)

    def test_entropy_and_horizon_exponents_agree_under_density_sweeps(self):
        frequencies = np.logspace(0, 6, 13)
        densities, horizon_ops, entropy_ops = [], [], []
        for omega in frequencies:
            result = operations_from_graviton(1.0e60, float(omega), SI)
            densities.append(result['rho_crit'])
            horizon_ops.append(result['horizon_form'])
            entropy_ops.append(ops_from_entropy(result['matched_entropy'], SI))
        horizon_slope, _ = fit_power_law(densities, horizon_ops)
        entropy_slope, _ = fit_power_law(densities, entropy_ops)
        self.assertAlmostEqual(horizon_slope, -0.5, places=9)
        self.assertAlmostEqual(entropy_slope, horizon_slope, places=9)


class EntropyProfileTests(SimpleTestCase):
    def test_quadratic_regime(self):
        p = EntropyProfileParams()
        early, later = entropy_profile(0.25, p), entropy_profile(0.5, p)
        self.assertEqual((early.regime, later.regime), (1, 1))
        self.assertAlmostEqual(later.entropy / early.entropy, 4.0, places=14)

    def test_inverse_density_law(self):
        p = EntropyProfileParams(tau0=3.0, s_tau0=10.0)
        self.assertAlmostEqual(entropy_density(6.0, p), 5.0, places=14)

    def test_regimes(self):
        p = EntropyProfileParams(t_p=1.0, t_cmb=100.0)
        self.assertEqual([entropy_profile(t, p).regime for t in (0.5, 1.0, 50.0, 100.0, 1.0e4)], [1, 2, 2, 3, 3])

    def test_calibration_makes_profile_continuous(self):
        p = EntropyProfileParams(s_tau0=7.0, tau0=2.0, k_sigma=0.1, s_net=3.0, t_p=0.5, t_cmb=1.0e3).calibrated()
        left_at_tp = p.k_sigma * p.t_p ** 2
        right_at_tp = entropy_profile(p.t_p, p).entropy
        self.assertLessEqual(abs(left_at_tp - right_at_tp), 1.0e-12 * right_at_tp)
        left_at_cmb = p.s_net * p.volume_fn(p.t_cmb)
        right_at_cmb = entropy_profile(p.t_cmb, p).entropy
        self.assertLessEqual(abs(left_at_cmb - right_at_cmb), 1.0e-12 * right_at_cmb)

    def test_ordering_of_times_enforced(self):
        with self.assertRaises(DomainError):
            EntropyProfileParams(t_p=2.0, t_cmb=1.0)


class ThermalTests(SimpleTestCase):
    def test_free_energy(self):
        self.assertEqual(free_energy(0.0), 0.0)
        self.assertAlmostEqual(free_energy(2.0) / free_energy(1.0), 16.0, places=12)

    def test_energy_to_free_energy_ratio(self):
        for T in (1.0e-3, 1.0, 7.5, 1.0e10):
            self.assertAlmostEqual(energy_density(T) / abs(free_energy(T)), 3.0, places=12)

    def test_one_loop_potential(self):
        def v0(phi):
            return phi ** 4 - phi

        self.assertEqual(one_loop_potential(1.5, 0.0, 0.3, v0), v0(1.5))
        self.assertEqual(one_loop_potential(0.0, 2.0, 0.3, v0), v0(0.0) + free_energy(2.0))
        self.assertAlmostEqual(one_loop_potential(2.0, 1.0, 8.0, v0), v0(2.0) + 4.0 + free_energy(1.0), places=12)


class CommandTests(SimpleTestCase):
    def run_cosmo(self, *args):
        stdout = io.StringIO()
        call_command('cosmo', *args, stdout=stdout, stderr=io.StringIO())
        return stdout.getvalue()

    def test_lloyd_row(self):
        row, = json.loads(self.run_cosmo('lloyd', '--rho', '1e-27', '--age', '1e10', '--format', 'json'))
        self.assertEqual(row['age_years'], 1.0e10)
        self.assertGreaterEqual(row['matter_bound'], 1.0e118)
        self.assertLessEqual(row['matter_bound'], 1.0e122)

    def test_entropy_sweep_defaults(self):
        lines = self.run_cosmo('entropy').splitlines()
        self.assertEqual(lines[0], 't_seconds,t_planck,entropy,density,regime')
        self.assertEqual(len(lines), 65)
