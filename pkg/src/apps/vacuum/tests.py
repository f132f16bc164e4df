import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase as HypothesisTestCase

from apps.core.exceptions import DomainError, SingularityError
from apps.core.lib.units import Constants
from apps.vacuum.lib.vacuum_energy import (
    BARVINSKY_CAP,
    LambdaModel,
    casimir_density,
    hh_amplitude,
    inflation_efolds,
    initial_lambda,
    lambda_4d,
    lambda_5d,
    lambda_max_park,
    lambda_table,
    quantum_dominance,
    vacuum_density_holographic,
)


class LambdaLawTests(SimpleTestCase):
    def test_four_dim_power_law(self):
        self.assertEqual(lambda_4d(3.0, LambdaModel(c2=1.0, beta=2.0)), 9.0)

    def test_four_dim_calibration_at_quantum_threshold(self):
        self.assertAlmostEqual(lambda_4d(1.0e32, LambdaModel()) / (8.0 * math.pi * 1.0e156), 1.0, places=12)

    def test_park_maximum_uses_park_temperature(self):
        model = LambdaModel()
        self.assertEqual(lambda_max_park(model), lambda_4d(1.0e23, model))

    def test_four_dim_vanishes_at_zero_temperature(self):
        self.assertLess(lambda_4d(1.0e-100, LambdaModel(c2=1.0)), 1.0e-199)

    def test_post_burst_clamps_to_cap(self):
        self.assertEqual(lambda_4d(1.0e32, LambdaModel(), post_burst=True), BARVINSKY_CAP)

    def test_post_burst_never_exceeds_cap(self):
        model = LambdaModel()
        for T in np.logspace(0, 40, 401):
            self.assertLessEqual(lambda_4d(float(T), model, post_burst=True), BARVINSKY_CAP)

    def test_five_dim_examples(self):
        self.assertEqual(lambda_5d(2.0, LambdaModel(c1=1.0, alpha=1.0)), -0.5)
        self.assertEqual(lambda_5d(2.0, LambdaModel(c1=4.0, alpha=2.0)), -1.0)

    def test_five_dim_vanishes_from_below(self):
        value = lambda_5d(1.0e300, LambdaModel(c1=1.0))
        self.assertLess(value, 0.0)
        self.assertGreater(value, -1.0e-299)

    def test_non_positive_temperature_rejected(self):
        with self.assertRaises(DomainError):
            lambda_4d(0.0, LambdaModel())
        with self.assertRaises(DomainError):
            lambda_5d(-1.0, LambdaModel())

    def test_model_rejects_non_positive_exponent(self):
        with self.assertRaises(DomainError) as ctx:
            LambdaModel(alpha=0.0)
        self.assertEqual(ctx.exception.parameter, 'alpha')


class LambdaMonotonicityTests(HypothesisTestCase):
    @given(st.floats(min_value=1.0, max_value=1.0e30), st.floats(min_value=1.01, max_value=1.0e3))
    @settings(max_examples=200, deadline=None)
    def test_four_dim_grows_and_five_dim_shrinks(self, T, factor):
        model = LambdaModel()
        self.assertLess(lambda_4d(T, model), lambda_4d(T * factor, model))
        self.assertGreater(abs(lambda_5d(T, model)), abs(lambda_5d(T * factor, model)))


class HartleHawkingTests(SimpleTestCase):
    def test_barvinsky_cap_amplitude(self):
        amplitude = hh_amplitude(360.0, 1.0)
        self.assertAlmostEqual(amplitude.value, math.exp(math.pi / 240.0), places=14)
        self.assertGreater(amplitude.value, 1.0)
        self.assertLess(amplitude.value, 1.1)

    def test_five_dim_branch_decays_to_zero(self):
        model = LambdaModel()
        amplitudes = [hh_amplitude(lambda_5d(float(T), model)) for T in np.logspace(20, 35, 16)]
        logs = [amplitude.log_value for amplitude in amplitudes]
        self.assertTrue(all(later < earlier for earlier, later in zip(logs, logs[1:])))
        self.assertTrue(all(later.value <= earlier.value for earlier, later in zip(amplitudes, amplitudes[1:])))
        self.assertLess(amplitudes[-1].value, 1.0e-10)

    def test_limits(self):
        self.assertEqual(hh_amplitude(-1.0e-10).value, 0.0)
        self.assertAlmostEqual(hh_amplitude(1.0e30).value, 1.0, places=12)

    def test_large_exponent_kept_in_log_form(self):
        amplitude = hh_amplitude(1.0e-6)
        self.assertTrue(amplitude.saturated)
        self.assertEqual(amplitude.value, math.inf)
        self.assertAlmostEqual(amplitude.log_value, 1.5 * math.pi * 1.0e6)

    def test_singular_at_zero(self):
        with self.assertRaises(SingularityError):
            hh_amplitude(0.0)

    def test_decreasing_on_both_branches(self):
        negative = [hh_amplitude(lam).log_value for lam in (-10.0, -1.0, -0.1)]
        positive = [hh_amplitude(lam).value for lam in (1.0, 10.0, 100.0)]
        self.assertEqual(negative, sorted(negative, reverse=True))
        self.assertEqual(positive, sorted(positive, reverse=True))
        self.assertGreater(positive[-1], 1.0)


class HolographicTests(SimpleTestCase):
    def test_quadratic_scaling(self):
        constants = Constants()
        single = vacuum_density_holographic(1.0e40, constants)
        double = vacuum_density_holographic(2.0e40, constants)
        for key in ('rho_vac', 'delta_rho'):
            self.assertAlmostEqual(double[key] / single[key], 4.0, places=12)

    def test_planck_hubble_rate(self):
        constants = Constants.natural()
        self.assertEqual(vacuum_density_holographic(1.0 / constants.l_p, constants)['rho_vac'], 1.0)

    def test_ratio_independent_of_hubble_rate(self):
        constants = Constants()
        expected = constants.l_p ** 2 / constants.G
        for H in (1.0e-18, 1.0, 1.0e39, 1.0e43):
            densities = vacuum_density_holographic(H, constants)
            self.assertAlmostEqual(densities['delta_rho'] / densities['rho_vac'] / expected, 1.0, places=12)

    def test_initial_lambda_order_of_magnitude(self):
        constants = Constants()
        scaled = initial_lambda(1.0e43, constants) / (8.0 * math.pi * constants.G)
        self.assertGreater(scaled, 1.0e155)
        self.assertLess(scaled, 1.0e157)


class InflationTests(SimpleTestCase):
    def test_hundred_efolds(self):
        efolds = inflation_efolds(1.0e39, 0.0, 1.0e-37)
        self.assertAlmostEqual(efolds.n, 100.0, places=10)
        self.assertAlmostEqual(efolds.log_ratio, efolds.n)
        self.assertAlmostEqual(math.log(efolds.ratio), efolds.n, places=10)
        self.assertFalse(efolds.log_form)

    def test_tiny_interval_gives_unit_ratio(self):
        self.assertAlmostEqual(inflation_efolds(1.0, 0.0, 1.0e-300).ratio, 1.0)

    def test_overflowing_ratio_kept_in_log_form(self):
        efolds = inflation_efolds(1.0e40, 0.0, 1.0e-37)
        self.assertTrue(efolds.log_form)
        self.assertEqual(efolds.ratio, math.inf)

    def test_reversed_interval_rejected(self):
        with self.assertRaises(DomainError):
            inflation_efolds(1.0, 1.0, 0.5)


class CasimirTests(SimpleTestCase):
    def test_direct_value_and_scaling(self):
        self.assertEqual(casimir_density(2.0, 16.0), -1.0)
        self.assertEqual(casimir_density(4.0, 16.0) / casimir_density(2.0, 16.0), 1.0 / 16.0)

    def test_vanishes_from_below(self):
        value = casimir_density(1.0e50, 1.0)
        self.assertLess(value, 0.0)
        self.assertGreater(value, -1.0e-199)


class QuantumDominanceTests(SimpleTestCase):
    def test_equal_magnitudes(self):
        for n in (1, 10, 1000):
            result = quantum_dominance(5.0, -5.0, n, tol=1.0e-12)
            self.assertTrue(result.dominant)
            self.assertEqual(result.residual, 0.0)

    def test_within_order_one_over_n(self):
        n = 8
        self.assertTrue(quantum_dominance(5.0 * (1.0 + 1.0 / (2 * n)), -5.0, n, tol=1.0).dominant)

    def test_critical_energy(self):
        self.assertEqual(quantum_dominance(1.0, 1.0, 1, 1.0).e_critical_ev, 1.22e28)

    def test_zero_lambda5_is_singular(self):
        with self.assertRaises(SingularityError):
            quantum_dominance(1.0, 0.0, 1, 1.0)


class LambdaTableTests(SimpleTestCase):
    def test_rows_follow_the_active_branch(self):
        model = LambdaModel()
        before, = lambda_table([1.0e32], model)
        after, = lambda_table([1.0e32], model, post_burst=True)
        self.assertEqual(list(before), ['T', 'lambda4', 'lambda5', 'hh_amplitude'])
        self.assertLess(before['hh_amplitude'], 1.0e-10)
        self.assertEqual(after['lambda4'], BARVINSKY_CAP)
        self.assertGreater(after['hh_amplitude'], 1.0)
