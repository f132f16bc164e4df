import io
import json
import math
import os
import tempfile

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase as HypothesisTestCase

from apps.core.config import config_from_dict
from apps.core.exceptions import DomainError, IntegrationError, SingularityError
from apps.core.lib.tables import parse_csv
from apps.core.lib.units import Constants
from apps.scale.lib.causets import from_pairs, series_to_causet, verify_causal_set
from apps.scale.lib.dynamics import (
    DensityParams,
    ScaleSeries,
    causal_bound,
    causal_scan,
    critical_lambda,
    flag_transitions,
    friedmann_rate,
    step_scale_factor,
)
from apps.scale.lib.polynomial import polynomial_coefficients, real_roots, relative_residual, scale_polynomial

NATURAL = Constants.natural()


class FriedmannRateTests(SimpleTestCase):
    def test_de_sitter_limit(self):
        self.assertEqual(friedmann_rate(0.3, DensityParams(rho_rel0=0.0, rho_m0=0.0, lam=6.0)), 2.0)

    def test_reference_point(self):
        p = DensityParams(rho_rel0=2.0, rho_m0=5.0, lam=3.0)
        self.assertAlmostEqual(friedmann_rate(1.0, p), 8.0 * math.pi / 3.0 * 7.0 + 1.0, places=12)

    def test_radiation_scaling(self):
        p = DensityParams(rho_rel0=1.0, rho_m0=0.0, lam=0.0)
        self.assertAlmostEqual(friedmann_rate(0.5, p) / friedmann_rate(1.0, p), 16.0, places=12)

    def test_non_positive_scale_factor_rejected(self):
        with self.assertRaises(DomainError):
            friedmann_rate(0.0, DensityParams())

    def test_negative_density_rejected(self):
        with self.assertRaises(DomainError):
            DensityParams(rho_m0=-1.0)


class StepperTests(SimpleTestCase):
    def test_de_sitter_growth_matches_exponential(self):
        dt = 1.0e-3
        p = DensityParams(rho_rel0=0.0, rho_m0=0.0, lam=3.0)
        series = step_scale_factor(0.0, 1.0, dt, 1000, p)
        error = np.abs(series.a_values / np.exp(series.times) - 1.0)
        self.assertLess(float(error.max()), 3.0 * dt)

    def test_radiation_era_matches_square_root_law(self):
        dt = 1.0e-3
        # 8 pi G rho / 3 = 1, so a da/dt = 1
        p = DensityParams(rho_rel0=3.0 / (8.0 * math.pi), rho_m0=0.0, lam=0.0)
        series = step_scale_factor(0.0, 1.0, dt, 1000, p)
        exact = np.sqrt(1.0 + 2.0 * series.times)
        self.assertLess(float(np.max(np.abs(series.a_values / exact - 1.0))), 3.0 * dt)

    def test_single_tiny_step_leaves_scale_factor_unchanged(self):
        series = step_scale_factor(0.0, 2.0, 1.0e-14, 1, DensityParams())
        self.assertEqual(len(series), 2)
        self.assertAlmostEqual(series.a_values[1], 2.0, places=12)

    def test_zero_steps_rejected(self):
        with self.assertRaises(DomainError):
            step_scale_factor(0.0, 1.0, 0.1, 0, DensityParams())

    def test_negative_rate_raises_with_step(self):
        with self.assertRaises(IntegrationError) as ctx:
            step_scale_factor(0.0, 1.0, 0.1, 5, DensityParams(rho_rel0=0.0, rho_m0=0.0, lam=-3.0))
        self.assertEqual(ctx.exception.context['step'], 0)

    def test_stepping_is_strictly_increasing(self):
        series = step_scale_factor(0.0, 1.0, 0.01, 500, DensityParams(lam=1.0))
        self.assertTrue(np.all(np.diff(series.a_values) > 0))


class CausalBoundTests(SimpleTestCase):
    def test_algebraic_reduction(self):
        p = DensityParams(rho_rel0=0.0, rho_m0=0.0, lam=12.0)
        result = causal_bound(1.0, 0.0, p, NATURAL)
        self.assertAlmostEqual(result.bound / math.sqrt(3.0 / 12.0), 1.0, places=14)

    def test_huge_lambda_flags_discontinuity(self):
        result = causal_bound(1.0, 10.0, DensityParams(lam=1.0e300), NATURAL)
        self.assertLess(result.bound, 1.0e-100)
        self.assertTrue(result.discontinuity)

    def test_small_lambda_is_continuous(self):
        result = causal_bound(1.0, 10.0, DensityParams(lam=1.0e-6), NATURAL)
        self.assertGreater(result.bound, 1.0)
        self.assertFalse(result.discontinuity)

    def test_critical_lambda_splits_the_sweep(self):
        p = DensityParams()
        lam_star = critical_lambda(1.0, 10.0, p, NATURAL)
        self.assertIsNotNone(lam_star)
        self.assertTrue(math.isfinite(lam_star))
        self.assertFalse(causal_bound(1.0, 10.0, DensityParams(lam=lam_star * (1.0 - 1.0e-6)), NATURAL).discontinuity)
        self.assertTrue(causal_bound(1.0, 10.0, DensityParams(lam=lam_star * (1.0 + 1.0e-6)), NATURAL).discontinuity)

        rows = causal_scan(np.logspace(50, 70, 10000), 1.0, 10.0, p, NATURAL)
        self.assertEqual(flag_transitions(rows), (1, 0))
        first_flagged = next(row['lambda'] for row in rows if row['flag'])
        self.assertGreaterEqual(first_flagged, lam_star * (1.0 - 1.0e-6))

    def test_already_flagged_gives_no_threshold(self):
        self.assertIsNone(critical_lambda(1.0, 0.0, DensityParams(), NATURAL, epsilon=1.0e30))


class PolynomialTests(SimpleTestCase):
    def independent_residual(self, coefficients, u):
        terms = [c * u ** (coefficients.size - 1 - k) for k, c in enumerate(coefficients)]
        return abs(math.fsum(terms)) / math.fsum(abs(term) for term in terms)

    def test_roots_pass_independent_evaluation(self):
        for t in (0.5, 1.0, 10.0, 1.0e3):
            roots = scale_polynomial(DensityParams(), t)
            self.assertGreaterEqual(roots.real_roots.size, 1)
            for u in roots.real_roots:
                self.assertLess(self.independent_residual(roots.coefficients, float(u)), 1.0e-10)

    def test_residual_is_normalized_by_the_coefficient_norm(self):
        coefficients = np.array([1.0, -3.0, 2.0])
        norm = math.sqrt(14.0)
        self.assertAlmostEqual(relative_residual(coefficients, 3.0), 2.0 / norm, places=15)
        self.assertEqual(relative_residual(coefficients, 2.0), 0.0)
        self.assertAlmostEqual(relative_residual(10.0 * coefficients, 3.0), 2.0 / norm, places=15)
        for t in (0.5, 1.0, 10.0, 1.0e3):
            roots = scale_polynomial(DensityParams(), t)
            norm = math.sqrt(math.fsum(c * c for c in roots.coefficients))
            for u in roots.real_roots:
                value = abs(math.fsum(c * float(u) ** (roots.coefficients.size - 1 - k)
                                      for k, c in enumerate(roots.coefficients)))
                self.assertLess(value / norm, 1.0e-10)

    def test_roots_invariant_under_coefficient_scaling(self):
        coefficients = polynomial_coefficients(DensityParams(rho_rel0=2.0, rho_m0=0.5), 1.0)
        base = real_roots(coefficients)
        for scale in (3.7, 1.0e-8, 1.0e8):
            scaled = real_roots(scale * coefficients)
            self.assertEqual(scaled.size, base.size)
            np.testing.assert_allclose(scaled, base, rtol=1.0e-9, atol=1.0e-12)

    def test_degree_and_conjugate_pairs(self):
        roots = scale_polynomial(DensityParams(), 1.0)
        self.assertEqual(roots.coefficients.size, 10)
        self.assertEqual(roots.all_roots.size, 9)
        self.assertEqual(int(np.sum(np.abs(roots.all_roots.imag) > 0)) % 2, 0)

    def test_no_positive_root_for_default_densities(self):
        self.assertEqual(scale_polynomial(DensityParams(), 1.0).positive_roots.size, 0)

    def test_zero_time_adds_root_at_origin(self):
        roots = scale_polynomial(DensityParams(), 0.0)
        self.assertIn(0.0, roots.real_roots)
        deflated = real_roots(roots.coefficients[:-1])
        np.testing.assert_allclose(np.sort(roots.real_roots[roots.real_roots != 0.0]), deflated, rtol=1.0e-9)
        self.assertEqual(relative_residual(roots.coefficients, 0.0), 0.0)

    def test_no_radiation_is_singular(self):
        with self.assertRaises(SingularityError):
            polynomial_coefficients(DensityParams(rho_rel0=0.0), 1.0)


class CausalSetTests(SimpleTestCase):
    def series(self, values):
        return ScaleSeries(times=np.arange(len(values), dtype=float), a_values=np.array(values, dtype=float))

    def test_growing_series_is_a_total_order(self):
        causet = series_to_causet(self.series([1.0, 2.0, 3.0]))
        self.assertEqual(causet.relation, frozenset({(0, 1), (0, 2), (1, 2)}))
        report = verify_causal_set(causet)
        self.assertTrue(report.passed)
        self.assertEqual(report.interval_count, 3)
        self.assertEqual(report.max_interval, 1)

    def test_contraction_leaves_an_ordering_gap(self):
        causet = series_to_causet(self.series([1.0, 2.0, 1.5]))
        self.assertNotIn((1, 2), causet.relation)
        report = verify_causal_set(causet)
        self.assertFalse(report.passed)
        self.assertEqual(report.axioms['ordering'].witness, (1, 2))

    def test_singleton(self):
        causet = series_to_causet(self.series([4.0]))
        self.assertEqual(causet.relation, frozenset())
        self.assertTrue(verify_causal_set(causet).passed)

    def test_transitive_chain(self):
        report = verify_causal_set(from_pairs('xyz', [('x', 'y'), ('y', 'z'), ('x', 'z')]))
        self.assertTrue(report.passed)

    def test_antisymmetry_witness(self):
        report = verify_causal_set(from_pairs('xy', [('x', 'y'), ('y', 'x')]))
        self.assertFalse(report.axioms['antisymmetry'].passed)
        self.assertEqual(set(report.axioms['antisymmetry'].witness), {'x', 'y'})

    def test_transitivity_witness(self):
        report = verify_causal_set(from_pairs('xyz', [('x', 'y'), ('y', 'z')]))
        self.assertEqual(report.axioms['transitivity'].witness, ('x', 'y', 'z'))
        self.assertTrue(report.axioms['interval_finiteness'].passed)


class MonotoneSeriesTests(HypothesisTestCase):
    @given(st.lists(st.floats(min_value=1.0e-3, max_value=1.0e3), min_size=1, max_size=40, unique=True))
    @settings(max_examples=100, deadline=None)
    def test_increasing_series_always_verify(self, values):
        values = sorted(values)
        series = ScaleSeries(times=np.arange(len(values), dtype=float), a_values=np.array(values))
        self.assertTrue(verify_causal_set(series_to_causet(series)).passed)


class CausalScanCommandTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def run_scan(self, *args, config=None):
        argv = ['causal-scan', '--points', '20', '--format', 'csv', *args]
        if config is not None:
            path = os.path.join(self.directory.name, 'run.json')
            with open(path, 'w', encoding='utf-8') as handle:
                json.dump(config, handle)
            argv += ['--config', path]
        stdout = io.StringIO()
        call_command('cosmo', *argv, stdout=stdout, stderr=io.StringIO())
        return parse_csv(stdout.getvalue())

    def test_rows_carry_the_threshold(self):
        settings = config_from_dict({}).scale
        expected = critical_lambda(settings.dt, settings.alpha, settings.density, NATURAL, settings.epsilon_causal)
        rows = self.run_scan()
        self.assertEqual(len(rows), 20)
        self.assertEqual(list(rows[0]), ['lambda', 'bound', 'flag', 'lambda_star'])
        for row in rows:
            self.assertEqual(row['lambda_star'], expected)
        self.assertTrue(all(row['flag'] for row in rows if row['lambda'] > expected * (1.0 + 1.0e-6)))
        self.assertFalse(any(row['flag'] for row in rows if row['lambda'] < expected * (1.0 - 1.0e-6)))

    def test_missing_threshold_is_an_empty_cell(self):
        rows = self.run_scan('--alpha', '0', config={'scale': {'epsilon_causal': 1.0e30}})
        self.assertTrue(all(row['flag'] for row in rows))
        self.assertEqual({row['lambda_star'] for row in rows}, {''})
