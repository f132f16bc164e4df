import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase as HypothesisTestCase

from apps.burst.lib.graviton import BurstConfig
from apps.core.exceptions import DomainError, InputError
from apps.vacuum.lib.vacuum_energy import LambdaModel, lambda_4d
from apps.wormhole.lib.bridge import (
    BridgeConfig,
    MetricParams,
    bridge_amplitude,
    bridge_terms,
    cyclic_c1,
    eta,
    metric_f,
    theorem1_chain,
)

EPS = np.finfo(float).eps

# lambda_4d(1 K) = 3, so eta = -2
UNIT_MODEL = LambdaModel(c2=3.0, beta=2.0)


class MetricTests(SimpleTestCase):
    def test_de_sitter_horizon_root(self):
        r = 2.0
        self.assertAlmostEqual(metric_f(r, MetricParams(lam=3.0 / r ** 2)), 0.0, places=15)

    def test_flat_limit(self):
        self.assertEqual(metric_f(5.0, MetricParams()), 1.0)

    def test_vacuum_term_dominates_at_planck_radius(self):
        lam = 1.0e150
        self.assertAlmostEqual(metric_f(1.0, MetricParams(lam=lam)) / (-lam / 3.0), 1.0, places=12)

    def test_radius_must_be_positive(self):
        with self.assertRaises(DomainError):
            metric_f(0.0, MetricParams())
        with self.assertRaises(DomainError):
            MetricParams(r_shell=-1.0)


class MetricReconstructionTests(HypothesisTestCase):
    @given(
        st.floats(min_value=-1.0e3, max_value=1.0e3),
        st.floats(min_value=-1.0e3, max_value=1.0e3),
        st.floats(min_value=-1.0e3, max_value=1.0e3),
        st.floats(min_value=1.0e-2, max_value=1.0e2),
    )
    @settings(max_examples=300, deadline=None)
    def test_terms_reassemble_to_one(self, M, Q, lam, r):
        terms = (2.0 * M / r, Q ** 2 / r ** 2, lam / 3.0 * r ** 2)
        rebuilt = metric_f(r, MetricParams(M=M, Q=Q, lam=lam)) + terms[2] - terms[1] + terms[0]
        self.assertLessEqual(abs(rebuilt - 1.0), 16.0 * EPS * max(1.0, *map(abs, terms)))


class EtaTests(SimpleTestCase):
    def test_direct_value(self):
        self.assertEqual(eta(1.0, UNIT_MODEL).eta, -2.0)

    def test_vanishes_from_below_when_cold(self):
        value = eta(1.0e-100, LambdaModel(c2=1.0)).eta
        self.assertLess(value, 0.0)
        self.assertGreater(value, -1.0e-199)

    def test_slope_matches_finite_difference_of_vacuum_term(self):
        model = LambdaModel(c2=1.0)
        T, r, h = 10.0, 1.0, 1.0e-4
        lam = lambda_4d(T, model)

        def vacuum_term(radius):
            return -lam / 3.0 * radius ** 2

        derivative = (vacuum_term(r + h) - vacuum_term(r - h)) / (2.0 * h)
        slope = eta(T, model, r).slope
        self.assertLessEqual(abs(slope - derivative), 1.0e-10 * abs(slope))


class BridgeTests(SimpleTestCase):
    def test_zero_amplitude(self):
        self.assertEqual(bridge_amplitude(1.0e20, 0.3, 1.0, BridgeConfig(A=0.0), LambdaModel()), 0.0)

    def test_direct_value(self):
        cfg = BridgeConfig(A=1.0, omega=1.0, c1_fn=lambda w, t, r: 0.0, c2_fn=lambda w, t, r: 1.0)
        self.assertEqual(bridge_amplitude(1.0, 0.0, 1.0, cfg, UNIT_MODEL), -2.0)

    def test_default_coefficients_are_even_in_time(self):
        cfg = BridgeConfig()
        for t in np.linspace(0.0, 3.0, 31):
            self.assertEqual(
                bridge_amplitude(1.0e20, float(t), 1.0, cfg, LambdaModel()),
                bridge_amplitude(1.0e20, float(-t), 1.0, cfg, LambdaModel()),
            )

    def test_linear_in_amplitude(self):
        base = bridge_amplitude(1.0e20, 0.4, 1.5, BridgeConfig(A=1.0), LambdaModel())
        for scale in (2.0, 0.5, -4.0, 1024.0):
            scaled = bridge_amplitude(1.0e20, 0.4, 1.5, BridgeConfig(A=scale), LambdaModel())
            self.assertEqual(scaled, scale * base)

    def test_identical_coefficients_rejected(self):
        with self.assertRaises(DomainError):
            BridgeConfig(c1_fn=cyclic_c1, c2_fn=cyclic_c1)

    def test_non_finite_coefficient_rejected(self):
        cfg = BridgeConfig(c1_fn=lambda w, t, r: math.inf if t > 5 else 1.0)
        with self.assertRaises(InputError):
            bridge_amplitude(1.0e20, 10.0, 1.0, cfg, LambdaModel())

    def test_overflowing_terms_carry_logs(self):
        terms = bridge_terms(1.0e32, 0.5, 1.0, BridgeConfig(), LambdaModel())
        self.assertEqual(terms.eta_squared_term, -math.inf)
        self.assertTrue(math.isfinite(terms.log_eta_squared_term))
        self.assertGreater(terms.log_ratio, 300.0)


class EvenCoefficientTests(HypothesisTestCase):
    @given(
        st.floats(min_value=-10.0, max_value=10.0),
        st.floats(min_value=-10.0, max_value=10.0),
        st.floats(min_value=0.0, max_value=5.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_even_coefficients_give_time_symmetric_amplitude(self, a, b, t):
        cfg = BridgeConfig(
            c1_fn=lambda w, time, r: a * (1.0 + time * time) * math.exp(-r),
            c2_fn=lambda w, time, r: b * time ** 4 + 2.0,
        )
        model = LambdaModel()
        self.assertEqual(
            bridge_amplitude(1.0e25, t, 1.0, cfg, model),
            bridge_amplitude(1.0e25, -t, 1.0, cfg, model),
        )


class ChainTests(SimpleTestCase):
    def test_all_links_pass_at_quantum_threshold(self):
        report = theorem1_chain(1.0e32, BridgeConfig(), LambdaModel(), BurstConfig())
        self.assertTrue(report.passed, report.as_dict())
        self.assertEqual([link.link for link in report.links], ['i', 'ii', 'iii', 'iv'])

    def test_cold_universe_has_no_burst(self):
        report = theorem1_chain(1.0, BridgeConfig(), LambdaModel(), BurstConfig())
        self.assertFalse(report.passed)
        self.assertIn('iii', report.failed_links)
        self.assertTrue(all(power == 0.0 for power in report.links[2].detail['powers']))

    def test_burst_link_holds_above_the_quantum_threshold(self):
        burst = BurstConfig()
        for T_max in (1.0e33, 1.0e35):
            with self.subTest(T_max=T_max):
                link = theorem1_chain(T_max, BridgeConfig(), LambdaModel(), burst).links[2]
                self.assertTrue(link.passed, link.detail)
                self.assertAlmostEqual(link.detail['burst_temperature'] / link.detail['T_star'],
                                       burst.burst_temperature / burst.T_star, places=12)

    def test_zero_amplitude_breaks_domination(self):
        report = theorem1_chain(1.0e32, BridgeConfig(A=0.0), LambdaModel(), BurstConfig())
        self.assertEqual(report.failed_links, ['ii'])

    def test_report_document(self):
        document = theorem1_chain(1.0e32, BridgeConfig(), LambdaModel(), BurstConfig()).as_dict()
        self.assertEqual(document['failed_links'], [])
        self.assertEqual(set(document), {'T_max', 'passed', 'failed_links', 'links'})
        self.assertTrue(document['links'][1]['detail']['time_symmetric'])

    def test_non_positive_temperature_rejected(self):
        with self.assertRaises(DomainError):
            theorem1_chain(0.0, BridgeConfig(), LambdaModel(), BurstConfig())
