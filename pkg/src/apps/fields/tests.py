import io
import json
import math
import os
import tempfile

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase

from apps.core.exceptions import DomainError, SingularityError
from apps.core.lib.tables import parse_csv
from apps.fields.lib.axion import (
    AxionParams,
    axion_amplitude,
    axion_contribution,
    axion_mass,
    axion_to_quadratic,
    axion_wall,
    chaotic_potentials,
    transition_temperature,
    v_axion_contri,
    wall_amplitude,
)
from apps.fields.lib.branes import (
    BraneParams,
    RSParams,
    brane_params,
    coth_term,
    finite_difference_gradient,
    kk_mass,
    rs_curvature,
    rs_effective_potential,
    rs_gradient,
    rs_minimize,
    rs_terms,
    tanh_term,
)


def relative(a, b):
    return abs(a - b) / abs(b)


class AxionMassTests(SimpleTestCase):
    def test_unit_ratio(self):
        p = AxionParams()
        self.assertLess(relative(axion_mass(p.lambda_qcd, p), 0.1 * p.m_a0), 1.0e-15)

    def test_decade_above_qcd_scale(self):
        p = AxionParams()
        self.assertLess(relative(axion_mass(10.0 * p.lambda_qcd, p), 0.1 * p.m_a0 * 10.0 ** -3.7), 1.0e-12)

    def test_vanishes_when_hot(self):
        mass = axion_mass(1.0e60, AxionParams())
        self.assertGreater(mass, 0.0)
        self.assertLess(mass, 1.0e-150)

    def test_non_positive_temperature_rejected(self):
        with self.assertRaises(DomainError):
            axion_mass(0.0, AxionParams())


class AxionWallTests(SimpleTestCase):
    def setUp(self):
        self.p = AxionParams(f_pq_over_n=2.5)

    def test_minimum_and_peak(self):
        T = 1.0e12
        self.assertEqual(axion_wall(0.0, T, self.p), 0.0)
        peak = axion_wall(math.pi * 2.5, T, self.p)
        self.assertLess(relative(peak, 2.0 * axion_mass(T, self.p) ** 2 * 2.5 ** 2), 1.0e-12)
        self.assertLess(relative(peak, wall_amplitude(T, self.p)), 1.0e-12)

    def test_periodicity(self):
        T = 1.0e12
        for a in (0.4, 1.3, -2.2, 6.0):
            shifted = axion_wall(a + 2.0 * math.pi * 2.5, T, self.p)
            self.assertLess(relative(shifted, axion_wall(a, T, self.p)), 1.0e-12)

    def test_wall_collapse_across_temperatures(self):
        amplitudes = [wall_amplitude(T, self.p) for T in np.logspace(0, 32, 65)]
        self.assertTrue(all(b < a for a, b in zip(amplitudes, amplitudes[1:])))


class ChaoticPotentialTests(SimpleTestCase):
    def setUp(self):
        self.p = AxionParams(phi_c=0.3)

    def test_post_burst_vacuum(self):
        self.assertEqual(chaotic_potentials(0.3, 1.0e32, 'post-burst', self.p), 0.0)
        self.assertAlmostEqual(chaotic_potentials(1.3, 1.0e32, 'post-burst', self.p), 0.5, places=15)

    def test_massive_post_burst_form(self):
        value = chaotic_potentials(1.3, 1.0e32, 'post-burst', self.p, post_burst_form='massive')
        self.assertAlmostEqual(value, 0.5 * self.p.m ** 2, places=15)

    def test_unknown_phase_or_form(self):
        with self.assertRaises(DomainError):
            chaotic_potentials(0.0, 1.0, 'during', self.p)
        with self.assertRaises(DomainError):
            chaotic_potentials(0.0, 1.0, 'post-burst', self.p, post_burst_form='heavy')

    def test_cold_amplitude_window(self):
        f = axion_amplitude(self.p.T_cold, self.p)
        self.assertGreaterEqual(f, 50.0 * self.p.m ** 2)
        self.assertLessEqual(f, 100.0 * self.p.m ** 2)
        self.assertEqual(axion_amplitude(0.5, self.p), f)

    def test_axion_term_dominates_near_pi_when_cold(self):
        T = self.p.T_cold
        quadratic = 0.5 * self.p.m ** 2 * (math.pi - self.p.phi_star) ** 2
        axion_term = chaotic_potentials(math.pi, T, 'pre-burst', self.p) - quadratic
        self.assertGreater(axion_term, 10.0 * quadratic)

    def test_hot_phase_is_quadratic(self):
        T = 1.0e32
        scale = 0.5 * self.p.m ** 2
        sup = max(
            abs(chaotic_potentials(phi, T, 'pre-burst', self.p) - scale * (phi - self.p.phi_star) ** 2)
            for phi in np.linspace(-math.pi, math.pi, 201)
        )
        self.assertLess(sup, 1.0e-10 * scale)

    def test_axion_ratio_above_transition(self):
        T_transition = transition_temperature(self.p)
        self.assertGreater(T_transition, 100.0)
        self.assertLess(T_transition, 200.0)
        for T in (T_transition, 1.0e4, 1.0e32):
            self.assertLess(axion_to_quadratic(T, self.p), 1.0e-10)
        self.assertGreater(axion_to_quadratic(self.p.T_cold, self.p), 1.0)


class AxionContributionTests(SimpleTestCase):
    def test_forms_agree_at_origin(self):
        p = AxionParams(phi_c=0.3)
        value = v_axion_contri(0.0, p.T_cold, p)
        self.assertAlmostEqual(value.dV, -p.m ** 2 * 0.3, places=15)
        self.assertAlmostEqual(value.dV_quintic, -p.m ** 2 * 0.3, places=15)

    def test_axion_free_limit(self):
        for phi in (-2.0, 0.7, 5.0):
            value = axion_contribution(phi, 0.0, 0.1, 0.3)
            self.assertAlmostEqual(value.dV, 0.01 * (phi - 0.3), places=15)
            self.assertAlmostEqual(value.dV_quintic, value.dV, places=15)

    def test_quintic_expansion_remainder(self):
        f = 100.0 * 0.01
        for phi in (-0.1, -0.05, -0.01, 0.01, 0.05, 0.1):
            value = axion_contribution(phi, f, 0.1, 0.0)
            self.assertLess(abs(value.dV - value.dV_quintic), 0.2 * f * abs(phi) ** 3)

    def test_exact_derivative(self):
        p = AxionParams(phi_c=0.3)
        h = 1.0e-5
        for phi in (-1.0, 0.2, 2.5):
            numeric = (v_axion_contri(phi + h, 3.0, p).V - v_axion_contri(phi - h, 3.0, p).V) / (2.0 * h)
            self.assertAlmostEqual(numeric, v_axion_contri(phi, 3.0, p).dV, places=8)


class RSPotentialTests(SimpleTestCase):
    def test_large_radius_limit(self):
        p = RSParams(K=1.5, K_tilde=1.5, m5=2.0, m5_tilde=2.0)
        self.assertLess(relative(rs_effective_potential(100.0 / p.m5, p), -p.K ** 2 / p.m5), 1.0e-12)

    def test_small_radius_series(self):
        p = RSParams()
        R = 1.0e-8
        first, _ = rs_terms(R, p)
        self.assertLess(relative(first, -p.K ** 2 / (p.m5 ** 2 * math.pi * R)), 1.0e-12)

    def test_coupling_scaling(self):
        base, _ = rs_terms(0.7, RSParams(K=1.5))
        doubled, _ = rs_terms(0.7, RSParams(K=3.0))
        self.assertEqual(doubled, 4.0 * base)

    def test_potential_is_sum_of_terms(self):
        p = RSParams()
        for R in (0.2, 0.9, 3.0):
            first, second = rs_terms(R, p)
            self.assertEqual(rs_effective_potential(R, p), second + first)

    def test_singular_radius(self):
        with self.assertRaises(SingularityError):
            rs_effective_potential(1.0e-310, RSParams())
        with self.assertRaises(DomainError):
            rs_effective_potential(0.0, RSParams())

    def test_swap_with_term_exchange_is_exact(self):
        rng = np.random.default_rng(11)
        for K, K_tilde, m5, m5_tilde, R in zip(rng.uniform(0.1, 5.0, 200), rng.uniform(0.1, 5.0, 200),
                                               rng.uniform(0.1, 5.0, 200), rng.uniform(0.1, 5.0, 200),
                                               rng.uniform(0.01, 10.0, 200)):
            p = RSParams(K=K, K_tilde=K_tilde, m5=m5, m5_tilde=m5_tilde)
            swapped = RSParams(K=K_tilde, K_tilde=K, m5=m5_tilde, m5_tilde=m5)
            exchanged = coth_term(R, swapped.K_tilde, swapped.m5_tilde) + tanh_term(R, swapped.K, swapped.m5)
            self.assertEqual(exchanged, rs_effective_potential(R, p))
            self.assertEqual(rs_terms(R, swapped), (coth_term(R, K_tilde, m5_tilde), tanh_term(R, K, m5)))

    def test_analytic_gradient_matches_stencil(self):
        p = RSParams()
        for R in (0.35, 0.6, 1.4):
            self.assertLess(abs(finite_difference_gradient(R, p) - rs_gradient(R, p)), 1.0e-9)


class RSMinimumTests(SimpleTestCase):
    def test_default_minimum(self):
        p = RSParams()
        minimum = rs_minimize(p)
        self.assertAlmostEqual(minimum.R_critical, 0.45, delta=0.02)
        self.assertLess(abs(finite_difference_gradient(minimum.R_critical, p)), 1.0e-10)
        self.assertGreater(minimum.curvature, 0.0)
        self.assertEqual(minimum.curvature, rs_curvature(minimum.R_critical, p))

    def test_quadratic_model_near_minimum(self):
        p = RSParams()
        minimum = rs_minimize(p)
        R_star = minimum.R_critical
        for offset in (-0.01, -0.005, -0.001, 0.001, 0.005, 0.01):
            R = R_star * (1.0 + offset)
            V = rs_effective_potential(R, p)
            model = minimum.quadratic_model(R)
            self.assertLess(abs(V - model), 0.01 * abs(V))
            self.assertLess(abs(V - model), 0.05 * (V - minimum.V_min))

    def test_default_minimum_is_found(self):
        minimum = rs_minimize(RSParams())
        self.assertTrue(minimum.found)
        self.assertEqual(minimum.reason, '')

    def test_single_term_reports_search_failure(self):
        p = RSParams(K_tilde=0.0)
        minimum = rs_minimize(p)
        self.assertFalse(minimum.found)
        self.assertIn('No interior minimum', minimum.reason)
        self.assertLess(minimum.R_critical - p.R_min, 1.0e-6 * (p.R_max - p.R_min))
        self.assertEqual(minimum.V_min, rs_effective_potential(minimum.R_critical, p))
        self.assertGreater(minimum.gradient, 0.0)


class WallCollapseSweepTests(SimpleTestCase):
    """From 1 K to 1e32 K the walls collapse while the radius minimum survives."""

    def test_sweep(self):
        axion = AxionParams()
        radius = RSParams()
        scale = 0.5 * axion.m ** 2
        previous = math.inf
        for T in np.logspace(0.0, 32.0, 33):
            T = float(T)
            amplitude = wall_amplitude(T, axion)
            self.assertLess(amplitude, previous)
            previous = amplitude

            minimum = rs_minimize(radius)
            self.assertTrue(minimum.found, T)
            self.assertGreater(minimum.curvature, 0.0)

        sup = max(
            abs(chaotic_potentials(phi, T, 'pre-burst', axion) - scale * (phi - axion.phi_star) ** 2)
            for phi in np.linspace(-math.pi, math.pi, 201)
        )
        self.assertLess(sup, 1.0e-10 * scale)


class KaluzaKleinTests(SimpleTestCase):
    def test_tower(self):
        self.assertEqual(kk_mass(0, 2.0, 4.0), 4.0)
        self.assertEqual(kk_mass(3, 1.0, 4.0), 5.0)

    def test_asymptotic(self):
        n, R, m5 = 1000, 1.0, 4.0
        self.assertLess(relative(kk_mass(n, R, m5), n / R), 0.5 * (m5 * R / n) ** 2 * (1.0 + 1.0e-6))

    def test_domain(self):
        with self.assertRaises(DomainError):
            kk_mass(1, 0.0, 1.0)
        with self.assertRaises(DomainError):
            kk_mass(-1, 1.0, 1.0)


class BraneTests(SimpleTestCase):
    def test_hubble_scale(self):
        self.assertEqual(brane_params(BraneParams(k5_sq=6.0, v0=1.0, lambda5=-10.0))['H_hat'], 1.0)

    def test_effective_bulk_parameter(self):
        valid = brane_params(BraneParams(k5_sq=4.0, v0=1.0, lambda5=-10.0))
        self.assertEqual(valid['lambda5_eff'], -6.0)
        self.assertTrue(valid['validity'])
        invalid = brane_params(BraneParams(k5_sq=4.0, v0=1.0, lambda5=-3.0))
        self.assertEqual(invalid['lambda5_eff'], 1.0)
        self.assertFalse(invalid['validity'])

    def test_probe_check(self):
        result = brane_params(BraneParams(), probe_m=1.0, probe_phi=0.2)
        self.assertTrue(result['negative_bulk'])
        self.assertFalse(result['small_probe'])
        self.assertFalse(result['validity'])

    def test_positive_bulk_rejected(self):
        with self.assertRaises(DomainError):
            BraneParams(lambda5=1.0)


class FinitenessFuzzTests(SimpleTestCase):
    def test_potentials_finite_on_valid_inputs(self):
        rng = np.random.default_rng(7)
        n = 25000
        p = AxionParams(phi_c=0.3)
        temperatures = 10.0 ** rng.uniform(0.0, 32.0, n)
        fields = rng.uniform(-10.0, 10.0, n)
        radii = rng.uniform(1.0e-3, 50.0, n)
        couplings = rng.uniform(0.0, 10.0, (n, 2))
        masses = rng.uniform(0.1, 10.0, (n, 2))
        for i in range(n):
            T, phi = float(temperatures[i]), float(fields[i])
            rs = RSParams(K=couplings[i, 0], K_tilde=couplings[i, 1], m5=masses[i, 0], m5_tilde=masses[i, 1])
            values = (
                axion_wall(phi, T, p),
                chaotic_potentials(phi, T, 'pre-burst', p),
                v_axion_contri(phi, T, p).V,
                rs_effective_potential(float(radii[i]), rs),
            )
            self.assertTrue(all(math.isfinite(v) for v in values), msg=(T, phi, radii[i]))


class CommandTests(SimpleTestCase):
    def run_cosmo(self, *args):
        stdout = io.StringIO()
        call_command('cosmo', *args, stdout=stdout, stderr=io.StringIO())
        return stdout.getvalue()

    def test_radius_scan(self):
        rows = parse_csv(self.run_cosmo('rs-potential', '--scan', '0.3', '1.0', '--csv'))
        self.assertEqual(len(rows), 200)
        self.assertEqual(list(rows[0]), ['R', 'V', 'dV'])
        self.assertEqual((rows[0]['R'], rows[-1]['R']), (0.3, 1.0))

    def test_minimum_report(self):
        document = json.loads(self.run_cosmo('rs-potential'))
        self.assertGreater(document['minimum']['curvature'], 0.0)
        self.assertEqual(document['kk_masses'][0], 1.0)
        self.assertTrue(document['brane']['validity'])

    def test_temperature_sweep(self):
        rows = parse_csv(self.run_cosmo('axion', '--temp-sweep'))
        self.assertEqual(len(rows), 27)
        amplitudes = [row['amplitude'] for row in rows]
        self.assertTrue(all(b <= a for a, b in zip(amplitudes, amplitudes[1:])))

    def write_config(self, directory, document):
        path = os.path.join(directory, 'run.json')
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(document, handle)
        return path

    def test_axion_report_follows_post_burst_form(self):
        bare = json.loads(self.run_cosmo('axion', '--temp', '1e32'))
        self.assertEqual(bare['post_burst_form'], 'bare')
        self.assertEqual(bare['points'][0]['V_post_burst'], 2.0)
        with tempfile.TemporaryDirectory() as directory:
            path = self.write_config(directory, {'fields': {'post_burst_form': 'massive'}})
            massive = json.loads(self.run_cosmo('axion', '--temp', '1e32', '--config', path))
        self.assertEqual(massive['post_burst_form'], 'massive')
        self.assertAlmostEqual(massive['points'][0]['V_post_burst'], 2.0 * AxionParams().m ** 2, places=15)
        self.assertEqual(massive['points'][0]['V_pre_burst'], bare['points'][0]['V_pre_burst'])

    def test_search_failure_is_reported(self):
        stdout, stderr = io.StringIO(), io.StringIO()
        with tempfile.TemporaryDirectory() as directory:
            path = self.write_config(directory, {'fields': {'rs': {'K_tilde': 0.0}}})
            with self.assertRaises(SystemExit) as ctx:
                call_command('cosmo', 'rs-potential', '--config', path,
                             '--echo-config', os.path.join(directory, 'echo.json'),
                             stdout=stdout, stderr=stderr)
        self.assertEqual(ctx.exception.code, 1)
        document = json.loads(stdout.getvalue())
        self.assertFalse(document['minimum']['found'])
        self.assertEqual(document['kk_masses'], [])
        error = json.loads(stderr.getvalue())
        self.assertEqual(error['error'], 'check_failed')
        self.assertEqual(error['context']['R_end'], document['minimum']['R_critical'])
