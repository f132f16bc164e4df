import io
import json
import math

from dataclasses import replace

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase

from apps.core.exceptions import DomainError, SingularityError
from apps.core.lib.tables import parse_csv
from apps.core.lib.units import Constants
from apps.fields.lib.axion import AxionParams
from apps.quintessence.lib.eom import (
    EomParams,
    RegimeThresholds,
    bifurcation_scan,
    case_params,
    characteristic_roots,
    classify_regime,
    closed_form_trajectory,
    companion_roots,
    epsilon_ratio,
    integrate_case,
    integrate_eom,
    lyapunov_energy,
    quadratic_roots,
)
from apps.quintessence.lib.reconstruction import padmanabhan_reconstruct

NATURAL = Constants.natural()
SI = Constants()

# T = 1 K leaves 1 + kappa == 1.0, so the 'full' stiffness is m^2
COLD = EomParams(T=1.0, H=1.0, phi_c=0.3)


def critical_temperature(template: EomParams, axion: AxionParams) -> float:
    """Temperature where (m^2 + f) / kappa = 9 H^2 / 4 with f on its floor."""
    spring = template.m ** 2 + axion.epsilon_plus * axion.m ** 2
    kappa = spring / (2.25 * template.H ** 2)
    T_nat = math.sqrt(6.0 * template.M ** 2 * kappa / (template.c_tilde * template.g_b))
    return SI.planck_to_kelvin(T_nat)


class CharacteristicRootTests(SimpleTestCase):
    def test_factorable_quadratic(self):
        roots = characteristic_roots(EomParams(m=0.0, f_axion=0.0, H=2.0))
        self.assertEqual(roots.p1, 0.0)
        self.assertEqual(roots.p2, -6.0)
        self.assertEqual(roots.regime, 'overdamped')

    def test_critical_damping(self):
        roots = quadratic_roots(1.0, 2.25)
        self.assertEqual(roots.regime, 'critical')
        self.assertEqual(roots.discriminant, 0.0)
        self.assertEqual((roots.p1, roots.p2), (-1.5, -1.5))

    def test_axion_amplitude_controls_regime(self):
        hot = EomParams(T=1.0e32)
        self.assertEqual(characteristic_roots(replace(hot, f_axion=100.0)).regime, 'oscillatory')
        weak = characteristic_roots(replace(hot, f_axion=0.0))
        self.assertEqual(weak.regime, 'overdamped')
        self.assertLess(weak.p1.real, 0.0)
        self.assertLess(weak.p2.real, weak.p1.real)

    def test_vanishing_coupling_is_singular(self):
        with self.assertRaises(SingularityError) as ctx:
            characteristic_roots(EomParams(c_tilde=0.0))
        self.assertEqual(ctx.exception.code, 'singularity')
        self.assertEqual(characteristic_roots(EomParams(c_tilde=0.0), form='full').k, 0.1 ** 2)

    def test_vieta_identities_fuzzed(self):
        rng = np.random.default_rng(75)
        for _ in range(100000):
            p = EomParams(
                c_tilde=10.0 ** rng.uniform(-6.0, 1.0),
                M=10.0 ** rng.uniform(-1.0, 1.0),
                g_b=rng.uniform(1.0, 200.0),
                T=10.0 ** rng.uniform(28.0, 33.0),
                H=10.0 ** rng.uniform(-2.0, 2.0),
                m=rng.uniform(0.0, 1.0),
                f_axion=10.0 ** rng.uniform(-14.0, 2.0),
            )
            roots = characteristic_roots(p)
            self.assertLessEqual(abs((roots.p1 + roots.p2) + 3.0 * p.H), 1.0e-10 * 3.0 * p.H)
            self.assertLessEqual(abs(roots.p1 * roots.p2 - roots.k), 1.0e-10 * roots.k)

    def test_companion_matrix_oracle_fuzzed(self):
        rng = np.random.default_rng(80)
        n = 100000
        H = 10.0 ** rng.uniform(-1.0, 1.0, n)
        k = H ** 2 * 10.0 ** rng.uniform(-1.0, 2.0, n)
        # Near-repeated roots are ill-conditioned for the eigenvalue oracle
        keep = np.abs(9.0 * H ** 2 - 4.0 * k) > 1.0e-2 * 9.0 * H ** 2
        H, k = H[keep], k[keep]
        matrices = np.zeros((H.size, 2, 2))
        matrices[:, 0, 0] = -3.0 * H
        matrices[:, 0, 1] = -k
        matrices[:, 1, 0] = 1.0
        oracle = np.sort_complex(np.linalg.eigvals(matrices))
        exact = np.sort_complex(np.array([
            [roots.p1, roots.p2] for roots in (quadratic_roots(h, kk) for h, kk in zip(H, k))
        ]))
        deviation = np.max(np.abs(exact - oracle) / np.abs(exact))
        self.assertLess(deviation, 1.0e-12)

    def test_companion_roots_helper(self):
        roots = quadratic_roots(1.0, 2.0)
        eigenvalues = np.sort_complex(companion_roots(1.0, 2.0))
        self.assertTrue(np.allclose(eigenvalues, np.sort_complex([roots.p1, roots.p2]), rtol=1.0e-12, atol=0.0))

    def test_approximate_modes(self):
        p = EomParams(T=1.0e32, m=0.01)
        k = p.stiffness()
        half_damped = characteristic_roots(p, mode='half-damped')
        root = math.sqrt(1.0 - k / 3.0)
        self.assertAlmostEqual(half_damped.p1.real, -1.5 * (1.0 - root), places=14)
        self.assertAlmostEqual(half_damped.p2.real, -1.5 * (1.0 + root), places=14)
        self.assertEqual(half_damped.regime, characteristic_roots(p).regime)
        decoupled = characteristic_roots(p, mode='decoupled')
        self.assertEqual((decoupled.p1, decoupled.p2), (complex(-k), complex(-3.0 + k)))

    def test_decoupled_fast_root_converges_as_stiffness_vanishes(self):
        stiffness, deviation = [], []
        for m in np.logspace(-4.0, -1.0, 13):
            p = EomParams(T=1.0e32, m=float(m))
            exact = characteristic_roots(p)
            approximate = characteristic_roots(p, mode='decoupled')
            stiffness.append(exact.k)
            deviation.append(abs(approximate.p2 - exact.p2) / abs(exact.p2))
        slope, _ = np.polyfit(np.log(stiffness), np.log(deviation), 1)
        self.assertGreaterEqual(slope, 0.99)

    def test_mode_aliases_resolve_to_named_modes(self):
        p = EomParams(T=1.0e32, m=0.01)
        for alias, mode in (('paper-eq75', 'decoupled'), ('paper-eq80', 'half-damped')):
            with self.subTest(alias=alias):
                aliased = characteristic_roots(p, mode=alias)
                self.assertEqual(aliased, characteristic_roots(p, mode=mode))
                self.assertEqual(aliased.mode, mode)

    def test_unknown_mode(self):
        with self.assertRaises(DomainError):
            characteristic_roots(EomParams(), mode='undamped')


class RegimeTests(SimpleTestCase):
    def test_cases(self):
        self.assertEqual(classify_regime(1.0, 1.0, EomParams()), 'I')
        self.assertEqual(classify_regime(1.0e13, 1.0, EomParams(c_tilde=1.0)), 'II')
        self.assertEqual(classify_regime(1.0e13, 1.0, EomParams(c_tilde=1.0e-6)), 'III')
        self.assertEqual(classify_regime(1.0e8, 1.0, EomParams(f_axion=0.01)), 'IV')
        self.assertEqual(classify_regime(1.0e8, 1.0, EomParams(f_axion=0.0)), 'II')

    def test_late_times_slow_roll(self):
        thresholds = RegimeThresholds(t_slow_roll=100.0)
        self.assertEqual(classify_regime(1.0e13, 1.0e3, EomParams(), thresholds=thresholds), 'I')
        self.assertEqual(classify_regime(1.0e13, 1.0, EomParams(), thresholds=thresholds), 'II')

    def test_case_operating_points_classify_as_their_case(self):
        template = EomParams()
        for case in ('I', 'II', 'III', 'IV'):
            p = case_params(case, template, 0.01)
            self.assertEqual(classify_regime(p.T, 1.0, p), case)

    def test_domain(self):
        with self.assertRaises(DomainError):
            classify_regime(0.0, 1.0, EomParams())
        with self.assertRaises(DomainError):
            classify_regime(1.0, 0.0, EomParams())


class IntegrationTests(SimpleTestCase):
    def test_linear_case_matches_closed_form(self):
        # Damping ratios 0.25, 0.5, 1 (critical), 2 and 4
        for m in (6.0, 3.0, 1.5, 0.75, 0.375):
            p = replace(COLD, m=m)
            roots = characteristic_roots(p, form='full')
            if m == 1.5:
                self.assertEqual(roots.regime, 'critical')
            t_end = 5.0 / abs(roots.p1.real)
            numeric = integrate_eom(p, 1.3, 0.2, t_end)
            closed = closed_form_trajectory(p, 1.3, 0.2, numeric.times)
            scale = np.max(np.abs(closed.phi))
            self.assertLess(np.max(np.abs(numeric.phi - closed.phi)), 1.0e-6 * scale, msg=m)
            self.assertLess(np.max(np.abs(numeric.phi_dot - closed.phi_dot)), 1.0e-6 * scale, msg=m)

    def test_equilibrium_is_stationary(self):
        trajectory = integrate_eom(COLD, 0.3, 0.0, 10.0)
        self.assertTrue(np.all(trajectory.phi == 0.3))
        self.assertTrue(np.all(trajectory.phi_dot == 0.0))

    def test_lyapunov_energy_non_increasing(self):
        for m in (3.0, 0.75):
            p = replace(COLD, m=m)
            trajectory = integrate_eom(p, 1.3, 0.2, 20.0)
            energy = lyapunov_energy(trajectory, p)
            self.assertTrue(np.all(np.diff(energy) <= 1.0e-9 * energy[0]))

    def test_overdamped_trajectories_settle(self):
        for m in (0.75, 0.5, 0.375):
            p = replace(COLD, m=m)
            roots = characteristic_roots(p, form='full')
            self.assertEqual(roots.regime, 'overdamped')
            self.assertLess(roots.p2.real, roots.p1.real)
            self.assertLess(roots.p1.real, 0.0)
            trajectory = integrate_eom(p, 1.3, 0.0, 10.0 / abs(roots.p1.real))
            self.assertLess(epsilon_ratio(trajectory, p.phi_c, 1.3 - p.phi_c), 1.0e-3)

    def test_epsilon_ratio_probe(self):
        trajectory = integrate_eom(replace(COLD, m=0.75), 1.3, 0.0, 10.0)
        self.assertAlmostEqual(epsilon_ratio(trajectory, 0.3, 1.0, t_probe=0.0), 1.0, places=15)
        with self.assertRaises(DomainError):
            epsilon_ratio(trajectory, 0.3, 0.0)

    def test_every_case_integrates(self):
        template = EomParams()
        for case in ('I', 'II', 'III', 'IV'):
            trajectory = integrate_case(case, template, 1.0, 0.0, 5.0, samples=51)
            self.assertEqual(trajectory.case, case)
            self.assertEqual(trajectory.times.size, 51)
            self.assertTrue(np.all(np.isfinite(trajectory.phi)))

    def test_slow_roll_relaxes_monotonically(self):
        trajectory = integrate_case('I', replace(EomParams(), phi_c=0.3), 1.0, 0.0, 50.0)
        self.assertTrue(np.all(np.diff(trajectory.phi) < 0))
        self.assertGreater(trajectory.phi[-1], 0.3)

    def test_non_positive_end_time(self):
        with self.assertRaises(DomainError):
            integrate_eom(COLD, 1.0, 0.0, 0.0)


class BifurcationTests(SimpleTestCase):
    def setUp(self):
        self.template = EomParams()
        self.axion = AxionParams()
        self.grid = np.logspace(28.0, 32.0, 200)

    def test_unique_crossing(self):
        report = bifurcation_scan(self.grid, self.template, self.axion)
        summary = report.summary()
        self.assertTrue(summary['found'])
        self.assertTrue(summary['unique'])
        self.assertEqual(summary['transition'], 'oscillatory->overdamped')
        expected = critical_temperature(self.template, self.axion)
        self.assertLess(abs(report.T_crit - expected), 1.0e-6 * expected)
        self.assertGreater(report.T_crit, 2.0e30)
        self.assertLess(report.T_crit, 2.6e30)

    def test_roots_on_either_side(self):
        report = bifurcation_scan(self.grid, self.template, self.axion)
        for row in report.rows:
            if row['T'] < report.T_crit:
                self.assertEqual(row['regime'], 'oscillatory')
                self.assertNotEqual(row['im_p1'], 0.0)
            else:
                self.assertEqual(row['regime'], 'overdamped')
                self.assertEqual((row['im_p1'], row['im_p2']), (0.0, 0.0))
                self.assertLess(row['re_p1'], 0.0)
                self.assertLess(row['re_p2'], 0.0)
        self.assertLess(report.decay_rate, 0.0)

    def test_single_point_grid(self):
        report = bifurcation_scan([1.0e30], self.template, self.axion)
        self.assertFalse(report.found)
        self.assertEqual(report.message, 'no bifurcation in range')

    def test_grid_must_increase(self):
        with self.assertRaises(DomainError):
            bifurcation_scan([1.0e30, 1.0e29], self.template, self.axion)


class ReconstructionTests(SimpleTestCase):
    def test_de_sitter_history_has_no_field(self):
        times = np.linspace(0.0, 10.0, 1001)
        result = padmanabhan_reconstruct(times, np.full_like(times, 2.0), NATURAL)
        self.assertLess(np.max(np.abs(result.phi)), 1.0e-10)
        self.assertTrue(np.allclose(result.potential, 12.0 / (8.0 * math.pi), rtol=1.0e-14, atol=0.0))
        self.assertFalse(result.accelerating_mask.any())

    def test_matter_history(self):
        times = np.linspace(1.0, 10.0, 901)
        result = padmanabhan_reconstruct(times, 2.0 / (3.0 * times), NATURAL)
        self.assertEqual(result.phi[0], 0.0)
        self.assertTrue(np.all(np.diff(result.phi) > 0))
        self.assertTrue(np.allclose(result.hdot, -2.0 / (3.0 * times ** 2), rtol=1.0e-3, atol=0.0))

    def test_two_epoch_history(self):
        times = np.linspace(0.0, 10.0, 1001)
        H = 0.1 + 0.9 / (1.0 + np.exp((times - 5.0) / 0.25))
        result = padmanabhan_reconstruct(times, H, NATURAL)
        peak = np.max(result.phi_dot)
        self.assertLess(result.phi_dot[0], 1.0e-3 * peak)
        self.assertLess(result.phi_dot[-1], 1.0e-3 * peak)

    def test_growing_hubble_rate_is_masked(self):
        times = np.linspace(0.0, 1.0, 11)
        result = padmanabhan_reconstruct(times, 1.0 + times, NATURAL)
        self.assertTrue(result.accelerating_mask.all())
        self.assertTrue(np.all(result.phi == 0.0))

    def test_non_uniform_grid_rejected(self):
        with self.assertRaises(DomainError):
            padmanabhan_reconstruct([0.0, 1.0, 3.0], [1.0, 1.0, 1.0], NATURAL)


class CommandTests(SimpleTestCase):
    def run_cosmo(self, *args):
        stdout = io.StringIO()
        call_command('cosmo', *args, stdout=stdout, stderr=io.StringIO())
        return stdout.getvalue()

    def test_case_trajectory(self):
        rows = parse_csv(self.run_cosmo('quintessence', '--case', '2'))
        self.assertEqual(len(rows), 501)
        self.assertEqual(list(rows[0]), ['t', 'phi', 'phi_dot'])
        self.assertEqual(rows[0]['phi'], 1)

    def test_bifurcation_table_and_summary(self):
        rows = parse_csv(self.run_cosmo('bifurcation', '--points', '50'))
        self.assertEqual(len(rows), 50)
        self.assertEqual(list(rows[0]), ['T', 're_p1', 'im_p1', 're_p2', 'im_p2', 'regime'])
        summary = json.loads(self.run_cosmo('bifurcation', '--summary'))
        self.assertTrue(summary['found'])
        self.assertTrue(summary['unique'])
