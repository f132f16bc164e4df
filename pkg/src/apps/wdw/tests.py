import io
import json
import math

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase
from scipy import integrate, special

from apps.core.exceptions import DomainError, InputError, ResolutionError
from apps.core.lib.tables import parse_csv
from apps.wdw.lib.minisuperspace import WdwConfig, potential, step_halving_deviation, wdw_solve
from apps.wdw.lib.wavefunction import (
    ModeSpec,
    ScaleSpec,
    assemble_wavefunction,
    hermite,
    sho_decomposition_residual,
    sho_eigenfunction,
)


def explicit_hermite(p: int, x: int) -> int:
    """p! sum_m (-1)^m (2x)^(p - 2m) / (m! (p - 2m)!), in integers."""
    return sum(
        (-1) ** m * math.factorial(p) // (math.factorial(m) * math.factorial(p - 2 * m)) * (2 * x) ** (p - 2 * m)
        for m in range(p // 2 + 1)
    )


class HermiteTests(SimpleTestCase):
    def test_base_cases(self):
        self.assertEqual(hermite(0, 5), 1)
        self.assertEqual(hermite(0, 2.5), 1.0)
        self.assertEqual(hermite(1, 1), 2)
        self.assertEqual(hermite(3, 2), 40)

    def test_exact_integers(self):
        for p in range(21):
            for x in range(-10, 11):
                value = hermite(p, x)
                self.assertIsInstance(value, int)
                self.assertEqual(value, explicit_hermite(p, x), msg=(p, x))

    def test_recurrence_identity(self):
        for p in range(1, 20):
            for x in range(-10, 11):
                self.assertEqual(hermite(p + 1, x), 2 * x * hermite(p, x) - 2 * p * hermite(p - 1, x))

    def test_float_evaluation_matches_library(self):
        x = np.linspace(-5.0, 5.0, 101)
        for p in range(21):
            reference = special.eval_hermite(p, x)
            scale = np.max(np.abs(reference))
            self.assertLess(np.max(np.abs(hermite(p, x) - reference)), 1.0e-12 * scale, msg=p)

    def test_invalid_degree(self):
        for p in (-1, 1.5, True):
            with self.assertRaises(DomainError):
                hermite(p, 1.0)

    def test_eigenfunctions_normalized(self):
        x = np.linspace(-12.0, 12.0, 4801)
        for k in range(7):
            norm = integrate.trapezoid(sho_eigenfunction(k, x) ** 2, x)
            self.assertAlmostEqual(norm, 1.0, places=10)


class WdwSolveTests(SimpleTestCase):
    def test_step_halving(self):
        for cfg in (WdwConfig(), WdwConfig(lambda_eff=3.0, a_max=1.5, slope=0.5)):
            self.assertLess(step_halving_deviation(cfg), 1.0e-8)

    def test_free_particle_limit(self):
        a_max = 0.01 * (4.0 / (9.0 * math.pi ** 2)) ** 0.25
        solution = wdw_solve(WdwConfig(a_max=a_max, value=1.0, slope=0.5, samples=11))
        line = 1.0 + 0.5 * solution.a
        self.assertLess(np.max(np.abs(solution.psi - line) / np.abs(line)), 1.0e-6)

    def test_boundary_linearity(self):
        single = wdw_solve(WdwConfig(lambda_eff=1.0, a_max=2.0, value=0.7, slope=-0.2))
        double = wdw_solve(WdwConfig(lambda_eff=1.0, a_max=2.0, value=1.4, slope=-0.4))
        self.assertTrue(np.array_equal(double.psi, 2.0 * single.psi))

    def test_superposition(self):
        first = wdw_solve(WdwConfig(lambda_eff=1.0, a_max=2.0, value=1.0, slope=0.0))
        second = wdw_solve(WdwConfig(lambda_eff=1.0, a_max=2.0, value=0.0, slope=1.0))
        mixed = wdw_solve(WdwConfig(lambda_eff=1.0, a_max=2.0, value=0.3, slope=-1.7))
        combined = 0.3 * first.psi - 1.7 * second.psi
        scale = np.max(np.abs(mixed.psi))
        self.assertLess(np.max(np.abs(mixed.psi - combined)), 1.0e-12 * scale)
        self.assertTrue(np.allclose(mixed.with_boundary(0.3, -1.7), mixed.psi, rtol=0.0, atol=1.0e-12 * scale))

    def test_samples_on_grid(self):
        cfg = WdwConfig(a_max=2.0, samples=41)
        solution = wdw_solve(cfg)
        self.assertTrue(np.array_equal(solution.a, cfg.grid))
        self.assertAlmostEqual(solution.psi[0], 1.0, places=14)

    def test_potential_turning_point(self):
        self.assertEqual(float(potential(0.0, 3.0, 1.0)), 0.0)
        self.assertAlmostEqual(float(potential(1.0, 3.0, 1.0)), 0.0, places=14)
        self.assertGreater(float(potential(0.5, 3.0, 1.0)), 0.0)
        self.assertLess(float(potential(1.5, 3.0, 1.0)), 0.0)

    def test_invalid_config(self):
        with self.assertRaises(DomainError):
            WdwConfig(a_min=1.0, a_max=1.0)
        with self.assertRaises(DomainError):
            WdwConfig(tol=0.0)


class DecompositionTests(SimpleTestCase):
    def setUp(self):
        self.a_grid = np.linspace(-5.0, 5.0, 2001)
        self.ground = np.exp(-0.5 * self.a_grid ** 2)

    def test_gaussian_ground_state(self):
        residual = sho_decomposition_residual(self.ground, ScaleSpec(p=0), [], self.a_grid, [])
        self.assertLess(residual, 1.0e-4)

    def test_excited_scale_state(self):
        a_grid = np.linspace(-6.0, 6.0, 6001)
        psi = hermite(2, a_grid) * np.exp(-0.5 * a_grid ** 2)
        residual = sho_decomposition_residual(psi, ScaleSpec(p=2), [], a_grid, [])
        self.assertLess(residual, 1.0e-4)

    def test_mismatched_eigenvalue(self):
        residual = sho_decomposition_residual(self.ground, ScaleSpec(p=0, lambda_scale=0.0), [], self.a_grid, [])
        self.assertGreater(residual, 0.5)

    def test_single_mode(self):
        d_grid = np.linspace(-4.0, 4.0, 3201)
        residual = sho_decomposition_residual(self.ground, ScaleSpec(p=0), [ModeSpec(n=2)], self.a_grid, [d_grid])
        self.assertLess(residual, 1.0e-4)
        mismatched = sho_decomposition_residual(
            self.ground, ScaleSpec(p=0), [ModeSpec(n=2, lambda_n=3.0)], self.a_grid, [d_grid],
        )
        self.assertGreater(mismatched, 0.5)

    def test_coarse_grid_rejected(self):
        a_grid = np.linspace(-5.0, 5.0, 21)
        with self.assertRaises(ResolutionError) as ctx:
            sho_decomposition_residual(np.exp(-0.5 * a_grid ** 2), ScaleSpec(p=0), [], a_grid, [])
        self.assertEqual(ctx.exception.code, 'resolution_error')

    def test_inconsistent_inputs(self):
        with self.assertRaises(InputError):
            sho_decomposition_residual(self.ground[:-1], ScaleSpec(), [], self.a_grid, [])
        with self.assertRaises(InputError):
            sho_decomposition_residual(self.ground, ScaleSpec(), [ModeSpec()], self.a_grid, [])


class WavefunctionTests(SimpleTestCase):
    def test_pure_gaussian(self):
        self.assertEqual(assemble_wavefunction(ScaleSpec(p=0), [], 1.3), math.exp(-0.5 * 1.3 ** 2))

    def test_odd_node(self):
        self.assertEqual(assemble_wavefunction(ScaleSpec(p=1), [], 0.0), 0.0)

    def test_ground_mode_factor_is_bounded(self):
        bare = assemble_wavefunction(ScaleSpec(p=2), [], 0.8)
        peak = math.pi ** -0.25
        for n, d in ((1, 0.0), (2, 0.4), (5, -1.1)):
            ratio = assemble_wavefunction(ScaleSpec(p=2), [ModeSpec(n=n, d_n=d)], 0.8) / bare
            self.assertGreater(ratio, 0.0)
            self.assertLessEqual(ratio, peak * (1.0 + 1.0e-15))

    def test_literal_argument(self):
        mode = ModeSpec(n=3, p_n=1, d_n=0.6)
        value = assemble_wavefunction(ScaleSpec(p=0), [mode], 0.0, literal_argument=True)
        self.assertAlmostEqual(value, sho_eigenfunction(2, 3 * 0.6 ** 2), places=15)

    def test_decay(self):
        for p in (0, 3, 8):
            value = assemble_wavefunction(ScaleSpec(p=p), [ModeSpec(n=2, d_n=0.3)], 10.0)
            self.assertLess(abs(value), math.exp(-40.0) * abs(hermite(p, 10.0)))

    def test_even_degree_symmetry(self):
        modes = [ModeSpec(n=2, p_n=1, d_n=0.25), ModeSpec(n=3, d_n=-0.5)]
        for p in (0, 2, 4, 6):
            for a_bar in (0.3, 1.7, 4.2):
                self.assertEqual(
                    assemble_wavefunction(ScaleSpec(p=p), modes, a_bar),
                    assemble_wavefunction(ScaleSpec(p=p), modes, -a_bar),
                )

    def test_amplitude_count_mismatch(self):
        with self.assertRaises(InputError):
            assemble_wavefunction(ScaleSpec(), [ModeSpec()], 0.0, d_values=[0.1, 0.2])


class CommandTests(SimpleTestCase):
    def run_cosmo(self, *args):
        stdout = io.StringIO()
        call_command('cosmo', *args, stdout=stdout, stderr=io.StringIO())
        return stdout.getvalue()

    def test_solution_table(self):
        rows = parse_csv(self.run_cosmo('wdw', '--lambda', '1', '--a-max', '2', '--csv'))
        self.assertEqual(len(rows), 201)
        self.assertEqual(list(rows[0]), ['a', 'psi'])
        self.assertEqual(rows[-1]['a'], 2)

    def test_product_report(self):
        document = json.loads(self.run_cosmo('wdw', '--product', '0'))
        self.assertEqual(document['psi'], 1.0)
        self.assertEqual(document['modes'], [])
