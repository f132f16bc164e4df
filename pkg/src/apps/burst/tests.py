import io
import math

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase
from scipy import integrate

from apps.burst.lib.graviton import (
    BurstConfig,
    burst_energy,
    burst_table,
    burst_window,
    fontana_power,
    mean_occupation,
)
from apps.core.exceptions import DomainError
from apps.core.lib.tables import parse_csv
from apps.core.lib.units import Constants

SI = Constants()
NATURAL = Constants.natural()


def bose_oracle(T_nat, lo, hi, panels=10 ** 6):
    """Composite Simpson over a fixed grid, independent of the adaptive routine."""
    grid = np.linspace(lo, hi, panels + 1)
    values = grid ** 2 / math.pi ** 2 / np.expm1(2.0 * math.pi * grid / T_nat)
    return integrate.simpson(values, x=grid) / (hi - lo)


class FontanaPowerTests(SimpleTestCase):
    def test_massless_graviton(self):
        self.assertEqual(fontana_power(0.0, 1.0, 1.0, SI), 0.0)

    def test_natural_units_value(self):
        self.assertAlmostEqual(fontana_power(1.0, 1.0, 1.0, NATURAL), 2.0 / 45.0, places=15)

    def test_frequency_doubling(self):
        base = fontana_power(1.0e-60, SI.l_p, 1.0e40, SI)
        self.assertEqual(fontana_power(1.0e-60, SI.l_p, 2.0e40, SI), 64.0 * base)

    def test_mass_homogeneity(self):
        base = fontana_power(1.0e-60, SI.l_p, 1.0e40, SI)
        for s in (0.5, 3.0, 1.0e4):
            self.assertAlmostEqual(fontana_power(s * 1.0e-60, SI.l_p, 1.0e40, SI) / (s ** 2 * base), 1.0, places=13)

    def test_negative_input_rejected(self):
        with self.assertRaises(DomainError) as ctx:
            fontana_power(1.0, -1.0, 1.0, SI)
        self.assertEqual(ctx.exception.parameter, 'L')


class MeanOccupationTests(SimpleTestCase):
    def test_matches_brute_force_simpson(self):
        rng = np.random.default_rng(20251)
        for _ in range(20):
            T = 10.0 ** rng.uniform(30.0, 33.0)
            T_nat = SI.kelvin_to_planck(T)
            lo = T_nat * 10.0 ** rng.uniform(-3.0, -1.0)
            hi = lo + T_nat * rng.uniform(0.5, 10.0)
            cfg = BurstConfig(omega_lo=lo, omega_hi=hi)
            value = mean_occupation(T, cfg, SI)
            oracle = bose_oracle(T_nat, lo, hi)
            self.assertLessEqual(abs(value - oracle), 1.0e-8 * oracle, msg=(T, lo, hi))

    def test_rayleigh_jeans_limit(self):
        T = 1.0e31
        T_nat = SI.kelvin_to_planck(T)
        lo = 1.0e-7 * T_nat
        hi = lo + 1.0e-9 * T_nat
        value = mean_occupation(T, BurstConfig(omega_lo=lo, omega_hi=hi), SI)
        series = T_nat * 0.5 * (lo + hi) / (2.0 * math.pi ** 3)
        self.assertLessEqual(abs(value - series), 1.0e-6 * series)

    def test_frozen_modes(self):
        cfg = BurstConfig(omega_lo=1.0, omega_hi=2.0)
        self.assertLess(mean_occupation(1.0e28, cfg, SI), 1.0e-300)

    def test_strictly_increasing_in_temperature(self):
        cfg = BurstConfig(omega_lo=0.01, omega_hi=1.0)
        values = [mean_occupation(T, cfg, SI) for T in np.logspace(30, 33, 16)]
        self.assertTrue(all(b > a for a, b in zip(values, values[1:])))

    def test_additive_over_partition(self):
        T = 5.0e31
        edges = [0.01, 0.2, 0.35, 3.0]
        whole = mean_occupation(T, BurstConfig(omega_lo=edges[0], omega_hi=edges[-1]), SI) * (edges[-1] - edges[0])
        parts = sum(
            mean_occupation(T, BurstConfig(omega_lo=lo, omega_hi=hi), SI) * (hi - lo)
            for lo, hi in zip(edges, edges[1:])
        )
        self.assertLessEqual(abs(parts - whole), 2.0 * BurstConfig.quadrature_tol * whole)

    def test_upper_band_normalization(self):
        T = 5.0e31
        difference = mean_occupation(T, BurstConfig(omega_lo=0.5, omega_hi=2.0), SI)
        upper = mean_occupation(T, BurstConfig(omega_lo=0.5, omega_hi=2.0, omega_net_mode='upper'), SI)
        self.assertAlmostEqual(upper / difference, 1.5 / 2.0, places=12)

    def test_non_positive_temperature_rejected(self):
        with self.assertRaises(DomainError):
            mean_occupation(0.0, BurstConfig(), SI)


class BurstEnergyTests(SimpleTestCase):
    def test_linear_in_lambda(self):
        cfg = BurstConfig()
        single = burst_energy(1.0, 1.0, 1.0, cfg, NATURAL)
        double = burst_energy(1.0, 2.0, 1.0, cfg, NATURAL)
        self.assertEqual(double['E_vac'], 2.0 * single['E_vac'])

    def test_graviton_side(self):
        energy = burst_energy(1.0, 1.0, 2.0 / SI.hbar, BurstConfig(n_plus=0.5), SI)
        self.assertAlmostEqual(energy['E_grav'], 1.0, places=14)
        self.assertEqual(energy['ratio'], energy['E_vac'] / energy['E_grav'])

    def test_non_positive_input_rejected(self):
        with self.assertRaises(DomainError):
            burst_energy(1.0, 0.0, 1.0, BurstConfig(), SI)


class BurstConfigTests(SimpleTestCase):
    def test_n_plus_bounds(self):
        for n_plus in (0.0, 1.0, 1.5):
            with self.assertRaises(DomainError) as ctx:
                BurstConfig(n_plus=n_plus)
            self.assertEqual(ctx.exception.parameter, 'n_plus')

    def test_band_order(self):
        with self.assertRaises(DomainError):
            BurstConfig(omega_lo=2.0, omega_hi=1.0)
        with self.assertRaises(DomainError):
            BurstConfig(omega_lo=1.0)

    def test_window_peaks_at_burst_temperature(self):
        cfg = BurstConfig()
        self.assertEqual(burst_window(cfg.burst_temperature, cfg), 1.0)
        self.assertLess(burst_window(cfg.T_star, cfg), 1.0e-40)


class BurstTableTests(SimpleTestCase):
    def test_interior_spike_with_gated_power(self):
        rows = burst_table(BurstConfig(), SI)
        self.assertEqual([row.k for row in rows], [1, 2, 3, 4, 5])
        occupations = [row.occupation for row in rows]
        peak = int(np.argmax(occupations))
        self.assertEqual(peak, 2)
        self.assertGreater(occupations[2] / occupations[1], 1.0e6)
        self.assertEqual([rows[i].power_watts for i in (0, 1, 4)], [0.0, 0.0, 0.0])
        self.assertGreater(rows[2].power_watts, rows[3].power_watts)
        self.assertGreater(rows[3].power_watts, 0.0)

    def test_rows_non_negative(self):
        for row in burst_table(BurstConfig(), SI):
            self.assertGreaterEqual(row.occupation, 0.0)
            self.assertGreaterEqual(row.power_watts, 0.0)

    def test_cold_reference_temperature(self):
        rows = burst_table(BurstConfig(T_star=1.0), SI)
        self.assertTrue(all(row.occupation < 1.0e-60 for row in rows))
        self.assertTrue(all(row.power_watts == 0.0 for row in rows))

    def test_bare_occupation_grows_with_k(self):
        rows = burst_table(BurstConfig(normalization=False), SI, power_threshold=0.0)
        occupations = [row.occupation for row in rows]
        self.assertTrue(all(b > a for a, b in zip(occupations, occupations[1:])))
        self.assertTrue(all(row.power_watts > 0.0 for row in rows))

    def test_explicit_threshold(self):
        rows = burst_table(BurstConfig(), SI, power_threshold=math.inf)
        self.assertTrue(all(row.power_watts == 0.0 for row in rows))


class CommandTests(SimpleTestCase):
    def test_tstar_override(self):
        stdout = io.StringIO()
        call_command('cosmo', 'burst-table', '--tstar', '1', stdout=stdout, stderr=io.StringIO())
        rows = parse_csv(stdout.getvalue())
        self.assertEqual(list(rows[0]), ['k', 'T_kelvin', 'occupation', 'power_watts'])
        self.assertEqual([row['T_kelvin'] for row in rows], [1.0, 2.0, 3.0, 4.0, 5.0])
        self.assertTrue(all(row['power_watts'] == 0.0 for row in rows))
