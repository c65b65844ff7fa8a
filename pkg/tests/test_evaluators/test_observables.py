# Copyright 2024 The QSS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import tempfile
import unittest
import warnings
from pathlib import Path

import numpy as np

from qss.evaluators.observables import (
    SERIES_COLUMNS,
    check_decay,
    energy,
    gn_quotient,
    interaction,
    kj_functionals,
    mass,
    read_series,
    record_observables,
    variance,
    virial_first_derivative,
    virial_reductions,
    virial_second_formula,
    write_series,
)
from qss.exceptions import BoundaryMassWarning, ParameterError, UndefinedQuotientError
from qss.spectral.fields import FieldPair, PhysicsParams
from qss.spectral.grid import make_grid
from qss.spectral.presets import GaussianPreset, PlaneWavePreset


class TestFunctionals(unittest.TestCase):
    def setUp(self):
        self.grid = make_grid(2, [64, 64], [20.0, 20.0])
        self.a, self.b, self.sigma = 1.5, 0.7, 1.2
        self.fields = GaussianPreset(amplitude_u=self.a, amplitude_v=self.b, width=self.sigma).sample(
            self.grid
        )
        self.params = PhysicsParams(gamma1=1.0, gamma2=1.0, beta=0.5, omega=2.0)
        self.gauss = np.pi * self.sigma**2

    def test_mass(self):
        expected = (self.a**2 + 4 * self.b**2) * self.gauss
        self.assertAlmostEqual(mass(self.fields, self.grid), expected, places=10)

    def test_interaction(self):
        expected = self.a**2 * self.b * 2 * np.pi * self.sigma**2 / 3
        self.assertAlmostEqual(interaction(self.fields, self.grid), expected, places=10)

    def test_energy_parts(self):
        E, parts = energy(self.fields, self.grid, self.params)
        gradient = 2 / (2 * self.sigma**2) * self.gauss

        self.assertAlmostEqual(parts.E_g1, 0.5 * self.a**2 * gradient, places=9)
        self.assertAlmostEqual(parts.E_g2, 0.5 * self.b**2 * gradient, places=9)
        self.assertAlmostEqual(parts.E_beta, 0.5 * 0.5 * self.b**2 * self.gauss, places=9)
        self.assertAlmostEqual(parts.E_Re, 0.5 * interaction(self.fields, self.grid))
        self.assertAlmostEqual(E, parts.E_g1 + parts.E_g2 + parts.E_beta - parts.E_Re)

    def test_kj_identities(self):
        E, _ = energy(self.fields, self.grid, self.params)
        M = mass(self.fields, self.grid)
        K, J, I, S = kj_functionals(self.fields, self.grid, self.params)

        self.assertAlmostEqual(E, 0.5 * K - 0.5 * J, places=12)
        self.assertAlmostEqual(I, K + 2.0 * M, places=12)
        self.assertAlmostEqual(S, E + 2.0 * M, places=12)

    def test_anisotropic_energy(self):
        params = PhysicsParams(gamma1=3.0, gamma2=1.0)
        _, parts = energy(self.fields, self.grid, params)
        axis = 1 / (2 * self.sigma**2) * self.gauss * self.a**2
        self.assertAlmostEqual(parts.E_g1, 0.5 * (axis + 3.0 * axis), places=9)

    def test_plane_wave(self):
        grid = make_grid(2, [16, 16], [2 * np.pi, 4 * np.pi])
        fields = PlaneWavePreset(mode=[2, 1], amplitude=0.5, component="u").sample(grid)
        params = PhysicsParams(gamma1=2.0)

        M = mass(fields, grid)
        self.assertAlmostEqual(M, 0.25 * grid.volume)

        # |k|²_γ = 2² + 2 (1/2)²
        E, parts = energy(fields, grid, params)
        self.assertAlmostEqual(E, 0.5 * 4.5 * M, places=8)
        self.assertEqual(parts.E_Re, 0.0)

    def test_gn_quotient(self):
        M = mass(self.fields, self.grid)
        K = 2 * (energy(self.fields, self.grid, PhysicsParams())[1].E_g1) + 2 * (
            energy(self.fields, self.grid, PhysicsParams())[1].E_g2
        )
        J = interaction(self.fields, self.grid)
        self.assertAlmostEqual(
            gn_quotient(self.fields, self.grid, 1), M ** (1.5 - 0.5) * K**0.5 / J, places=10
        )

        with self.assertRaises(ParameterError):
            gn_quotient(self.fields, self.grid, 2)
        with self.assertRaises(UndefinedQuotientError):
            gn_quotient(FieldPair.zeros(self.grid), self.grid, 1)
        with self.assertRaises(UndefinedQuotientError):
            gn_quotient(self.fields.scaled(-1.0), self.grid, 1)

    def test_variance(self):
        # ½∫|x|²(|u|² + 4|v|²) = ½ (a² + 4b²) (πσ²) σ² for n = 2
        expected = 0.5 * (self.a**2 + 4 * self.b**2) * self.gauss * self.sigma**2
        self.assertAlmostEqual(variance(self.fields, self.grid), expected, places=9)

    def test_check_decay(self):
        assert check_decay(self.fields, self.grid)

        wave = PlaneWavePreset(mode=[1, 0]).sample(self.grid)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            assert not check_decay(wave, self.grid)

        assert any(issubclass(w.category, BoundaryMassWarning) for w in caught)


class TestVirial(unittest.TestCase):
    def test_first_derivative_of_real_state(self):
        grid = make_grid(3, [16, 16, 16], [12.0, 12.0, 12.0])
        fields = GaussianPreset(width=1.2).sample(grid)
        dV, dV_perp = virial_first_derivative(fields, grid, PhysicsParams(gamma1=2.0))
        self.assertAlmostEqual(dV, 0.0, places=12)
        self.assertAlmostEqual(dV_perp, 0.0, places=12)

    def test_first_derivative_of_chirp(self):
        grid = make_grid(2, [64, 64], [20.0, 20.0])
        params = PhysicsParams(gamma1=2.0, gamma2=1.0)
        c = 0.3
        x = grid.coordinate(0)
        y = grid.coordinate(1)
        G = np.exp(-(x**2 + y**2) / 2.0)
        fields = FieldPair(G * np.exp(0.5j * c * (x**2 + y**2)), np.zeros(grid.shape))

        # Im(x·∇u ū) = c x² G² for the chirp
        dV, dV_perp = virial_first_derivative(fields, grid, params)
        expected = 2 * c * grid.cell_volume * float(np.sum((x**2 + 2.0 * y**2) * G**2))
        expected_perp = 2 * c * grid.cell_volume * float(np.sum(x**2 * G**2 * np.ones(grid.shape)))
        self.assertAlmostEqual(dV, expected, places=8)
        self.assertAlmostEqual(dV_perp, expected_perp, places=8)

    def test_second_formula_is_none_when_anisotropic(self):
        grid = make_grid(2, [32, 32], [16.0, 16.0])
        fields = GaussianPreset().sample(grid)
        second = virial_second_formula(fields, grid, PhysicsParams(gamma1=1.0, gamma2=2.0))
        assert second.d2V is None
        assert math.isfinite(second.d2V_perp)

    def test_reductions_in_three_transverse_dimensions(self):
        grid = make_grid(4, [16, 16, 16, 16], [12.0, 12.0, 12.0, 12.0])
        params = PhysicsParams(beta=0.7)
        fields = GaussianPreset(amplitude_u=1.0, amplitude_v=0.5, width=1.2).sample(grid)
        E0, _ = energy(fields, grid, params)

        general = virial_second_formula(fields, grid, params, E0=E0)
        reduced_d2V, reduced_d2V_perp = virial_reductions(fields, grid, params, E0)
        self.assertAlmostEqual(general.d2V, reduced_d2V, delta=1e-10 * abs(reduced_d2V))
        assert reduced_d2V_perp is None

    def test_reductions_in_four_transverse_dimensions(self):
        grid = make_grid(5, [8] * 5, [10.0] * 5)
        params = PhysicsParams(gamma1=1.5, gamma2=0.5, beta=-0.3)
        fields = GaussianPreset(amplitude_u=1.0, amplitude_v=0.5, width=1.4).sample(grid)
        E0, _ = energy(fields, grid, params)

        general = virial_second_formula(fields, grid, params)
        reduced_d2V, reduced_d2V_perp = virial_reductions(fields, grid, params, E0)
        assert reduced_d2V is None
        self.assertAlmostEqual(
            general.d2V_perp, reduced_d2V_perp, delta=1e-10 * abs(reduced_d2V_perp)
        )


class TestSeries(unittest.TestCase):
    def setUp(self):
        grid = make_grid(2, [32, 32], [16.0, 16.0])
        params = PhysicsParams(gamma1=1.0, gamma2=2.0, beta=0.25)
        fields = GaussianPreset(amplitude_u=1.0, amplitude_v=0.5, width=1.3).sample(grid)
        self.records = [
            record_observables(fields.scaled(np.exp(0.1j * i)), grid, params, 0.1 * i)
            for i in range(4)
        ]

    def test_record(self):
        record = self.records[0]
        assert math.isnan(record.d2V)
        self.assertEqual(len(record.to_row()), len(SERIES_COLUMNS))
        self.assertAlmostEqual(record.gradient_norm, record.grad_u_sq + record.grad_v_sq)
        self.assertAlmostEqual(record.E, record.E_g1 + record.E_g2 + record.E_beta - record.E_Re)

    def test_write_read(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_series(self.records, Path(tmp) / "a" / "series.csv")
            header = path.read_text().splitlines()[0]
            self.assertEqual(header, ",".join(SERIES_COLUMNS))

            records = read_series(path)
            self.assertEqual(len(records), 4)
            for original, loaded in zip(self.records, records):
                for column in SERIES_COLUMNS:
                    a, b = getattr(original, column), getattr(loaded, column)
                    if math.isnan(a):
                        assert math.isnan(b)
                    else:
                        self.assertEqual(a, b)

            # Identical inputs give identical bytes
            other = write_series(self.records, Path(tmp) / "b.csv")
            self.assertEqual(path.read_bytes(), other.read_bytes())


if __name__ == "__main__":
    unittest.main()
