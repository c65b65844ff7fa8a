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

import json
import tempfile
import unittest
from pathlib import Path

import jsonlines
import numpy as np

from qss.evaluators.observables import mass
from qss.evaluators.orbit import h1_norm_squared, orbit_distance
from qss.evaluators.petviashvili import (
    GroundStateResult,
    PetviashviliConfig,
    gradient_flow_groundstate,
    petviashvili_solve,
    pohozaev_check,
    stationary_residual,
)
from qss.exceptions import NotConvergedError, ParameterError
from qss.spectral.fields import PhysicsParams
from qss.spectral.grid import make_grid
from qss.spectral.snapshot import load_snapshot


class TestPetviashvili(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.grid = make_grid(2, [128, 128], [40.0, 40.0])
        cls.params = PhysicsParams(beta=0.0, omega=1.0)
        cls.config = PetviashviliConfig(max_iter=1000, tol=1e-10)
        cls.result = petviashvili_solve(cls.grid, cls.params, cls.config)

    def test_converged(self):
        assert self.result.converged
        assert self.result.residual <= 1e-10
        assert self.result.iterations <= 1000
        self.assertEqual(len(self.result.residual_history), self.result.iterations)
        assert stationary_residual(self.result.fields, self.grid, self.params) <= 2e-10

    def test_positive_and_real(self):
        assert np.all(self.result.fields.u.imag == 0)
        assert self.result.positivity_min > -1e-10
        # Peak at the box center
        center = tuple(p // 2 for p in self.grid.points)
        self.assertAlmostEqual(
            float(self.result.fields.u[center].real), float(np.max(self.result.fields.u.real))
        )

    def test_identities(self):
        kj, ij, energy_ratio = self.result.ratios
        self.assertAlmostEqual(kj, 0.5, delta=1e-6)
        self.assertAlmostEqual(ij, 1.5, delta=1e-8)
        self.assertAlmostEqual(energy_ratio, -0.5, delta=1e-6)

        report = pohozaev_check(self.result, 1)
        assert report.passed
        self.assertEqual(report.expected_kj, 0.5)
        assert max(report.deviations) <= 1e-6

    def test_pohozaev_check_on_bare_pair(self):
        report = pohozaev_check(self.result.fields, 1, grid=self.grid, params=self.params)
        assert report.passed

        with self.assertRaises(ParameterError):
            pohozaev_check(self.result.fields, 1)
        with self.assertRaises(ParameterError):
            pohozaev_check(self.result, 2)

    def test_save(self):
        with tempfile.TemporaryDirectory() as tmp:
            paths = self.result.save(Path(tmp) / "gs")
            self.assertEqual(
                sorted(p.name for p in paths),
                ["diagnostics.json", "groundstate.qss1", "residuals.jsonl"],
            )

            fields, grid, params, t = load_snapshot(Path(tmp) / "gs" / "groundstate.qss1")
            assert np.array_equal(fields.u, self.result.fields.u)
            self.assertEqual(t, 0.0)

            diagnostics = json.loads((Path(tmp) / "gs" / "diagnostics.json").read_text())
            self.assertEqual(diagnostics["iterations"], self.result.iterations)
            self.assertIn("K/J", diagnostics["ratios"])

            with jsonlines.open(Path(tmp) / "gs" / "residuals.jsonl") as reader:
                rows = list(reader)
            self.assertEqual(len(rows), self.result.iterations)
            self.assertEqual(rows[0]["iteration"], 1)

    def test_gradient_flow_agrees(self):
        grid = make_grid(2, [48, 48], [24.0, 24.0])
        result = petviashvili_solve(grid, self.params, self.config)
        target = mass(result.fields, grid)

        pair, omega, iterations = gradient_flow_groundstate(grid, self.params, target)
        self.assertAlmostEqual(omega, 1.0, delta=1e-5)
        assert iterations > 0

        distance = orbit_distance(pair, result.fields, grid)
        assert distance <= 1e-4 * np.sqrt(h1_norm_squared(result.fields, grid))


class TestPetviashviliCases(unittest.TestCase):
    def test_detuned(self):
        grid = make_grid(2, [128, 128], [40.0, 40.0])
        params = PhysicsParams(beta=1.0, omega=1.0)
        result = petviashvili_solve(grid, params, PetviashviliConfig(max_iter=1000))

        report = pohozaev_check(result, 1)
        assert report.passed
        assert report.expected_kj > 0.5

    def test_two_transverse_dimensions(self):
        grid = make_grid(3, [32, 32, 32], [20.0, 20.0, 20.0])
        params = PhysicsParams(omega=1.0)
        result = petviashvili_solve(grid, params, PetviashviliConfig(max_iter=1000, tol=1e-9))

        kj, ij, energy_ratio = result.ratios
        self.assertAlmostEqual(kj, 0.75, delta=1e-3)
        self.assertAlmostEqual(ij, 1.5, delta=1e-6)
        self.assertAlmostEqual(energy_ratio, 0.5 - 0.5 / 0.75, delta=1e-3)
        assert pohozaev_check(result, 2, tolerance=1e-3).passed

    def test_invalid_parameters(self):
        grid = make_grid(2, [16, 16], [10.0, 10.0])
        with self.assertRaises(ParameterError):
            petviashvili_solve(grid, PhysicsParams(omega=0.0))
        with self.assertRaises(ParameterError):
            petviashvili_solve(grid, PhysicsParams(omega=1.0, beta=-5.0))
        with self.assertRaises(ParameterError):
            PetviashviliConfig(tol=0.0)
        with self.assertRaises(ParameterError):
            PetviashviliConfig(max_iter=0)
        with self.assertRaises(ParameterError):
            PetviashviliConfig(init={"kind": "unknown"})

    def test_not_converged(self):
        grid = make_grid(2, [32, 32], [20.0, 20.0])
        with self.assertRaises(NotConvergedError) as context:
            petviashvili_solve(grid, PhysicsParams(), PetviashviliConfig(max_iter=1))

        result = context.exception.result
        assert isinstance(result, GroundStateResult)
        assert not result.converged
        self.assertEqual(result.iterations, 1)
        self.assertEqual(len(result.residual_history), 1)

    def test_initial_guess_without_interaction(self):
        grid = make_grid(2, [32, 32], [16.0, 16.0])
        config = PetviashviliConfig(init={"kind": "gaussian", "amplitude_v": 0.0})
        with self.assertRaises(NotConvergedError) as context:
            petviashvili_solve(grid, PhysicsParams(), config)

        result = context.exception.result
        assert not result.converged
        self.assertEqual(result.iterations, 1)
        self.assertEqual(len(result.residual_history), 1)
        assert np.isfinite(result.residual)
        assert np.isnan(result.stabilizer)
        # J = 0 leaves K/J and I/J undefined
        assert np.isnan(result.ratios[0])
        assert np.isnan(result.ratios[1])
        assert np.isfinite(result.ratios[2])
        assert not pohozaev_check(result, 1).passed

        with tempfile.TemporaryDirectory() as tmp:
            result.save(tmp)
            report = json.loads((Path(tmp) / "diagnostics.json").read_text())
        self.assertIsNone(report["ratios"]["K/J"])
        self.assertIsNone(report["ratios"]["I/J"])
        self.assertIsNone(report["stabilizer"])

    def test_partial_result_is_consistent(self):
        grid = make_grid(2, [32, 32], [20.0, 20.0])
        params = PhysicsParams()
        with self.assertRaises(NotConvergedError) as context:
            petviashvili_solve(grid, params, PetviashviliConfig(max_iter=5))

        # The returned pair is the iterate the last residual and stabilizer were measured on
        result = context.exception.result
        self.assertEqual(result.iterations, 5)
        np.testing.assert_allclose(
            stationary_residual(result.fields, grid, params), result.residual, rtol=1e-8
        )
        np.testing.assert_allclose(result.ratios[1] / 1.5, result.stabilizer, rtol=1e-8)


if __name__ == "__main__":
    unittest.main()
