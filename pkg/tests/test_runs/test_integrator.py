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

import unittest

import numpy as np
from scipy.integrate import solve_ivp

from qss.evaluators.petviashvili import PetviashviliConfig, petviashvili_solve
from qss.exceptions import ParameterError
from qss.runs import (
    IntegratorConfig,
    RunStatus,
    SplitStepIntegrator,
    evolve,
    linear_step,
    nonlinear_step,
    strang_step,
)
from qss.spectral.fields import FieldPair, PhysicsParams, forward_transform, inverse_transform
from qss.spectral.grid import make_grid
from qss.spectral.presets import GaussianPreset


def fixed_step(dt, t_end, **kwargs):
    """A config that never adapts the step."""
    return IntegratorConfig(
        dt0=dt, dt_min=dt, dt_max=dt, t_end=t_end, cfl_const=1e6, **kwargs
    )


class TestIntegratorConfig(unittest.TestCase):
    def test_invalid(self):
        with self.assertRaises(ParameterError):
            IntegratorConfig(dt0=1e-2, dt_max=1e-3)
        with self.assertRaises(ParameterError):
            IntegratorConfig(dt_min=0.0)
        with self.assertRaises(ParameterError):
            IntegratorConfig(t_end=0.0)
        with self.assertRaises(ParameterError):
            IntegratorConfig(blowup_factor=1.0)
        with self.assertRaises(ParameterError):
            IntegratorConfig(record_every=0)

    def test_adaptive_step(self):
        config = IntegratorConfig(dt0=1e-3, dt_min=1e-6, dt_max=1e-2, cfl_const=0.1)
        self.assertEqual(config.adaptive_step(0.5), 1e-2)
        self.assertAlmostEqual(config.adaptive_step(100.0), 1e-3)


class TestSteps(unittest.TestCase):
    def setUp(self):
        self.grid = make_grid(2, [32, 32], [16.0, 16.0])
        self.params = PhysicsParams(gamma1=1.0, gamma2=0.5, beta=0.3)
        self.fields = GaussianPreset(amplitude_u=1.0, amplitude_v=0.5, width=1.5).sample(self.grid)

    def test_linear_step_is_reversible(self):
        spec = forward_transform(self.fields)
        forward = linear_step(spec, self.grid, self.params, 0.37)
        np.testing.assert_allclose(np.abs(forward.u_hat), np.abs(spec.u_hat), atol=1e-14)

        back = linear_step(forward, self.grid, self.params, -0.37)
        np.testing.assert_allclose(back.u_hat, spec.u_hat, atol=1e-13)
        np.testing.assert_allclose(back.v_hat, spec.v_hat, atol=1e-13)

    def test_linear_step_plane_wave(self):
        # v̂ at k = 0 only rotates with the detuning
        spec = forward_transform(FieldPair(np.zeros(self.grid.shape), np.ones(self.grid.shape)))
        out = inverse_transform(linear_step(spec, self.grid, self.params, 2.0))
        np.testing.assert_allclose(out.v, np.exp(-0.5j * 0.3 * 2.0), atol=1e-13)

    def test_nonlinear_step_against_reference(self):
        rng = np.random.default_rng(5)
        u0 = 0.5 * (rng.normal(size=6) + 1j * rng.normal(size=6))
        v0 = 0.5 * (rng.normal(size=6) + 1j * rng.normal(size=6))

        def rhs(_, y):
            u, v = y[:6], y[6:]
            return np.concatenate([1j * np.conj(u) * v, 0.25j * u * u])

        reference = solve_ivp(
            rhs, (0.0, 1.0), np.concatenate([u0, v0]), method="DOP853", rtol=1e-12, atol=1e-14
        ).y[:, -1]

        state = FieldPair(u0, v0)
        for _ in range(200):
            state = nonlinear_step(state, 0.005)

        np.testing.assert_allclose(state.u, reference[:6], atol=1e-7)
        np.testing.assert_allclose(state.v, reference[6:], atol=1e-7)

    def test_nonlinear_step_keeps_pointwise_mass(self):
        state = nonlinear_step(self.fields, 0.01)
        before = np.abs(self.fields.u) ** 2 + 4 * np.abs(self.fields.v) ** 2
        after = np.abs(state.u) ** 2 + 4 * np.abs(state.v) ** 2
        np.testing.assert_allclose(after, before, atol=1e-9)

        assert nonlinear_step(self.fields, 0.0) is self.fields

    def test_integrator_matches_strang_step(self):
        integrator = SplitStepIntegrator(self.grid, self.params)
        a = integrator.step(self.fields, 0.01)
        b = strang_step(self.fields, self.grid, self.params, 0.01)
        np.testing.assert_allclose(a.u, b.u, atol=1e-13)
        np.testing.assert_allclose(a.v, b.v, atol=1e-13)
        assert integrator.last_gradient_norm > 0

        dealiased = strang_step(self.fields, self.grid, self.params, 0.01, dealias=True)
        hat = forward_transform(dealiased).u_hat
        assert np.max(np.abs(hat[~self.grid.dealias_mask])) < 1e-12


class TestEvolve(unittest.TestCase):
    def test_zero_data(self):
        grid = make_grid(2, [16, 16], [10.0, 10.0])
        result = evolve(FieldPair.zeros(grid), grid, PhysicsParams(), fixed_step(0.1, 1.0))
        self.assertEqual(result.status, RunStatus.COMPLETED)
        self.assertAlmostEqual(result.t_final, 1.0)
        self.assertEqual(result.steps, 10)
        assert all(record.M == 0.0 for record in result.series)

    def test_lands_on_t_end(self):
        grid = make_grid(2, [16, 16], [10.0, 10.0])
        fields = GaussianPreset(width=1.0).sample(grid)
        result = evolve(fields, grid, PhysicsParams(), fixed_step(0.03, 0.1, record_every=2))
        self.assertAlmostEqual(result.t_final, 0.1, places=12)
        self.assertEqual(result.steps, 4)
        # t = 0, every second step and the final time
        self.assertEqual([round(r.t, 12) for r in result.series], [0.0, 0.06, 0.1])
        self.assertEqual(result.to_json()["status"], "completed")

    def test_dt_underflow(self):
        grid = make_grid(2, [16, 16], [10.0, 10.0])
        fields = GaussianPreset(amplitude_u=2.0, width=1.0).sample(grid)
        config = IntegratorConfig(dt0=1e-2, dt_min=1e-2, dt_max=1e-2, t_end=1.0, cfl_const=1e-3)
        result = evolve(fields, grid, PhysicsParams(), config)

        self.assertEqual(result.status, RunStatus.DT_UNDERFLOW)
        self.assertEqual(result.status.exit_code, 3)
        self.assertEqual(result.steps, 1)
        self.assertAlmostEqual(result.blowup_time_estimate, 1e-2)

    def test_conservation(self):
        grid = make_grid(2, [32, 32], [16.0, 16.0])
        params = PhysicsParams(beta=0.2)
        fields = GaussianPreset(amplitude_u=1.0, amplitude_v=1.0, width=1.5).sample(grid)

        drifts = []
        for dt in (1e-2, 5e-3):
            result = evolve(fields, grid, params, fixed_step(dt, 1.0, record_every=1))
            self.assertEqual(result.status, RunStatus.COMPLETED)

            M = np.array([r.M for r in result.series])
            E = np.array([r.E for r in result.series])
            assert np.max(np.abs(M - M[0])) <= 1e-8 * M[0]
            drifts.append(np.max(np.abs(E - E[0])))

        # Second order in time
        ratio = drifts[0] / drifts[1]
        assert 3.5 <= ratio <= 4.5, ratio

    def test_self_convergence(self):
        grid = make_grid(2, [32, 32], [16.0, 16.0])
        params = PhysicsParams(gamma2=0.7, beta=0.2)
        fields = GaussianPreset(amplitude_u=1.0, amplitude_v=0.8, width=1.5).sample(grid)

        finals = []
        for dt in (2e-2, 1e-2, 5e-3):
            result = evolve(fields, grid, params, fixed_step(dt, 0.4))
            self.assertEqual(result.status, RunStatus.COMPLETED)
            self.assertAlmostEqual(result.t_final, 0.4, places=12)
            finals.append(result.final_state)

        # Halving the step reduces the error fourfold
        for name in ("u", "v"):
            coarse, medium, fine = (getattr(state, name) for state in finals)
            ratio = np.linalg.norm(coarse - medium) / np.linalg.norm(medium - fine)
            assert 3.5 <= ratio <= 4.5, (name, ratio)

    def test_standing_wave(self):
        grid = make_grid(2, [64, 64], [24.0, 24.0])
        params = PhysicsParams(omega=1.0)
        P = petviashvili_solve(grid, params, PetviashviliConfig(max_iter=1000)).fields

        result = evolve(P, grid, params, fixed_step(1e-3, 1.0, record_every=100))
        t = result.t_final
        u_expected = np.exp(1j * t) * P.u
        v_expected = np.exp(2j * t) * P.v
        scale = float(np.max(np.abs(P.u)))
        assert np.max(np.abs(result.final_state.u - u_expected)) <= 1e-4 * scale
        assert np.max(np.abs(result.final_state.v - v_expected)) <= 1e-4 * scale

    def test_virial_identities(self):
        grid = make_grid(2, [64, 64], [20.0, 20.0])
        params = PhysicsParams(beta=0.5)
        fields = GaussianPreset(amplitude_u=1.0, amplitude_v=0.5, width=1.0).sample(grid)
        dt = 1e-3
        result = evolve(fields, grid, params, fixed_step(dt, 0.2, record_every=1))

        V = np.array([r.V for r in result.series])
        V_perp = np.array([r.V_perp for r in result.series])
        dV = np.array([r.dV for r in result.series])
        d2V = np.array([r.d2V for r in result.series])
        d2V_perp = np.array([r.d2V_perp for r in result.series])

        fd_first = (V[2:] - V[:-2]) / (2 * dt)
        fd_second = (V[2:] - 2 * V[1:-1] + V[:-2]) / dt**2
        fd_second_perp = (V_perp[2:] - 2 * V_perp[1:-1] + V_perp[:-2]) / dt**2

        def mismatch(a, b):
            return np.max(np.abs(a - b)) / np.max(np.abs(b))

        assert mismatch(fd_first, dV[1:-1]) <= 1e-2
        assert mismatch(fd_second, d2V[1:-1]) <= 1e-2
        assert mismatch(fd_second_perp, d2V_perp[1:-1]) <= 1e-2

    def test_blowup_detection(self):
        grid = make_grid(4, [16, 16, 16, 16], [12.0, 12.0, 12.0, 12.0])
        params = PhysicsParams(omega=1.0)
        groundstate = petviashvili_solve(
            grid, params, PetviashviliConfig(max_iter=1000, tol=1e-9)
        ).fields

        config = IntegratorConfig(
            dt0=1e-3, dt_min=1e-7, dt_max=1e-2, t_end=5.0, cfl_const=0.1, blowup_factor=4.0
        )
        result = evolve(groundstate.scaled(1.5), grid, params, config)

        self.assertEqual(result.status, RunStatus.BLOWUP_DETECTED)
        self.assertEqual(result.status.exit_code, 2)
        assert result.blowup_time_estimate is not None
        assert 0 < result.blowup_time_estimate < 5.0
        assert result.series[-1].t == result.t_final


if __name__ == "__main__":
    unittest.main()
