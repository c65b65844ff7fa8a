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

#  noqa: D400
"""
# Integrator

This module provides the Strang split-step integration of the evolution system.

The linear part is propagated exactly in Fourier space,

    û ↦ e^{−i|k|²_{γ1} dt} û,     v̂ ↦ e^{−i(|k|²_{γ2} + β) dt / 2} v̂,

and the nonlinear part is the pointwise ODE u' = i ū v, v' = (i/4) u², advanced with the
classical fourth-order Runge-Kutta method. It conserves |u|² + 4|v|² at every point up to the
local error. A step is half linear, full nonlinear, half linear.

The run ends when t_end is reached or when the blow-up alternative is detected: the gradient
norm exceeds `blowup_factor` times its initial value, a value turns nonfinite, or the adaptive
step would fall below `dt_min`.

## Classes
    - IntegratorConfig: The time-stepping parameters.
    - RunResult: The outcome of a run.
    - SplitStepIntegrator: Strang stepping with cached multipliers.

## Functions
    - linear_step, nonlinear_step, strang_step, evolve
"""

from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

import math
from dataclasses import dataclass

import numpy as np

from qss.evaluators.observables import ObservableRecord, record_observables
from qss.exceptions import FieldOverflowError, ParameterError
from qss.runs.status import RunStatus
from qss.spectral.fields import (
    FieldPair,
    PhysicsParams,
    SpectrumPair,
    fft,
    forward_transform,
    ifft,
    inverse_transform,
)
from qss.spectral.grid import Grid, laplacian_symbol
from qss.utils.logs import get_logger

if TYPE_CHECKING:
    from qss.runs.recorder import Recorder

logger = get_logger(__name__)


@dataclass
class IntegratorConfig:
    """
    The time-stepping parameters.

    Properties
    ----------
    dt0 : float
        The first step.
    dt_min : float
        The smallest admissible step. Below it the run ends with DT_UNDERFLOW.
    dt_max : float
        The largest step.
    t_end : float
        The final time.
    cfl_const : float
        Adaptive law dt = clamp(cfl_const / max(‖u‖∞, ‖v‖∞, 1), dt_min, dt_max).
    blowup_factor : float
        Growth factor of the gradient norm that counts as blow-up.
    record_every : int
        Record the observables every this many steps.
    snapshot_every : int
        Write a snapshot every this many steps (0 disables intermediate snapshots).
    dealias : bool
        Apply the 2/3 truncation rule after each nonlinear substep.
    """

    dt0: float = 1e-3
    dt_min: float = 1e-7
    dt_max: float = 1e-3
    t_end: float = 1.0
    cfl_const: float = 0.1
    blowup_factor: float = 1e3
    record_every: int = 10
    snapshot_every: int = 0
    dealias: bool = False

    def __post_init__(self) -> None:
        """
        Validate the parameters.

        Raises
        ------
        ParameterError
            If 0 < dt_min <= dt0 <= dt_max, t_end > 0, blowup_factor > 1 or the strides are
            violated.
        """
        if not 0 < self.dt_min <= self.dt0 <= self.dt_max:
            raise ParameterError(
                f"Expected 0 < dt_min <= dt0 <= dt_max, got {self.dt_min}, {self.dt0}, "
                f"{self.dt_max}."
            )
        if not self.t_end > 0:
            raise ParameterError(f"t_end must be positive, got {self.t_end}.")
        if not self.cfl_const > 0:
            raise ParameterError(f"cfl_const must be positive, got {self.cfl_const}.")
        if not self.blowup_factor > 1:
            raise ParameterError(f"blowup_factor must exceed 1, got {self.blowup_factor}.")
        if int(self.record_every) < 1 or int(self.snapshot_every) < 0:
            raise ParameterError("record_every must be >= 1 and snapshot_every >= 0.")

    def adaptive_step(self, sup_norm: float) -> float:
        """
        Get the unclamped-from-below step of the adaptive law.

        Parameters
        ----------
        sup_norm : float
            max(‖u‖∞, ‖v‖∞).

        Returns
        -------
        float
            min(cfl_const / max(sup_norm, 1), dt_max).
        """
        return min(self.cfl_const / max(sup_norm, 1.0), self.dt_max)


@dataclass
class RunResult:
    """
    The outcome of a run.

    Properties
    ----------
    status : RunStatus
        COMPLETED, BLOWUP_DETECTED or DT_UNDERFLOW.
    blowup_time_estimate : Optional[float]
        The time at which the blow-up alternative was detected.
    series : List[ObservableRecord]
        The recorded observables.
    final_state : FieldPair
        The last finite state.
    t_final : float
        The time of the final state.
    steps : int
        The number of completed steps.
    reason : str
        Why the run ended.
    """

    status: RunStatus
    blowup_time_estimate: Optional[float]
    series: List[ObservableRecord]
    final_state: FieldPair
    t_final: float
    steps: int
    reason: str = ""

    def to_json(self) -> Dict:
        """
        Summarize the run for reports.

        Returns
        -------
        Dict
            Status, times, step count and reason.
        """
        return {
            "status": self.status.to_text(),
            "blowup_time_estimate": self.blowup_time_estimate,
            "t_final": self.t_final,
            "steps": self.steps,
            "records": len(self.series),
            "reason": self.reason,
        }


def linear_step(spec: SpectrumPair, grid: Grid, params: PhysicsParams, dt: float) -> SpectrumPair:
    """
    Propagate the linear part exactly.

    Parameters
    ----------
    spec : SpectrumPair
        The coefficients.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients of the system.
    dt : float
        The step. Negative values run the flow backwards.

    Returns
    -------
    SpectrumPair
        The propagated coefficients; moduli are unchanged modewise.
    """
    multiplier_u, multiplier_v = _linear_multipliers(grid, params, dt)
    return SpectrumPair(multiplier_u * spec.u_hat, multiplier_v * spec.v_hat)


def _linear_multipliers(
    grid: Grid, params: PhysicsParams, dt: float
) -> Tuple[np.ndarray, np.ndarray]:
    symbol_u = laplacian_symbol(grid, params.gamma1)
    symbol_v = laplacian_symbol(grid, params.gamma2)
    return (
        np.exp(-1j * symbol_u * dt),
        np.exp(-0.5j * (symbol_v + params.beta) * dt),
    )


def _nonlinear_rhs(u: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return 1j * np.conj(u) * v, 0.25j * u * u


def _rk4(u: np.ndarray, v: np.ndarray, dt: float) -> Tuple[np.ndarray, np.ndarray]:
    with np.errstate(over="ignore", invalid="ignore"):
        k1u, k1v = _nonlinear_rhs(u, v)
        k2u, k2v = _nonlinear_rhs(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v)
        k3u, k3v = _nonlinear_rhs(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v)
        k4u, k4v = _nonlinear_rhs(u + dt * k3u, v + dt * k3v)
        u_new = u + dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v_new = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)

    if not (np.isfinite(u_new).all() and np.isfinite(v_new).all()):
        raise FieldOverflowError("Nonlinear substep produced nonfinite values.")

    return u_new, v_new


def nonlinear_step(fields: FieldPair, dt: float) -> FieldPair:
    """
    Advance the pointwise ODE u' = i ū v, v' = (i/4) u² by one Runge-Kutta step.

    Parameters
    ----------
    fields : FieldPair
        The state.
    dt : float
        The step.

    Returns
    -------
    FieldPair
        The advanced state.

    Raises
    ------
    FieldOverflowError
        If the step produces nonfinite values.
    """
    if dt == 0:
        return fields

    u, v = _rk4(fields.u, fields.v, dt)
    return FieldPair(u, v)


def strang_step(
    fields: FieldPair, grid: Grid, params: PhysicsParams, dt: float, dealias: bool = False
) -> FieldPair:
    """
    Advance the state by one Strang step (half linear, full nonlinear, half linear).

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.
    dt : float
        The step.
    dealias : bool, optional
        Apply the 2/3 truncation rule after the nonlinear substep.
        Default is False.

    Returns
    -------
    FieldPair
        The advanced state.
    """
    if dt == 0:
        return fields

    fields.check_grid(grid)
    half = linear_step(forward_transform(fields), grid, params, 0.5 * dt)
    middle = forward_transform(nonlinear_step(inverse_transform(half), dt))
    if dealias:
        middle = SpectrumPair(middle.u_hat * grid.dealias_mask, middle.v_hat * grid.dealias_mask)

    return inverse_transform(linear_step(middle, grid, params, 0.5 * dt))


class SplitStepIntegrator:
    """
    Strang stepping with cached symbols and half-step multipliers.

    The multipliers are recomputed only when the step changes, which keeps fixed-step runs
    at four transforms per step.

    Properties
    ----------
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.
    dealias : bool
        Whether to apply the 2/3 rule after the nonlinear substep.
    gradient_symbol : np.ndarray
        |k|², used for the gradient norm of the last step.
    """

    def __init__(self, grid: Grid, params: PhysicsParams, dealias: bool = False) -> None:
        self.grid = grid
        self.params = params
        self.dealias = dealias
        self.gradient_symbol = laplacian_symbol(grid, 1.0)
        self._symbol_u = laplacian_symbol(grid, params.gamma1)
        self._symbol_v = laplacian_symbol(grid, params.gamma2) + params.beta
        self._cached_dt: Optional[float] = None
        self._half_u: np.ndarray = np.ones(grid.shape)
        self._half_v: np.ndarray = np.ones(grid.shape)
        self.last_gradient_norm: float = math.nan

    def _multipliers(self, dt: float) -> Tuple[np.ndarray, np.ndarray]:
        if dt != self._cached_dt:
            self._half_u = np.exp(-0.5j * self._symbol_u * dt)
            self._half_v = np.exp(-0.25j * self._symbol_v * dt)
            self._cached_dt = dt

        return self._half_u, self._half_v

    def gradient_norm(self, u_hat: np.ndarray, v_hat: np.ndarray) -> float:
        """
        Get ∫|∇u|² + ∫|∇v|² from unitary coefficients.

        Parameters
        ----------
        u_hat : np.ndarray
            Coefficients of u.
        v_hat : np.ndarray
            Coefficients of v.

        Returns
        -------
        float
            The gradient norm.
        """
        power = np.abs(u_hat) ** 2 + np.abs(v_hat) ** 2
        return self.grid.cell_volume * float(np.sum(self.gradient_symbol * power))

    def step(self, fields: FieldPair, dt: float) -> FieldPair:
        """
        Advance the state by one Strang step.

        Parameters
        ----------
        fields : FieldPair
            The state.
        dt : float
            The step.

        Returns
        -------
        FieldPair
            The advanced state. `last_gradient_norm` is updated as a side product.

        Raises
        ------
        FieldOverflowError
            If a value turns nonfinite.
        """
        half_u, half_v = self._multipliers(dt)

        u = ifft(half_u * fft(fields.u))
        v = ifft(half_v * fft(fields.v))
        u, v = _rk4(u, v, dt)

        u_hat = fft(u)
        v_hat = fft(v)
        if self.dealias:
            u_hat = u_hat * self.grid.dealias_mask
            v_hat = v_hat * self.grid.dealias_mask

        u_hat = half_u * u_hat
        v_hat = half_v * v_hat
        self.last_gradient_norm = self.gradient_norm(u_hat, v_hat)

        return FieldPair(ifft(u_hat), ifft(v_hat))


def evolve(
    fields0: FieldPair,
    grid: Grid,
    params: PhysicsParams,
    config: IntegratorConfig,
    recorder: Optional["Recorder"] = None,
) -> RunResult:
    """
    Integrate the system until t_end or until the blow-up alternative is detected.

    The first step is dt0; afterwards the adaptive law is used. The last step is shortened to
    land on t_end. Observables are recorded at t = 0, every `record_every` steps and at the
    final time.

    Parameters
    ----------
    fields0 : FieldPair
        The finite initial state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.
    config : IntegratorConfig
        The time-stepping parameters.
    recorder : Optional[Recorder], optional
        Receives the records and snapshots while the run progresses.
        Default is None.

    Returns
    -------
    RunResult
        The outcome. Overflow never escapes; it is reported as BLOWUP_DETECTED.
    """
    fields0.check_grid(grid)
    integrator = SplitStepIntegrator(grid, params, dealias=config.dealias)

    t = 0.0
    steps = 0
    state = fields0
    first = record_observables(state, grid, params, t, check=True)
    series: List[ObservableRecord] = [first]
    if recorder is not None:
        recorder.record(first)

    gradient0 = first.gradient_norm
    threshold = config.blowup_factor * gradient0
    # Remaining time below this counts as arrived
    arrival = 1e-12 * max(1.0, config.t_end)

    status = RunStatus.COMPLETED
    blowup_time: Optional[float] = None
    reason = "reached t_end"

    while config.t_end - t > arrival:
        if steps == 0:
            dt = config.dt0
        else:
            dt = config.adaptive_step(max(state.sup_norms()))
            if dt < config.dt_min:
                status = RunStatus.DT_UNDERFLOW
                blowup_time = t
                reason = f"adaptive step {dt:.3e} fell below dt_min={config.dt_min:.3e}"
                break

        dt = min(dt, config.t_end - t)

        try:
            state = integrator.step(state, dt)
        except FieldOverflowError as e:
            status = RunStatus.BLOWUP_DETECTED
            blowup_time = t
            reason = str(e)
            break

        t += dt
        steps += 1

        if recorder is not None:
            recorder.snapshot(steps, t, state)

        if gradient0 > 0 and integrator.last_gradient_norm > threshold:
            status = RunStatus.BLOWUP_DETECTED
            blowup_time = t
            reason = (
                f"gradient norm {integrator.last_gradient_norm:.3e} exceeded "
                f"{config.blowup_factor:g} x initial {gradient0:.3e}"
            )
            break

        if steps % config.record_every == 0:
            record = record_observables(state, grid, params, t)
            series.append(record)
            if recorder is not None:
                recorder.record(record)
            logger.debug(f"t={t:.6f} dt={dt:.3e} M={record.M:.15e} E={record.E:.15e}")

    if series[-1].t != t:
        record = record_observables(state, grid, params, t)
        series.append(record)
        if recorder is not None:
            recorder.record(record)

    if status == RunStatus.COMPLETED:
        logger.info(f"Reached t={t:g} after {steps} steps.")
    else:
        logger.info(f"Run ended with {status.to_text()} at t={t:g} after {steps} steps: {reason}.")

    result = RunResult(
        status=status,
        blowup_time_estimate=blowup_time,
        series=series,
        final_state=state,
        t_final=t,
        steps=steps,
        reason=reason,
    )
    if recorder is not None:
        recorder.finish(result, grid, params)

    return result
