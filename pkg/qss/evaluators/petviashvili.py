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
# Petviashvili

This module computes bound states (P, Q) of the stationary system

    −ωP + Δ_{γ1}P + P̄Q = 0,
    −(4ω + β)Q + Δ_{γ2}Q + ½P² = 0

with the stabilized spectral fixed-point iteration

    P̂ ← S^a F[PQ] / (ω + |k|²_{γ1}),   Q̂ ← S^a F[½P²] / (4ω + β + |k|²_{γ2}),

where S = I(P, Q) / ((3/2) J(P, Q)). Pairing the two equations with P and Q shows that every
solution satisfies I = (3/2)J, so S = 1 at the fixed point. Ground states are real and
positive, so the iteration runs on real fields.

A mass-constrained gradient flow is provided as an independent oracle for low resolutions.

## Classes
    - PetviashviliConfig: The iteration parameters.
    - GroundStateResult: The converged pair with its diagnostics.
    - PohozaevReport: The Pohozaev and fixed-point ratios.

## Functions
    - stationary_residual, petviashvili_solve, pohozaev_check, gradient_flow_groundstate
"""

from typing import Any, Dict, List, Optional, Tuple, Union

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from qss.constants import DIAGNOSTICS_FILENAME, GROUNDSTATE_FILENAME, RESIDUALS_FILENAME
from qss.evaluators.observables import energy, kj_functionals, l2_squared, mass
from qss.exceptions import NotConvergedError, ParameterError
from qss.spectral.fields import FieldPair, PhysicsParams, fft, ifft
from qss.spectral.grid import Grid, laplacian_symbol
from qss.spectral.presets import Preset, preset_from_dict, sample_preset
from qss.spectral.snapshot import save_snapshot
from qss.utils.files import make_dirs, write_json, write_jsonlines
from qss.utils.logs import get_logger

logger = get_logger(__name__)


def _default_init() -> Dict[str, Any]:
    return {"kind": "gaussian", "amplitude_u": 1.0, "amplitude_v": 1.0, "width": 1.0}


@dataclass
class PetviashviliConfig:
    """
    The iteration parameters.

    Properties
    ----------
    max_iter : int
        Maximum number of iterations, at least one.
    tol : float
        Target relative residual, positive.
    stab_exponent : float
        The exponent a of the stabilizer; 2 matches the quadratic nonlinearity.
    init : Dict[str, Any]
        Description of the initial guess (a preset dictionary).
    pohozaev_tol : float
        Tolerance on the Pohozaev and fixed-point ratios.
    """

    max_iter: int = 300
    tol: float = 1e-10
    stab_exponent: float = 2.0
    init: Dict[str, Any] = field(default_factory=_default_init)
    pohozaev_tol: float = 1e-6

    def __post_init__(self) -> None:
        """
        Validate the parameters.

        Raises
        ------
        ParameterError
            If tol <= 0, max_iter < 1 or the initial guess is invalid.
        """
        if not self.tol > 0:
            raise ParameterError(f"tol must be positive, got {self.tol}.")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ParameterError(f"max_iter must be a positive integer, got {self.max_iter}.")
        if not self.pohozaev_tol > 0:
            raise ParameterError(f"pohozaev_tol must be positive, got {self.pohozaev_tol}.")

        self.max_iter = int(self.max_iter)
        self.preset()

    def preset(self) -> Preset:
        """
        Get the initial guess.

        Returns
        -------
        Preset
            The preset described by `init`.
        """
        return preset_from_dict(self.init)


@dataclass
class PohozaevReport:
    """
    The Pohozaev and fixed-point ratios of a bound state.

    Every bound state satisfies ∫|∇P|²_{γ1} + ∫|∇Q|²_{γ2} = (n/4)J and I = (3/2)J, hence
    K/J = n/4 + β∫|Q|²/J and E/K = ½ − ½J/K. With β = 0 these are (d+1)/4 and (d−3)/(2d+2).

    Properties
    ----------
    kj_ratio, ij_ratio, energy_ratio : float
        The measured K/J, I/J and E/K.
    expected_kj, expected_ij, expected_energy_ratio : float
        The expected values.
    tolerance : float
        The absolute tolerance used for `passed`.
    passed : bool
        Whether all three deviations are within the tolerance.
    """

    kj_ratio: float
    ij_ratio: float
    energy_ratio: float
    expected_kj: float
    expected_ij: float
    expected_energy_ratio: float
    tolerance: float
    passed: bool

    @property
    def ratios(self) -> Tuple[float, float, float]:
        """(K/J, I/J, E/K)."""
        return self.kj_ratio, self.ij_ratio, self.energy_ratio

    @property
    def deviations(self) -> Tuple[float, float, float]:
        """Absolute deviations from the expected values."""
        return (
            abs(self.kj_ratio - self.expected_kj),
            abs(self.ij_ratio - self.expected_ij),
            abs(self.energy_ratio - self.expected_energy_ratio),
        )


@dataclass
class GroundStateResult:
    """
    The outcome of the iteration.

    Properties
    ----------
    fields : FieldPair
        The pair (P, Q).
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients, ω included.
    residual_history : List[float]
        Relative residual per iteration.
    iterations : int
        Number of iterations performed.
    ratios : Tuple[float, float, float]
        (K/J, I/J, E/K).
    positivity_min : float
        Minimum over the grid of min(P, Q).
    stabilizer : float
        The stabilizer S of the last iterate.
    converged : bool
        Whether the residual reached the tolerance.
    """

    fields: FieldPair
    grid: Grid
    params: PhysicsParams
    residual_history: List[float]
    iterations: int
    ratios: Tuple[float, float, float]
    positivity_min: float
    stabilizer: float
    converged: bool

    @property
    def residual(self) -> float:
        """The final relative residual."""
        return self.residual_history[-1] if self.residual_history else math.inf

    def to_json(self) -> Dict[str, Any]:
        """
        Get the diagnostics report.

        Returns
        -------
        Dict[str, Any]
            residual, iterations, ratios, positivity_min and some context.
        """
        return {
            "residual": self.residual,
            "iterations": self.iterations,
            "ratios": {
                "K/J": self.ratios[0],
                "I/J": self.ratios[1],
                "E/K": self.ratios[2],
            },
            "positivity_min": self.positivity_min,
            "stabilizer": self.stabilizer,
            "converged": self.converged,
            "grid": self.grid.to_json(),
            "params": self.params.to_json(),
        }

    def save(self, directory: Union[str, Path]) -> List[Path]:
        """
        Write the pair, the diagnostics and the residual history.

        Parameters
        ----------
        directory : Union[str, Path]
            The output directory.

        Returns
        -------
        List[Path]
            The written files.
        """
        directory = Path(directory)
        make_dirs(directory)
        return [
            save_snapshot(self.fields, self.grid, self.params, 0.0, directory / GROUNDSTATE_FILENAME),
            write_json(directory / DIAGNOSTICS_FILENAME, self.to_json()),
            write_jsonlines(
                directory / RESIDUALS_FILENAME,
                ({"iteration": i + 1, "residual": r} for i, r in enumerate(self.residual_history)),
            ),
        ]


def _operators(grid: Grid, params: PhysicsParams) -> Tuple[np.ndarray, np.ndarray]:
    """The symbols ω + |k|²_{γ1} and 4ω + β + |k|²_{γ2}."""
    return (
        params.omega + laplacian_symbol(grid, params.gamma1),
        4.0 * params.omega + params.beta + laplacian_symbol(grid, params.gamma2),
    )


def stationary_residual(fields: FieldPair, grid: Grid, params: PhysicsParams) -> float:
    """
    Get the relative L² residual of the stationary system.

    Parameters
    ----------
    fields : FieldPair
        The candidate (P, Q).
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.

    Returns
    -------
    float
        ‖(−ωP + Δ_{γ1}P + P̄Q, −(4ω+β)Q + Δ_{γ2}Q + ½P²)‖ / ‖(P, Q)‖, and +inf for the zero
        state.
    """
    fields.check_grid(grid)
    norm = l2_squared(fields.u, grid) + l2_squared(fields.v, grid)
    if norm == 0.0:
        return math.inf

    op_u, op_v = _operators(grid, params)
    line_u = -ifft(op_u * fft(fields.u)) + np.conj(fields.u) * fields.v
    line_v = -ifft(op_v * fft(fields.v)) + 0.5 * fields.u**2
    defect = l2_squared(line_u, grid) + l2_squared(line_v, grid)
    return math.sqrt(defect / norm)


def _quotient(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator > 0 else math.nan


def _ratios(fields: FieldPair, grid: Grid, params: PhysicsParams) -> Tuple[float, float, float]:
    # NaN where J or K is not positive, e.g. for an initial guess without interaction
    K, J, I, _ = kj_functionals(fields, grid, params)
    E, _ = energy(fields, grid, params)
    return _quotient(K, J), _quotient(I, J), _quotient(E, K)


def petviashvili_solve(
    grid: Grid, params: PhysicsParams, config: Optional[PetviashviliConfig] = None
) -> GroundStateResult:
    """
    Compute a bound state with the stabilized fixed-point iteration.

    Parameters
    ----------
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients; requires ω > 0 and 4ω + β > 0.
    config : Optional[PetviashviliConfig], optional
        The iteration parameters.
        Default is None (the defaults of PetviashviliConfig).

    Returns
    -------
    GroundStateResult
        The converged pair.

    Raises
    ------
    ParameterError
        If (ω, β) does not admit bound states.
    NotConvergedError
        If the residual does not reach the tolerance within max_iter iterations. The partial
        result is attached as `result`.
    """
    params.require_bound_state()
    if config is None:
        config = PetviashviliConfig()

    initial = sample_preset(grid, config.preset())
    P = np.real(initial.u).astype(float)
    Q = np.real(initial.v).astype(float)

    op_p, op_q = _operators(grid, params)
    history: List[float] = []
    stabilizer = math.nan
    converged = False
    iterations = 0

    for iterations in range(1, config.max_iter + 1):
        P_hat = fft(P)
        Q_hat = fft(Q)
        NP_hat = fft(P * Q)
        NQ_hat = fft(0.5 * P * P)

        # Unitary transforms: the cell volume cancels in every ratio below
        I = float(np.sum(op_p * np.abs(P_hat) ** 2) + np.sum(op_q * np.abs(Q_hat) ** 2))
        J = float(np.sum(P * P * Q))

        norm = float(np.sum(np.abs(P_hat) ** 2) + np.sum(np.abs(Q_hat) ** 2))
        defect = float(
            np.sum(np.abs(NP_hat - op_p * P_hat) ** 2) + np.sum(np.abs(NQ_hat - op_q * Q_hat) ** 2)
        )
        residual = math.sqrt(defect / norm) if norm > 0 else math.inf
        history.append(residual)
        if not J > 0:
            # The stabilizer is undefined; report this iterate as it is
            stabilizer = math.nan
            logger.debug(f"Iteration {iterations}: J={J:.3e} is not positive.")
            break

        stabilizer = I / (1.5 * J)

        logger.debug(f"Iteration {iterations}: residual={residual:.3e} S={stabilizer:.12f}")
        if residual <= config.tol:
            converged = True
            break
        if iterations == config.max_iter:
            break

        factor = stabilizer**config.stab_exponent
        P = np.real(ifft(factor * NP_hat / op_p))
        Q = np.real(ifft(factor * NQ_hat / op_q))

    fields = FieldPair(P, Q)
    ratios = _ratios(fields, grid, params)
    result = GroundStateResult(
        fields=fields,
        grid=grid,
        params=params,
        residual_history=history,
        iterations=iterations,
        ratios=ratios,
        positivity_min=float(min(P.min(), Q.min())),
        stabilizer=stabilizer,
        converged=converged,
    )

    if not converged:
        logger.warning(
            f"No convergence after {iterations} iterations (residual {result.residual:.3e}, "
            f"tolerance {config.tol:.1e})."
        )
        raise NotConvergedError(
            f"Residual {result.residual:.3e} above tolerance {config.tol:.1e} after "
            f"{iterations} iterations.",
            result=result,
        )

    logger.info(
        f"Converged after {iterations} iterations: residual={result.residual:.3e}, "
        f"K/J={ratios[0]:.10f}, I/J={ratios[1]:.10f}, E/K={ratios[2]:.10f}."
    )
    return result


def pohozaev_check(
    result: Union[GroundStateResult, FieldPair],
    d: int,
    grid: Optional[Grid] = None,
    params: Optional[PhysicsParams] = None,
    tolerance: float = 1e-6,
) -> PohozaevReport:
    """
    Evaluate the Pohozaev and fixed-point ratios.

    Parameters
    ----------
    result : Union[GroundStateResult, FieldPair]
        The converged result, or a bare pair together with grid and params.
    d : int
        The number of transverse dimensions.
    grid : Optional[Grid], optional
        The grid, required for a bare pair.
        Default is None.
    params : Optional[PhysicsParams], optional
        The coefficients, required for a bare pair.
        Default is None.
    tolerance : float, optional
        Absolute tolerance on all three ratios.
        Default is 1e-6.

    Returns
    -------
    PohozaevReport
        The measured and expected ratios. Deviations beyond the tolerance are logged.
    """
    if isinstance(result, GroundStateResult):
        fields, grid, params = result.fields, result.grid, result.params
    else:
        fields = result
        if grid is None or params is None:
            raise ParameterError("A bare pair needs the grid and the params.")

    if d != grid.d:
        raise ParameterError(f"d={d} does not match a grid of dimension {grid.n}.")

    kj, ij, energy_ratio = _ratios(fields, grid, params)
    J = kj_functionals(fields, grid, params).J
    expected_kj = (d + 1) / 4.0 + _quotient(params.beta * l2_squared(fields.v, grid), J)
    expected_energy_ratio = 0.5 - 0.5 / expected_kj

    report = PohozaevReport(
        kj_ratio=kj,
        ij_ratio=ij,
        energy_ratio=energy_ratio,
        expected_kj=expected_kj,
        expected_ij=1.5,
        expected_energy_ratio=expected_energy_ratio,
        tolerance=tolerance,
        passed=False,
    )
    report.passed = all(deviation <= tolerance for deviation in report.deviations)
    if not report.passed:
        logger.warning(
            f"Pohozaev check failed: K/J={kj:.10f} (expected {expected_kj:.10f}), "
            f"I/J={ij:.10f} (expected 1.5), E/K={energy_ratio:.10f} "
            f"(expected {expected_energy_ratio:.10f})."
        )

    return report


def gradient_flow_groundstate(
    grid: Grid,
    params: PhysicsParams,
    target_mass: float,
    init: Optional[Preset] = None,
    tau: float = 0.1,
    tol: float = 1e-10,
    max_iter: int = 20000,
) -> Tuple[FieldPair, float, int]:
    """
    Minimize the energy at fixed mass with a preconditioned projected gradient flow.

    The gradient (δE/δP, δE/δQ) is preconditioned with (1 − Δ)^{-1}, projected so that the
    step is tangent to the mass sphere, and the pair is rescaled to the target mass after
    every step. At a fixed point δE = μ δM/2, i.e. the stationary system with ω = −μ.
    Intended as an independent check of the fixed-point iteration on small grids with
    γ1 = γ2 and d <= 2.

    Parameters
    ----------
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients; ω is ignored and returned instead.
    target_mass : float
        The mass of the minimizer.
    init : Optional[Preset], optional
        The initial guess.
        Default is None (a unit Gaussian pair).
    tau : float, optional
        The pseudo-time step.
        Default is 0.1.
    tol : float, optional
        Tolerance on the relative size of the projected step.
        Default is 1e-10.
    max_iter : int, optional
        Maximum number of iterations.
        Default is 20000.

    Returns
    -------
    Tuple[FieldPair, float, int]
        The minimizer, its frequency ω and the number of iterations.

    Raises
    ------
    NotConvergedError
        If the tolerance is not reached.
    """
    if init is None:
        init = preset_from_dict(_default_init())

    initial = sample_preset(grid, init)
    P = np.real(initial.u).astype(float)
    Q = np.real(initial.v).astype(float)

    symbol_p = laplacian_symbol(grid, params.gamma1)
    symbol_q = laplacian_symbol(grid, params.gamma2)
    precondition_p = 1.0 / (1.0 + symbol_p)
    precondition_q = 1.0 / (1.0 + symbol_q)

    def normalize(P: np.ndarray, Q: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        scale = math.sqrt(target_mass / mass(FieldPair(P, Q), grid))
        return scale * P, scale * Q

    P, Q = normalize(P, Q)
    mu = math.nan

    for iteration in range(1, max_iter + 1):
        P_hat = fft(P)
        Q_hat = fft(Q)
        grad_p = np.real(ifft(symbol_p * P_hat)) - P * Q
        grad_q = np.real(ifft(symbol_q * Q_hat)) + params.beta * Q - 0.5 * P * P

        pre_grad_p = np.real(ifft(precondition_p * fft(grad_p)))
        pre_grad_q = np.real(ifft(precondition_q * fft(grad_q)))
        pre_mass_p = np.real(ifft(precondition_p * P_hat))
        pre_mass_q = np.real(ifft(precondition_q * 4.0 * Q_hat))

        mu = float(np.sum(pre_grad_p * P) + np.sum(pre_grad_q * 4.0 * Q)) / float(
            np.sum(pre_mass_p * P) + np.sum(pre_mass_q * 4.0 * Q)
        )
        step_p = pre_grad_p - mu * pre_mass_p
        step_q = pre_grad_q - mu * pre_mass_q

        size = math.sqrt(float(np.sum(step_p**2) + np.sum(step_q**2)))
        scale = math.sqrt(float(np.sum(P**2) + np.sum(Q**2)))
        if size <= tol * scale:
            logger.debug(f"Gradient flow converged after {iteration} iterations, omega={-mu}.")
            return FieldPair(P, Q), -mu, iteration

        P, Q = normalize(P - tau * step_p, Q - tau * step_q)

    raise NotConvergedError(
        f"Gradient flow did not converge within {max_iter} iterations.",
        result=(FieldPair(P, Q), -mu, max_iter),
    )
