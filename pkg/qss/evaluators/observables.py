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
# Observables

This module provides the scalar functionals of a state.

All integrals use the rectangle rule on the periodic grid and all gradients are spectral, so
quadratic gradient terms are evaluated through Parseval. With |∇f|²_γ = |∇_⊥f|² + γ|∂_{last}f|²:

    M = ∫(|u|² + 4|v|²)
    E = ½∫(|∇u|²_{γ1} + |∇v|²_{γ2} + β|v|² − Re ū²v) = E_γ1 + E_γ2 + E_β − E_Re
    K = ∫(|∇u|²_{γ1} + |∇v|²_{γ2} + β|v|²),  J = Re∫ū²v,  I = K + ωM,  S = E + ωM
    V = ½∫|x|²(|u|² + 4|v|²),  V_⊥ = ½∫|x_⊥|²(|u|² + 4|v|²)

## Classes
    - EnergyParts: The four parts of the energy.
    - KJFunctionals: K, J, I and S.
    - VirialSecond: The second-derivative formula values.
    - ObservableRecord: One time sample of all functionals.

## Functions
    - mass, energy, kj_functionals, gn_quotient
    - variance, transverse_variance, boundary_mass_fraction
    - virial_first_derivative, virial_second_formula, virial_reductions
    - record_observables, records_to_frame, write_series
"""

from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import math
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from qss.constants import BOUNDARY_LAYER_FRACTION, BOUNDARY_MASS_TOLERANCE
from qss.exceptions import BoundaryMassWarning, ParameterError, UndefinedQuotientError
from qss.spectral.fields import (
    FieldPair,
    PhysicsParams,
    axis_gradients_squared,
    spectral_derivative,
)
from qss.spectral.grid import Grid
from qss.utils.files import make_dirs
from qss.utils.logs import get_logger

logger = get_logger(__name__)

SERIES_COLUMNS = [
    "t",
    "M",
    "E",
    "E_g1",
    "E_g2",
    "E_beta",
    "E_Re",
    "K",
    "J",
    "V",
    "V_perp",
    "dV",
    "dV_perp",
    "d2V",
    "d2V_perp",
    "grad_u_sq",
    "grad_v_sq",
    "v_inf",
]


class EnergyParts(NamedTuple):
    """The decomposition E = E_g1 + E_g2 + E_beta − E_Re."""

    E_g1: float
    E_g2: float
    E_beta: float
    E_Re: float


class KJFunctionals(NamedTuple):
    """K, J, I = K + ωM and S = E + ωM."""

    K: float
    J: float
    I: float
    S: float


class VirialSecond(NamedTuple):
    """Second-derivative formula values; d2V is None when γ1 ≠ γ2."""

    d2V: Optional[float]
    d2V_perp: float


def _integral(density: np.ndarray, grid: Grid) -> float:
    return grid.cell_volume * float(np.sum(density))


def _weighted(axes: np.ndarray, gamma: float) -> float:
    """|∇f|²_γ from the per-axis squares."""
    return float(np.sum(axes[:-1]) + gamma * axes[-1])


def l2_squared(field: np.ndarray, grid: Grid) -> float:
    """
    Get ∫|f|².

    Parameters
    ----------
    field : np.ndarray
        The field.
    grid : Grid
        The grid.

    Returns
    -------
    float
        The squared L² norm.
    """
    return _integral(np.abs(field) ** 2, grid)


def interaction(fields: FieldPair, grid: Grid) -> float:
    """
    Get J = Re∫ū²v.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.

    Returns
    -------
    float
        J.
    """
    return _integral(np.real(np.conj(fields.u) ** 2 * fields.v), grid)


def mass(fields: FieldPair, grid: Grid) -> float:
    """
    Get the mass M = ∫(|u|² + 4|v|²).

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.

    Returns
    -------
    float
        The nonnegative mass.
    """
    fields.check_grid(grid)
    return _integral(np.abs(fields.u) ** 2 + 4.0 * np.abs(fields.v) ** 2, grid)


def energy(fields: FieldPair, grid: Grid, params: PhysicsParams) -> Tuple[float, EnergyParts]:
    """
    Get the energy and its parts.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.

    Returns
    -------
    Tuple[float, EnergyParts]
        E and (E_g1, E_g2, E_beta, E_Re).
    """
    fields.check_grid(grid)
    gu = axis_gradients_squared(fields.u, grid)
    gv = axis_gradients_squared(fields.v, grid)
    return _energy_from_tables(gu, gv, l2_squared(fields.v, grid), interaction(fields, grid), params)


def _energy_from_tables(
    gu: np.ndarray, gv: np.ndarray, v2: float, J: float, params: PhysicsParams
) -> Tuple[float, EnergyParts]:
    parts = EnergyParts(
        E_g1=0.5 * _weighted(gu, params.gamma1),
        E_g2=0.5 * _weighted(gv, params.gamma2),
        E_beta=0.5 * params.beta * v2,
        E_Re=0.5 * J,
    )
    return parts.E_g1 + parts.E_g2 + parts.E_beta - parts.E_Re, parts


def kj_functionals(fields: FieldPair, grid: Grid, params: PhysicsParams) -> KJFunctionals:
    """
    Get K, J, I = K + ωM and S = E + ωM.

    Since K = 2(E_g1 + E_g2 + E_beta) and J = 2 E_Re, the identity E = ½K − ½J holds up to
    rounding.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.

    Returns
    -------
    KJFunctionals
        The four functionals.
    """
    E, parts = energy(fields, grid, params)
    M = mass(fields, grid)
    K = 2.0 * (parts.E_g1 + parts.E_g2 + parts.E_beta)
    J = 2.0 * parts.E_Re
    return KJFunctionals(K=K, J=J, I=K + params.omega * M, S=E + params.omega * M)


def gn_quotient(
    fields: FieldPair, grid: Grid, d: int, params: Optional[PhysicsParams] = None
) -> float:
    """
    Get the Gagliardo-Nirenberg quotient GN = M^{3/2 − (d+1)/4} K^{(d+1)/4} / J.

    K is taken with β = 0. The quotient is invariant under W ↦ νW(ζ·).

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    d : int
        The number of transverse dimensions, n − 1.
    params : Optional[PhysicsParams], optional
        Supplies γ1 and γ2 for K. β and ω are ignored.
        Default is None (γ1 = γ2 = 1).

    Returns
    -------
    float
        The finite positive quotient.

    Raises
    ------
    ParameterError
        If d does not match the grid.
    UndefinedQuotientError
        If J <= 0.
    """
    if d != grid.d:
        raise ParameterError(f"d={d} does not match a grid of dimension {grid.n}.")

    if params is None:
        params = PhysicsParams()

    J = interaction(fields, grid)
    if not J > 0:
        raise UndefinedQuotientError(f"The quotient is undefined for J={J} <= 0.")

    gu = axis_gradients_squared(fields.u, grid)
    gv = axis_gradients_squared(fields.v, grid)
    K = _weighted(gu, params.gamma1) + _weighted(gv, params.gamma2)
    M = mass(fields, grid)

    exponent = (d + 1) / 4.0
    return float(M ** (1.5 - exponent) * K**exponent / J)


def boundary_mass_fraction(fields: FieldPair, grid: Grid) -> float:
    """
    Get the share of the mass carried by the outer layer of the box.

    The layer consists of the outermost 5% of the cells (at least one) at both ends of every
    axis.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.

    Returns
    -------
    float
        The fraction, 0 for the zero state.
    """
    density = np.abs(fields.u) ** 2 + 4.0 * np.abs(fields.v) ** 2
    total = float(np.sum(density))
    if total == 0.0:
        return 0.0

    inner = np.ones(grid.shape, dtype=bool)
    for j, points in enumerate(grid.points):
        width = max(1, int(round(BOUNDARY_LAYER_FRACTION * points)))
        index = np.arange(points)
        keep = (index >= width) & (index < points - width)
        shape = [1] * grid.n
        shape[j] = points
        inner = inner & keep.reshape(shape)

    return float(np.sum(density[~inner])) / total


def check_decay(fields: FieldPair, grid: Grid) -> bool:
    """
    Check that a state is decayed at the box boundary and warn otherwise.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.

    Returns
    -------
    bool
        Whether the boundary layer carries less than 1e-8 of the mass.
    """
    fraction = boundary_mass_fraction(fields, grid)
    if fraction >= BOUNDARY_MASS_TOLERANCE:
        warnings.warn(
            f"The boundary layer carries {fraction:.3e} of the mass; variance identities on the "
            "periodic box are not reliable for this state.",
            BoundaryMassWarning,
            stacklevel=3,
        )
        return False

    return True


def variance(fields: FieldPair, grid: Grid, check: bool = True) -> float:
    """
    Get V = ½∫|x|²(|u|² + 4|v|²) with box-centered coordinates.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    check : bool, optional
        Whether to warn if the state is not decayed at the boundary.
        Default is True.

    Returns
    -------
    float
        The nonnegative variance.
    """
    fields.check_grid(grid)
    if check:
        check_decay(fields, grid)

    density = np.abs(fields.u) ** 2 + 4.0 * np.abs(fields.v) ** 2
    return 0.5 * _integral(grid.radius_squared * density, grid)


def transverse_variance(fields: FieldPair, grid: Grid, check: bool = True) -> float:
    """
    Get V_⊥ = ½∫|x_⊥|²(|u|² + 4|v|²), x_⊥ being the first d coordinates.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    check : bool, optional
        Whether to warn if the state is not decayed at the boundary.
        Default is True.

    Returns
    -------
    float
        The nonnegative transverse variance.
    """
    fields.check_grid(grid)
    if check:
        check_decay(fields, grid)

    density = np.abs(fields.u) ** 2 + 4.0 * np.abs(fields.v) ** 2
    return 0.5 * _integral(grid.transverse_radius_squared * density, grid)


def virial_first_derivative(
    fields: FieldPair, grid: Grid, params: PhysicsParams
) -> Tuple[float, float]:
    """
    Get the first time derivatives of V and V_⊥ from their closed formulas.

        V'   = 2 Im∫(x^{γ1}·∇u ū + 2 x^{γ2}·∇v v̄),  x^γ = (x_⊥, γ x_{last})
        V_⊥' = 2 Im∫(x_⊥·∇_⊥u ū + 2 x_⊥·∇_⊥v v̄)

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.

    Returns
    -------
    Tuple[float, float]
        (dV, dV_perp). Both vanish for real fields.
    """
    fields.check_grid(grid)
    last = grid.n - 1

    transverse_u = np.zeros(grid.shape, dtype=complex)
    transverse_v = np.zeros(grid.shape, dtype=complex)
    for j in range(grid.d):
        transverse_u += grid.coordinate(j) * spectral_derivative(fields.u, grid, j)
        transverse_v += grid.coordinate(j) * spectral_derivative(fields.v, grid, j)

    last_u = grid.coordinate(last) * spectral_derivative(fields.u, grid, last)
    last_v = grid.coordinate(last) * spectral_derivative(fields.v, grid, last)

    u_bar = np.conj(fields.u)
    v_bar = np.conj(fields.v)

    dV_perp = 2.0 * _integral(np.imag(transverse_u * u_bar + 2.0 * transverse_v * v_bar), grid)
    dV_last = 2.0 * _integral(
        np.imag(params.gamma1 * last_u * u_bar + 2.0 * params.gamma2 * last_v * v_bar), grid
    )

    return dV_perp + dV_last, dV_perp


def _virial_second_from_tables(
    gu: np.ndarray, gv: np.ndarray, J: float, d: int, params: PhysicsParams
) -> VirialSecond:
    d2V_perp = 4.0 * float(np.sum(gu[:-1]) + np.sum(gv[:-1])) - d * J

    d2V: Optional[float] = None
    if params.isotropic:
        gamma = params.gamma1
        d2V = (
            4.0 * float(np.sum(gu[:-1]) + np.sum(gv[:-1]) + gamma**2 * (gu[-1] + gv[-1]))
            - (d + gamma) * J
        )

    return VirialSecond(d2V=d2V, d2V_perp=d2V_perp)


def virial_second_formula(
    fields: FieldPair, grid: Grid, params: PhysicsParams, E0: Optional[float] = None
) -> VirialSecond:
    """
    Get the second time derivatives of V and V_⊥ from their closed formulas.

        V''   = 4∫(|∇_⊥u|² + γ²|∂_{last}u|² + |∇_⊥v|² + γ²|∂_{last}v|²) − (d + γ)J
                (only if γ1 = γ2 = γ)
        V_⊥'' = 4∫(|∇_⊥u|² + |∇_⊥v|²) − dJ

    If E0 is given, the reductions through the conserved energy are evaluated as well and
    their mismatch is logged.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.
    E0 : Optional[float], optional
        The conserved energy of the trajectory.
        Default is None.

    Returns
    -------
    VirialSecond
        d2V (None if γ1 ≠ γ2) and d2V_perp.
    """
    fields.check_grid(grid)
    gu = axis_gradients_squared(fields.u, grid)
    gv = axis_gradients_squared(fields.v, grid)
    result = _virial_second_from_tables(gu, gv, interaction(fields, grid), grid.d, params)

    if E0 is not None:
        reduced = virial_reductions(fields, grid, params, E0)
        for name, general, special in zip(("d2V", "d2V_perp"), result, reduced):
            if general is not None and special is not None:
                logger.debug(f"{name}: general form {general:.12e}, reduced form {special:.12e}.")

    return result


def virial_reductions(
    fields: FieldPair, grid: Grid, params: PhysicsParams, E0: float
) -> Tuple[Optional[float], Optional[float]]:
    """
    Get the second derivatives rewritten with the conserved energy E0.

        d = 3, γ1 = γ2 = 1:  V''   = 8E0 − 4β∫|v|²
        d = 4:               V_⊥'' = 8E0 − 4β∫|v|² − 4∫(γ1|∂_{last}u|² + γ2|∂_{last}v|²)

    Both agree with `virial_second_formula` whenever E0 is the energy of the state.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.
    E0 : float
        The conserved energy.

    Returns
    -------
    Tuple[Optional[float], Optional[float]]
        The reduced d2V and d2V_perp, None outside their cases.
    """
    v2 = l2_squared(fields.v, grid)

    reduced_d2V: Optional[float] = None
    if grid.d == 3 and params.isotropic and math.isclose(params.gamma1, 1.0, rel_tol=1e-14):
        reduced_d2V = 8.0 * E0 - 4.0 * params.beta * v2

    reduced_d2V_perp: Optional[float] = None
    if grid.d == 4:
        last = grid.n - 1
        gu = axis_gradients_squared(fields.u, grid)[last]
        gv = axis_gradients_squared(fields.v, grid)[last]
        reduced_d2V_perp = (
            8.0 * E0 - 4.0 * params.beta * v2 - 4.0 * (params.gamma1 * gu + params.gamma2 * gv)
        )

    return reduced_d2V, reduced_d2V_perp


@dataclass(frozen=True)
class ObservableRecord:
    """
    One time sample of all functionals.

    Properties
    ----------
    t : float
        The time.
    M, E : float
        Mass and energy.
    E_g1, E_g2, E_beta, E_Re : float
        The energy parts, E = E_g1 + E_g2 + E_beta − E_Re.
    K, J : float
        The functionals K and J.
    V, V_perp : float
        Variance and transverse variance.
    dV, dV_perp : float
        First derivatives from the closed formulas.
    d2V, d2V_perp : float
        Second derivatives from the closed formulas; d2V is NaN if γ1 ≠ γ2.
    grad_u_sq, grad_v_sq : float
        ∫|∇u|² and ∫|∇v|² (unweighted).
    v_inf : float
        ‖v‖_∞.
    """

    t: float
    M: float
    E: float
    E_g1: float
    E_g2: float
    E_beta: float
    E_Re: float
    K: float
    J: float
    V: float
    V_perp: float
    dV: float
    dV_perp: float
    d2V: float
    d2V_perp: float
    grad_u_sq: float
    grad_v_sq: float
    v_inf: float

    @property
    def E_parts(self) -> EnergyParts:
        """The energy parts."""
        return EnergyParts(self.E_g1, self.E_g2, self.E_beta, self.E_Re)

    @property
    def gradient_norm(self) -> float:
        """∫|∇u|² + ∫|∇v|², the quantity watched by the blow-up detector."""
        return self.grad_u_sq + self.grad_v_sq

    def to_row(self) -> List[float]:
        """
        Get the values in CSV column order.

        Returns
        -------
        List[float]
            The values.
        """
        return [getattr(self, column) for column in SERIES_COLUMNS]


def record_observables(
    fields: FieldPair, grid: Grid, params: PhysicsParams, t: float, check: bool = False
) -> ObservableRecord:
    """
    Evaluate all functionals of a state.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.
    t : float
        The time of the state.
    check : bool, optional
        Whether to warn if the state is not decayed at the boundary.
        Default is False.

    Returns
    -------
    ObservableRecord
        The record.
    """
    fields.check_grid(grid)
    gu = axis_gradients_squared(fields.u, grid)
    gv = axis_gradients_squared(fields.v, grid)
    v2 = l2_squared(fields.v, grid)
    J = interaction(fields, grid)

    E, parts = _energy_from_tables(gu, gv, v2, J, params)
    K = 2.0 * (parts.E_g1 + parts.E_g2 + parts.E_beta)
    dV, dV_perp = virial_first_derivative(fields, grid, params)
    second = _virial_second_from_tables(gu, gv, J, grid.d, params)
    _, v_inf = fields.sup_norms()

    return ObservableRecord(
        t=float(t),
        M=mass(fields, grid),
        E=E,
        E_g1=parts.E_g1,
        E_g2=parts.E_g2,
        E_beta=parts.E_beta,
        E_Re=parts.E_Re,
        K=K,
        J=J,
        V=variance(fields, grid, check=check),
        V_perp=transverse_variance(fields, grid, check=False),
        dV=dV,
        dV_perp=dV_perp,
        d2V=second.d2V if second.d2V is not None else math.nan,
        d2V_perp=second.d2V_perp,
        grad_u_sq=float(np.sum(gu)),
        grad_v_sq=float(np.sum(gv)),
        v_inf=v_inf,
    )


def records_to_frame(records: Sequence[ObservableRecord]) -> pd.DataFrame:
    """
    Collect records in a dataframe with the CSV column order.

    Parameters
    ----------
    records : Sequence[ObservableRecord]
        The records.

    Returns
    -------
    pd.DataFrame
        One row per record.
    """
    return pd.DataFrame([asdict(record) for record in records], columns=SERIES_COLUMNS)


def write_series(records: Sequence[ObservableRecord], path: Union[str, Path]) -> Path:
    """
    Write records as CSV with round-tripping float formatting.

    Undefined second derivatives are written as empty fields.

    Parameters
    ----------
    records : Sequence[ObservableRecord]
        The records.
    path : Union[str, Path]
        The target file.

    Returns
    -------
    Path
        The written file.
    """
    path = Path(path)
    make_dirs(path)
    records_to_frame(records).to_csv(
        path, index=False, float_format="%.17g", na_rep="", lineterminator="\n"
    )
    return path


def read_series(path: Union[str, Path]) -> List[ObservableRecord]:
    """
    Read records written by `write_series`.

    Parameters
    ----------
    path : Union[str, Path]
        The CSV file.

    Returns
    -------
    List[ObservableRecord]
        The records; empty d2V fields become NaN.
    """
    frame = pd.read_csv(path, float_precision="round_trip")
    return [
        ObservableRecord(**{column: float(row[column]) for column in SERIES_COLUMNS})
        for _, row in frame.iterrows()
    ]
