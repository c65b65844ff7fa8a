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
# Rescaling

This module provides the amplitude and length rescaling W ↦ νW(ζ·) of a pair.

Under Z = νW(ζ·) in n dimensions the functionals scale as

    M(Z) = ν² ζ^{−n} M(W),   K(Z) = ν² ζ^{2−n} K(W),   J(Z) = ν³ ζ^{−n} J(W),

so the Gagliardo-Nirenberg quotient is invariant, and prescribed targets (J*, M*) are met by

    ν = J* M / (J M*),   ζ = (ν² M / M*)^{1/n}.

Samples at ζx are obtained by evaluating the trigonometric interpolant axis by axis. Points
with |ζ x_j| > L_j/2 fall outside the box and are set to zero.

## Functions
    - rescale: Apply W ↦ νW(ζ·).
    - target_factors: The factors (ν, ζ) meeting the targets.
    - rescale_to_targets: Rescale a pair to prescribed J and M.
"""

from typing import Tuple

import numpy as np

from qss.evaluators.observables import interaction, mass
from qss.exceptions import ParameterError, UndefinedQuotientError
from qss.spectral.fields import FieldPair
from qss.spectral.grid import Grid


def _interpolation_matrix(grid: Grid, axis: int, zeta: float) -> np.ndarray:
    """Matrix mapping samples f(x) to the interpolant at ζx, zero outside the box."""
    x = grid.axes[axis]
    k = grid.wavenumbers[axis]
    evaluate = np.exp(1j * np.outer(zeta * x, k))
    analyse = np.exp(-1j * np.outer(k, x)) / grid.points[axis]
    matrix = evaluate @ analyse

    outside = np.abs(zeta * x) > 0.5 * grid.lengths[axis]
    matrix[outside, :] = 0.0
    return matrix


def _apply_along_axes(field: np.ndarray, matrices: Tuple[np.ndarray, ...]) -> np.ndarray:
    out = np.asarray(field, dtype=complex)
    for axis, matrix in enumerate(matrices):
        out = np.moveaxis(np.tensordot(matrix, out, axes=([1], [axis])), 0, axis)

    return out


def rescale(fields: FieldPair, grid: Grid, nu: float, zeta: float) -> FieldPair:
    """
    Apply W ↦ νW(ζ·) to both components.

    Parameters
    ----------
    fields : FieldPair
        The pair W.
    grid : Grid
        The grid.
    nu : float
        Amplitude factor ν.
    zeta : float
        Length factor ζ, positive.

    Returns
    -------
    FieldPair
        The rescaled pair.
    """
    if not zeta > 0:
        raise ParameterError(f"The length factor must be positive, got {zeta}.")

    fields.check_grid(grid)
    if zeta == 1.0:
        return fields.scaled(nu)

    matrices = tuple(_interpolation_matrix(grid, j, zeta) for j in range(grid.n))
    return FieldPair(
        nu * _apply_along_axes(fields.u, matrices),
        nu * _apply_along_axes(fields.v, matrices),
    )


def target_factors(
    J: float, M: float, J_target: float, M_target: float, n: int
) -> Tuple[float, float]:
    """
    Get the factors (ν, ζ) such that νW(ζ·) has the targets (J*, M*).

    Parameters
    ----------
    J : float
        J(W), positive.
    M : float
        M(W), positive.
    J_target : float
        J*, positive.
    M_target : float
        M*, positive.
    n : int
        The spatial dimension.

    Returns
    -------
    Tuple[float, float]
        (ν, ζ).
    """
    if not (J > 0 and J_target > 0):
        raise UndefinedQuotientError(f"Rescaling needs J > 0 and J* > 0, got {J} and {J_target}.")
    if not (M > 0 and M_target > 0):
        raise ParameterError(f"Rescaling needs M > 0 and M* > 0, got {M} and {M_target}.")

    nu = J_target * M / (J * M_target)
    zeta = (nu**2 * M / M_target) ** (1.0 / n)
    return nu, zeta


def rescale_to_targets(fields: FieldPair, grid: Grid, target: Tuple[float, float]) -> FieldPair:
    """
    Rescale a pair to prescribed J and M while keeping its Gagliardo-Nirenberg quotient.

    Parameters
    ----------
    fields : FieldPair
        The pair W with J(W) > 0.
    grid : Grid
        The grid.
    target : Tuple[float, float]
        The targets (J*, M*).

    Returns
    -------
    FieldPair
        Z = νW(ζ·) with J(Z) = J* and M(Z) = M* up to interpolation accuracy.

    Raises
    ------
    UndefinedQuotientError
        If J(W) <= 0.
    """
    J_target, M_target = target
    nu, zeta = target_factors(
        interaction(fields, grid), mass(fields, grid), J_target, M_target, grid.n
    )
    return rescale(fields, grid, nu, zeta)
