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
# Orbit

This module provides the symmetry orbit of a pair and the distance to it.

The orbit of (P, Q) is the family f(θ, y)[P, Q] = (e^{iθ}P(· + y), e^{2iθ}Q(· + y)). The
distance of a state (u, v) to the orbit is measured in H¹ × H¹,

    D²(θ, y) = ‖u − e^{iθ}P(· + y)‖²_{H¹} + ‖v − e^{2iθ}Q(· + y)‖²_{H¹}
             = c − 2 Re(e^{iθ}A(y) + e^{2iθ}B(y)),

with the H¹ cross-correlations A(y) = ⟨u, P(· + y)⟩ and B(y) = ⟨v, Q(· + y)⟩. All shifts are
obtained at once by transforms, the best shift is refined over its ±1 cell neighbourhood and θ
is found by dense sampling, parabolic refinement and a Newton polish.

## Functions
    - apply_orbit: Apply f(θ, y).
    - orbit_distance: The distance to the orbit.
    - orbit_distance_with_argmin: The distance together with the minimizing (θ, y).
"""

from typing import List, Sequence, Tuple, Union

import itertools
import math

import numpy as np
import scipy.fft

from qss.constants import NEWTON_POLISH_STEPS, THETA_SAMPLES
from qss.exceptions import ShapeMismatchError
from qss.spectral.fields import FieldPair, fft, ifft
from qss.spectral.grid import Grid, laplacian_symbol


def apply_orbit(
    fields: FieldPair,
    theta: float,
    y_shift: Union[int, Sequence[float]],
    grid: Union[Grid, None] = None,
    fractional: bool = False,
) -> FieldPair:
    """
    Apply f(θ, y): (u, v) ↦ (e^{iθ}u(· + y), e^{2iθ}v(· + y)).

    Parameters
    ----------
    fields : FieldPair
        The pair.
    theta : float
        The phase θ.
    y_shift : Union[int, Sequence[float]]
        The shift in cells per axis (an int shifts every axis by the same amount).
    grid : Union[Grid, None], optional
        The grid, required for fractional shifts.
        Default is None.
    fractional : bool, optional
        Shift spectrally by possibly non-integer cell counts.
        Default is False.

    Returns
    -------
    FieldPair
        The transformed pair.
    """
    n = fields.u.ndim
    shift = [y_shift] * n if np.isscalar(y_shift) else list(y_shift)  # type: ignore
    if len(shift) != n:
        raise ShapeMismatchError(f"Shift {shift} does not match dimension {n}.")

    if fractional:
        if grid is None:
            raise ShapeMismatchError("Fractional shifts need the grid.")
        phase = sum(
            grid.derivative_wavenumber(j) * float(shift[j]) * grid.spacing[j] for j in range(n)
        )
        factor = np.exp(1j * phase)
        u = ifft(factor * fft(fields.u))
        v = ifft(factor * fft(fields.v))
    else:
        cells = [int(round(s)) for s in shift]
        # g(x) = f(x + y) samples f at index i + m
        axes = tuple(range(n))
        u = np.roll(fields.u, [-m for m in cells], axis=axes)
        v = np.roll(fields.v, [-m for m in cells], axis=axes)

    return FieldPair(np.exp(1j * theta) * u, np.exp(2j * theta) * v)


def _h1_weight(grid: Grid) -> np.ndarray:
    return 1.0 + laplacian_symbol(grid, 1.0)


def h1_norm_squared(fields: FieldPair, grid: Grid) -> float:
    """
    Get ‖u‖²_{H¹} + ‖v‖²_{H¹} with ‖f‖²_{H¹} = ∫(|f|² + |∇f|²).

    Parameters
    ----------
    fields : FieldPair
        The pair.
    grid : Grid
        The grid.

    Returns
    -------
    float
        The squared norm.
    """
    weight = _h1_weight(grid)
    power = np.abs(fft(fields.u)) ** 2 + np.abs(fft(fields.v)) ** 2
    return grid.cell_volume * float(np.sum(weight * power))


def _correlation(f: np.ndarray, g: np.ndarray, weight: np.ndarray, grid: Grid) -> np.ndarray:
    """⟨f, g(· + y)⟩_{H¹} for every cell shift y at once."""
    spectrum = weight * np.conj(fft(f)) * fft(g)
    return grid.cell_volume * scipy.fft.ifftn(spectrum, norm="forward")


def _objective(theta: np.ndarray, A: complex, B: complex) -> np.ndarray:
    """−Re(e^{iθ}A + e^{2iθ}B)."""
    return -np.real(np.exp(1j * theta) * A + np.exp(2j * theta) * B)


def _best_phase(A: complex, B: complex) -> float:
    thetas = 2.0 * math.pi * np.arange(THETA_SAMPLES) / THETA_SAMPLES
    values = _objective(thetas, A, B)
    i = int(np.argmin(values))

    # Parabolic refinement through the neighbours
    step = thetas[1] - thetas[0]
    left, middle, right = values[i - 1], values[i], values[(i + 1) % THETA_SAMPLES]
    curvature = left - 2.0 * middle + right
    theta = float(thetas[i])
    if curvature > 0:
        theta += 0.5 * step * (left - right) / curvature

    # Newton polish on the closed form
    for _ in range(NEWTON_POLISH_STEPS):
        rotation_a = np.exp(1j * theta) * A
        rotation_b = np.exp(2j * theta) * B
        first = float(np.imag(rotation_a) + 2.0 * np.imag(rotation_b))
        second = float(np.real(rotation_a) + 4.0 * np.real(rotation_b))
        if second <= 0:
            break
        theta -= first / second

    theta = theta % (2.0 * math.pi)
    if _objective(np.array([theta]), A, B)[0] > values[i]:
        theta = float(thetas[i])

    return theta


def orbit_distance_with_argmin(
    state: FieldPair, groundstate: FieldPair, grid: Grid
) -> Tuple[float, float, Tuple[int, ...]]:
    """
    Get the H¹ distance of a state to the orbit of a pair, with the minimizer.

    Parameters
    ----------
    state : FieldPair
        The state (u, v).
    groundstate : FieldPair
        The pair (P, Q).
    grid : Grid
        The common grid.

    Returns
    -------
    Tuple[float, float, Tuple[int, ...]]
        The distance, the phase θ and the shift y in cells.

    Raises
    ------
    ShapeMismatchError
        If the states do not live on the grid.
    """
    state.check_grid(grid)
    groundstate.check_grid(grid)

    weight = _h1_weight(grid)
    A = _correlation(state.u, groundstate.u, weight, grid)
    B = _correlation(state.v, groundstate.v, weight, grid)

    candidate = np.unravel_index(int(np.argmax(np.abs(A) + np.abs(B))), grid.shape)

    best: Tuple[float, float, Tuple[int, ...]] = (math.inf, 0.0, tuple(candidate))
    neighbourhood: List[Tuple[int, ...]] = list(itertools.product((-1, 0, 1), repeat=grid.n))
    for offset in neighbourhood:
        index = tuple((c + o) % p for c, o, p in zip(candidate, offset, grid.points))
        theta = _best_phase(complex(A[index]), complex(B[index]))
        value = float(_objective(np.array([theta]), complex(A[index]), complex(B[index]))[0])
        if value < best[0]:
            best = (value, theta, index)

    _, theta, index = best
    # Shifts are reported in the centered range [−N/2, N/2)
    shift = tuple(int(m) if m < p // 2 else int(m) - p for m, p in zip(index, grid.points))

    # Evaluate directly; the closed form cancels catastrophically near zero
    difference = apply_orbit(groundstate, theta, shift)
    residual = FieldPair(state.u - difference.u, state.v - difference.v)
    return math.sqrt(h1_norm_squared(residual, grid)), theta, shift


def orbit_distance(state: FieldPair, groundstate: FieldPair, grid: Grid) -> float:
    """
    Get inf over θ and cell shifts y of ‖(u, v) − f(θ, y)[P, Q]‖_{H¹ × H¹}.

    Parameters
    ----------
    state : FieldPair
        The state (u, v).
    groundstate : FieldPair
        The pair (P, Q).
    grid : Grid
        The common grid.

    Returns
    -------
    float
        The distance.
    """
    distance, _, _ = orbit_distance_with_argmin(state, groundstate, grid)
    return distance
