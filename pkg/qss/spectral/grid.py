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
# Grid

This module provides the periodic computational box.

The box is centered at the origin: on axis j the samples are x_j = −L_j/2 + m h_j for
m = 0, ..., N_j − 1 with spacing h_j = L_j / N_j. The last axis plays the role of the
distinguished direction x_{d+1}; the first d axes form the transverse coordinates x_⊥.

## Classes
    - Grid: The periodic box with coordinates and wavenumber tables.

## Functions
    - make_grid: Validate the inputs and build a grid.
    - laplacian_symbol: The multiplier |k|²_γ of −Δ_γ.
"""

from typing import List, Sequence, Tuple

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft

from qss.constants import MAX_DIMENSION, MIN_DIMENSION, MIN_POINTS
from qss.exceptions import GridError, ParameterError


@dataclass(frozen=True, eq=True)
class Grid:
    """
    The periodic box in n = d + 1 dimensions.

    Coordinates and wavenumbers are computed lazily and cached. Wavenumbers are stored in
    transform order (zero mode first), as returned by `scipy.fft.fftfreq`.

    Properties
    ----------
    points : Tuple[int, ...]
        Number of samples N_j per axis.
    lengths : Tuple[float, ...]
        Box length L_j per axis.
    """

    points: Tuple[int, ...]
    lengths: Tuple[float, ...]

    @property
    def n(self) -> int:
        """Spatial dimension n = d + 1."""
        return len(self.points)

    @property
    def d(self) -> int:
        """Number of transverse dimensions."""
        return self.n - 1

    @property
    def shape(self) -> Tuple[int, ...]:
        """Array shape of fields living on the grid."""
        return tuple(self.points)

    @property
    def size(self) -> int:
        """Total number of samples."""
        return int(np.prod(self.points))

    @cached_property
    def spacing(self) -> np.ndarray:
        """Spacing h_j = L_j / N_j per axis."""
        return np.asarray(self.lengths, dtype=float) / np.asarray(self.points, dtype=float)

    @property
    def volume(self) -> float:
        """Box volume."""
        return float(np.prod(self.lengths))

    @property
    def cell_volume(self) -> float:
        """Weight of the rectangle rule."""
        return float(np.prod(self.spacing))

    @cached_property
    def axes(self) -> Tuple[np.ndarray, ...]:
        """Centered one-dimensional coordinate samples per axis."""
        return tuple(
            -0.5 * length + h * np.arange(points, dtype=float)
            for points, length, h in zip(self.points, self.lengths, self.spacing)
        )

    @cached_property
    def wavenumbers(self) -> Tuple[np.ndarray, ...]:
        """One-dimensional wavenumbers 2πm/L_j per axis in transform order."""
        return tuple(
            2.0 * np.pi * scipy.fft.fftfreq(points, d=h)
            for points, h in zip(self.points, self.spacing)
        )

    @cached_property
    def mode_indices(self) -> Tuple[np.ndarray, ...]:
        """Integer mode numbers m per axis in transform order."""
        return tuple(
            np.rint(scipy.fft.fftfreq(points) * points).astype(int) for points in self.points
        )

    def _broadcast(self, axis: int, values: np.ndarray) -> np.ndarray:
        shape = [1] * self.n
        shape[axis] = self.points[axis]
        return values.reshape(shape)

    def coordinate(self, axis: int) -> np.ndarray:
        """
        Get the coordinate of an axis, shaped for broadcasting against fields.

        Parameters
        ----------
        axis : int
            The axis.

        Returns
        -------
        np.ndarray
            Array with length N_axis along `axis` and length one elsewhere.
        """
        return self._broadcast(axis, self.axes[axis])

    def wavenumber(self, axis: int) -> np.ndarray:
        """
        Get the wavenumbers of an axis, shaped for broadcasting against spectra.

        Parameters
        ----------
        axis : int
            The axis.

        Returns
        -------
        np.ndarray
            Array with length N_axis along `axis` and length one elsewhere.
        """
        return self._broadcast(axis, self.wavenumbers[axis])

    def derivative_wavenumber(self, axis: int) -> np.ndarray:
        """
        Get the wavenumbers used for first derivatives.

        The Nyquist mode is set to zero so that derivatives of real fields stay real.

        Parameters
        ----------
        axis : int
            The axis.

        Returns
        -------
        np.ndarray
            Broadcastable wavenumbers with the Nyquist entry removed.
        """
        k = self.wavenumbers[axis].copy()
        k[self.points[axis] // 2] = 0.0
        return self._broadcast(axis, k)

    @cached_property
    def radius_squared(self) -> np.ndarray:
        """|x|² over the grid."""
        return sum(self.coordinate(j) ** 2 for j in range(self.n)) * np.ones(self.shape)

    @cached_property
    def transverse_radius_squared(self) -> np.ndarray:
        """|x_⊥|² over the grid (first d axes)."""
        return sum(self.coordinate(j) ** 2 for j in range(self.d)) * np.ones(self.shape)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """Boolean mask of the modes kept by the 2/3 truncation rule."""
        mask = np.ones(self.shape, dtype=bool)
        for j in range(self.n):
            keep = np.abs(self.mode_indices[j]) < self.points[j] / 3.0
            mask = mask & self._broadcast(j, keep)

        return mask

    def to_json(self) -> dict:
        """
        Convert the grid to a JSON friendly dictionary.

        Returns
        -------
        dict
            The keys "n", "points" and "lengths".
        """
        return {"n": self.n, "points": list(self.points), "lengths": list(self.lengths)}


def make_grid(n: int, points: Sequence[int], lengths: Sequence[float]) -> Grid:
    """
    Validate the inputs and build a grid.

    Parameters
    ----------
    n : int
        The spatial dimension n = d + 1, between 2 and 5.
    points : Sequence[int]
        Number of samples per axis. Each must be even and at least 8.
    lengths : Sequence[float]
        Box lengths per axis. Each must be positive.

    Returns
    -------
    Grid
        The grid.

    Raises
    ------
    GridError
        If any of the invariants is violated.
    """
    if not MIN_DIMENSION <= n <= MAX_DIMENSION:
        raise GridError(
            f"Spatial dimension n={n} is out of range [{MIN_DIMENSION}, {MAX_DIMENSION}]."
        )

    points_list: List[int] = [int(p) for p in points]
    lengths_list: List[float] = [float(length) for length in lengths]

    if len(points_list) != n or len(lengths_list) != n:
        raise GridError(
            f"Expected {n} entries for points and lengths, got {len(points_list)} and "
            f"{len(lengths_list)}."
        )

    for p, raw in zip(points_list, points):
        if p != raw or p % 2 != 0 or p < MIN_POINTS:
            raise GridError(f"Points per axis must be even integers >= {MIN_POINTS}, got {raw}.")

    for length in lengths_list:
        if not np.isfinite(length) or length <= 0:
            raise GridError(f"Box lengths must be positive, got {length}.")

    return Grid(points=tuple(points_list), lengths=tuple(lengths_list))


def laplacian_symbol(grid: Grid, gamma: float) -> np.ndarray:
    """
    Get the multiplier |k|²_γ = k_1² + ... + k_d² + γ k_{d+1}² of −Δ_γ.

    Parameters
    ----------
    grid : Grid
        The grid.
    gamma : float
        The anisotropy weight of the last axis.

    Returns
    -------
    np.ndarray
        Nonnegative array over the spectral indices (transform order), zero only at k = 0.

    Raises
    ------
    ParameterError
        If gamma is not positive.
    """
    if not gamma > 0:
        raise ParameterError(f"The anisotropy weight must be positive, got {gamma}.")

    symbol = np.zeros(grid.shape)
    for j in range(grid.d):
        symbol = symbol + grid.wavenumber(j) ** 2

    return symbol + gamma * grid.wavenumber(grid.n - 1) ** 2
