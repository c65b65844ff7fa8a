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
# Fields

This module provides the state of the system and the unitary spectral transforms.

Fields are complex arrays over the grid in row-major order (last axis fastest). Spectra use
the unitary ("ortho") normalization so that Σ|û|² = Σ|u|² and

    ∫|u|² = cell_volume · Σ|û|².

## Classes
    - PhysicsParams: The coefficients (γ1, γ2, β, ω).
    - FieldPair: The complex state (u, v).
    - SpectrumPair: The Fourier coefficients (û, v̂).

## Functions
    - forward_transform: FieldPair to SpectrumPair.
    - inverse_transform: SpectrumPair to FieldPair.
    - fft / ifft: Unitary transforms of single arrays.
"""

from typing import Any, Dict, Tuple

import math
import numbers
from dataclasses import dataclass

import numpy as np
import scipy.fft

from qss.constants import FFT_WORKERS
from qss.exceptions import FieldOverflowError, ParameterError, ShapeMismatchError
from qss.spectral.grid import Grid


@dataclass(frozen=True)
class PhysicsParams:
    """
    The coefficients of the system.

    Properties
    ----------
    gamma1 : float
        Anisotropy weight of the u-equation, positive.
    gamma2 : float
        Anisotropy weight of the v-equation, positive.
    beta : float
        Detuning coefficient of the v-equation.
    omega : float
        Frequency of the standing wave (P e^{iωt}, Q e^{2iωt}).
    """

    gamma1: float = 1.0
    gamma2: float = 1.0
    beta: float = 0.0
    omega: float = 1.0

    def __post_init__(self) -> None:
        """
        Validate the elliptic-elliptic case.

        Raises
        ------
        ParameterError
            If a coefficient is not finite or an anisotropy weight is not positive.
        """
        for name in ("gamma1", "gamma2", "beta", "omega"):
            value = getattr(self, name)
            if not isinstance(value, numbers.Real) or not math.isfinite(value):
                raise ParameterError(f"`{name}` must be a finite number, got {value!r}.")
            object.__setattr__(self, name, float(value))

        if self.gamma1 <= 0 or self.gamma2 <= 0:
            raise ParameterError(
                f"gamma1 and gamma2 must be positive, got {self.gamma1} and {self.gamma2}."
            )

    @property
    def isotropic(self) -> bool:
        """Whether γ1 = γ2."""
        return math.isclose(self.gamma1, self.gamma2, rel_tol=1e-14, abs_tol=0.0)

    def require_bound_state(self) -> None:
        """
        Check the existence hypotheses of bound states.

        Raises
        ------
        ParameterError
            If ω <= 0 or 4ω + β <= 0.
        """
        if self.omega <= 0 or 4 * self.omega + self.beta <= 0:
            raise ParameterError(
                "Bound states require omega > 0 and 4 omega + beta > 0, got "
                f"omega={self.omega}, beta={self.beta}."
            )

    def to_json(self) -> Dict[str, float]:
        """
        Convert the parameters to a JSON friendly dictionary.

        Returns
        -------
        Dict[str, float]
            The coefficients.
        """
        return {
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
            "beta": self.beta,
            "omega": self.omega,
        }


def _frozen_complex(array: Any) -> np.ndarray:
    out = np.array(array, dtype=np.complex128, copy=True, order="C")
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class FieldPair:
    """
    The complex state (u, v) on a grid.

    Arrays are copied on construction and marked read-only, so a pair behaves as a value and
    can be shared between threads.

    Properties
    ----------
    u : np.ndarray
        The u-component.
    v : np.ndarray
        The v-component.
    """

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        """
        Freeze the arrays and validate them.

        Raises
        ------
        ShapeMismatchError
            If u and v have different shapes.
        FieldOverflowError
            If an entry is not finite.
        """
        u = _frozen_complex(self.u)
        v = _frozen_complex(self.v)
        if u.shape != v.shape:
            raise ShapeMismatchError(f"u has shape {u.shape} but v has shape {v.shape}.")
        if not (np.isfinite(u).all() and np.isfinite(v).all()):
            raise FieldOverflowError("Fields contain nonfinite values.")

        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def shape(self) -> Tuple[int, ...]:
        """Common shape of both components."""
        return tuple(self.u.shape)

    @classmethod
    def zeros(cls, grid: Grid) -> "FieldPair":
        """
        Create the zero state.

        Parameters
        ----------
        grid : Grid
            The grid.

        Returns
        -------
        FieldPair
            u = v = 0.
        """
        return cls(np.zeros(grid.shape), np.zeros(grid.shape))

    def check_grid(self, grid: Grid) -> None:
        """
        Check that the pair lives on the grid.

        Parameters
        ----------
        grid : Grid
            The grid.

        Raises
        ------
        ShapeMismatchError
            If the shapes differ.
        """
        if self.shape != grid.shape:
            raise ShapeMismatchError(f"Fields of shape {self.shape} do not fit grid {grid.shape}.")

    def scaled(self, factor: complex) -> "FieldPair":
        """
        Multiply both components by the same factor.

        Parameters
        ----------
        factor : complex
            The factor.

        Returns
        -------
        FieldPair
            (factor u, factor v).
        """
        return FieldPair(factor * self.u, factor * self.v)

    def sup_norms(self) -> Tuple[float, float]:
        """
        Get the sup norms.

        Returns
        -------
        Tuple[float, float]
            ‖u‖_∞ and ‖v‖_∞ (zero for empty arrays).
        """
        if self.u.size == 0:
            return 0.0, 0.0
        return float(np.max(np.abs(self.u))), float(np.max(np.abs(self.v)))


@dataclass(frozen=True, eq=False)
class SpectrumPair:
    """
    Fourier coefficients of a FieldPair in unitary normalization and transform order.

    Properties
    ----------
    u_hat : np.ndarray
        Coefficients of u.
    v_hat : np.ndarray
        Coefficients of v.
    """

    u_hat: np.ndarray
    v_hat: np.ndarray

    def __post_init__(self) -> None:
        """
        Freeze the arrays and check their shapes.

        Raises
        ------
        ShapeMismatchError
            If the shapes differ.
        """
        u_hat = _frozen_complex(self.u_hat)
        v_hat = _frozen_complex(self.v_hat)
        if u_hat.shape != v_hat.shape:
            raise ShapeMismatchError(
                f"u_hat has shape {u_hat.shape} but v_hat has shape {v_hat.shape}."
            )

        object.__setattr__(self, "u_hat", u_hat)
        object.__setattr__(self, "v_hat", v_hat)

    @property
    def shape(self) -> Tuple[int, ...]:
        """Common shape of both spectra."""
        return tuple(self.u_hat.shape)


def fft(array: np.ndarray) -> np.ndarray:
    """Unitary forward transform over all axes."""
    return scipy.fft.fftn(array, norm="ortho", workers=FFT_WORKERS)


def ifft(array: np.ndarray) -> np.ndarray:
    """Unitary inverse transform over all axes."""
    return scipy.fft.ifftn(array, norm="ortho", workers=FFT_WORKERS)


def forward_transform(fields: FieldPair) -> SpectrumPair:
    """
    Transform a state to Fourier space.

    Parameters
    ----------
    fields : FieldPair
        The state.

    Returns
    -------
    SpectrumPair
        The unitary Fourier coefficients.
    """
    return SpectrumPair(fft(fields.u), fft(fields.v))


def inverse_transform(spec: SpectrumPair) -> FieldPair:
    """
    Transform Fourier coefficients back to a state.

    Parameters
    ----------
    spec : SpectrumPair
        The coefficients.

    Returns
    -------
    FieldPair
        The state.
    """
    return FieldPair(ifft(spec.u_hat), ifft(spec.v_hat))


def spectral_derivative(field: np.ndarray, grid: Grid, axis: int) -> np.ndarray:
    """
    Differentiate a field along one axis spectrally.

    Parameters
    ----------
    field : np.ndarray
        The field on the grid.
    grid : Grid
        The grid.
    axis : int
        The axis.

    Returns
    -------
    np.ndarray
        ∂_axis field, with the Nyquist mode dropped.
    """
    return ifft(1j * grid.derivative_wavenumber(axis) * fft(field))


def axis_gradients_squared(field: np.ndarray, grid: Grid) -> np.ndarray:
    """
    Get ∫|∂_j f|² for every axis j through Parseval.

    Parameters
    ----------
    field : np.ndarray
        The field on the grid.
    grid : Grid
        The grid.

    Returns
    -------
    np.ndarray
        Array of n nonnegative values. The Nyquist mode is dropped as in
        `spectral_derivative`, so the values equal ∫|spectral_derivative(f, grid, j)|².
    """
    power = np.abs(fft(field)) ** 2
    return np.array(
        [
            grid.cell_volume * float(np.sum(grid.derivative_wavenumber(j) ** 2 * power))
            for j in range(grid.n)
        ]
    )
