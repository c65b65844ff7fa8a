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
# Instability

This module evaluates the energy along the mass-preserving curve through a ground state

    Γ(α, λ) = (γ λ^{n/2} P(λ·), α λ^{n/2} Q(λ·)),   γ²k + α² = k + 1,   k = ∫P² / (4∫Q²),

used to show that ground states are unstable. Everything is expressed through a handful of
integrals of (P, Q), so no field is ever resampled. Only the normalization γ1 = γ2 = 1 is
supported.

With G_P = ∫|∇P|², G_Q = ∫|∇Q|², Q2 = ∫Q² and P2Q = ∫P²Q the energy reads

    E(α, λ) = ½[γ²λ²G_P + α²λ²G_Q + βα²Q2 − γ²αλ^{n/2}P2Q],

which equals E(P, Q) at (1, 1). The quadratic form 2k·Hessian at (1, 1) has, after using the
stationary equations, the coefficients

    a = (k+4)P2Q,   c = n(4−n)/4·k·P2Q,   b = −4kβQ2 + (k−2)(4−n)/2·P2Q,

and determinant Δ = ac − b², negative for n = 4 with β ≠ 0 and for n = 5.

## Classes
    - GammaCurveBase: The integrals the curve energy is built from.
    - InstabilityDirection: A direction of negative curvature.
"""

from typing import NamedTuple, Optional, Tuple

from dataclasses import asdict, dataclass

import numpy as np

from qss.evaluators.observables import interaction, l2_squared
from qss.exceptions import NoUnstableDirectionError, ParameterError, UnsupportedCaseError
from qss.spectral.fields import FieldPair, PhysicsParams, axis_gradients_squared
from qss.spectral.grid import Grid
from qss.utils.logs import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class GammaCurveBase:
    """
    The integrals of a ground state (P, Q) that determine the curve energy.

    Properties
    ----------
    gradP2 : float
        ∫|∇P|².
    gradQ2 : float
        ∫|∇Q|².
    Q2 : float
        ∫Q².
    P2Q : float
        ∫P²Q.
    P2 : float
        ∫P².
    n : int
        The spatial dimension.
    """

    gradP2: float
    gradQ2: float
    Q2: float
    P2Q: float
    P2: float
    n: int

    def __post_init__(self) -> None:  # noqa: D105
        values = (self.gradP2, self.gradQ2, self.Q2, self.P2Q, self.P2)
        if not all(np.isfinite(values)):
            raise ParameterError(f"The base integrals must be finite, got {values}.")
        if not (self.P2 > 0 and self.Q2 > 0):
            raise ParameterError("The base needs ∫P² > 0 and ∫Q² > 0.")

    @property
    def k(self) -> float:
        """The ratio k = ∫P² / (4∫Q²)."""
        return self.P2 / (4.0 * self.Q2)

    @classmethod
    def from_groundstate(
        cls, fields: FieldPair, grid: Grid, params: Optional[PhysicsParams] = None
    ) -> "GammaCurveBase":
        """
        Collect the integrals of a ground state.

        Parameters
        ----------
        fields : FieldPair
            The ground state (P, Q).
        grid : Grid
            The grid.
        params : Optional[PhysicsParams], optional
            The coefficients the ground state was computed with.
            Default is None.

        Returns
        -------
        GammaCurveBase
            The base.

        Raises
        ------
        UnsupportedCaseError
            If γ1 or γ2 differs from one.
        """
        if params is not None and not (params.gamma1 == 1.0 and params.gamma2 == 1.0):
            raise UnsupportedCaseError(
                "The curve energy is only available for gamma1 = gamma2 = 1, got "
                f"gamma1={params.gamma1} and gamma2={params.gamma2}."
            )

        return cls(
            gradP2=float(np.sum(axis_gradients_squared(fields.u, grid))),
            gradQ2=float(np.sum(axis_gradients_squared(fields.v, grid))),
            Q2=l2_squared(fields.v, grid),
            P2Q=interaction(fields, grid),
            P2=l2_squared(fields.u, grid),
            n=grid.n,
        )

    def to_json(self) -> dict:
        """Return the integrals together with k."""
        data = asdict(self)
        data["k"] = self.k
        return data


class InstabilityDirection(NamedTuple):
    """A unit direction (α0, λ0) and d²/dt² E(1 + α0t, 1 + λ0t) at t = 0."""

    alpha0: float
    lambda0: float
    second_derivative: float


def gamma_constraint(k: float, alpha: float) -> float:
    """
    Solve γ²k + α² = k + 1 for γ >= 0.

    Parameters
    ----------
    k : float
        The ratio k, positive.
    alpha : float
        The amplitude α of the second component.

    Returns
    -------
    float
        γ = sqrt((k + 1 − α²) / k).

    Raises
    ------
    ParameterError
        If k <= 0 or α² > k + 1.
    """
    if not k > 0:
        raise ParameterError(f"k must be positive, got {k}.")
    if alpha**2 > k + 1:
        raise ParameterError(f"No real gamma for alpha={alpha} and k={k}: alpha² > k + 1.")

    return float(np.sqrt((k + 1 - alpha**2) / k))


def gamma_curve_energy(base: GammaCurveBase, beta: float, alpha: float, lam: float) -> float:
    """
    Get the energy E(α, λ) along the curve.

    Parameters
    ----------
    base : GammaCurveBase
        The base integrals.
    beta : float
        The coefficient β.
    alpha : float
        The amplitude α.
    lam : float
        The dilation λ, positive.

    Returns
    -------
    float
        The energy. Equals E(P, Q) at (1, 1).

    Raises
    ------
    ParameterError
        If the constraint has no real solution or λ <= 0.
    """
    if not lam > 0:
        raise ParameterError(f"The dilation must be positive, got {lam}.")

    gamma2 = gamma_constraint(base.k, alpha) ** 2
    return 0.5 * (
        gamma2 * lam**2 * base.gradP2
        + alpha**2 * lam**2 * base.gradQ2
        + beta * alpha**2 * base.Q2
        - gamma2 * alpha * lam ** (base.n / 2.0) * base.P2Q
    )


def curve_gradient(base: GammaCurveBase, beta: float) -> Tuple[float, float]:
    """
    Get (∂E/∂α, ∂E/∂λ) at (1, 1).

    The α-derivative vanishes by the stationary equations; the λ-derivative is the Pohozaev
    defect G_P + G_Q − (n/4)P2Q.

    Parameters
    ----------
    base : GammaCurveBase
        The base integrals.
    beta : float
        The coefficient β.

    Returns
    -------
    Tuple[float, float]
        The two first derivatives.
    """
    k, n = base.k, base.n
    d_alpha = -base.gradP2 / k + base.gradQ2 + beta * base.Q2 - 0.5 * (1 - 2 / k) * base.P2Q
    d_lambda = base.gradP2 + base.gradQ2 - n / 4.0 * base.P2Q
    return d_alpha, d_lambda


def curve_hessian(base: GammaCurveBase, beta: float) -> np.ndarray:
    """
    Get the Hessian of E(α, λ) at (1, 1).

    Parameters
    ----------
    base : GammaCurveBase
        The base integrals.
    beta : float
        The coefficient β.

    Returns
    -------
    np.ndarray
        The symmetric 2×2 matrix, ordered (α, λ).
    """
    k, n = base.k, base.n
    gP, gQ, P2Q = base.gradP2, base.gradQ2, base.P2Q

    aa = -gP / k + gQ + beta * base.Q2 + 3.0 * P2Q / k
    ll = gP + gQ - n * (n - 2) / 8.0 * P2Q
    al = -2.0 * gP / k + 2.0 * gQ - (k - 2) * n / (4.0 * k) * P2Q
    return np.array([[aa, al], [al, ll]])


def reduced_form_coefficients(base: GammaCurveBase, beta: float) -> Tuple[float, float, float]:
    """
    Get the coefficients (a, b, c) of the form 2k·Hessian written with the stationary identities.

    The form is a·α0² + 2b·α0λ0 + c·λ0².

    Parameters
    ----------
    base : GammaCurveBase
        The base integrals.
    beta : float
        The coefficient β.

    Returns
    -------
    Tuple[float, float, float]
        (a, b, c).
    """
    k, n, P2Q = base.k, base.n, base.P2Q
    a = (k + 4) * P2Q
    b = -4.0 * k * beta * base.Q2 + (k - 2) * (4 - n) / 2.0 * P2Q
    c = n * (4 - n) / 4.0 * k * P2Q
    return a, b, c


def hessian_determinant(k: float, n: int, beta: float, P2Q: float, Q2: float) -> float:
    """
    Get Δ = (k+4)·n(4−n)/4·k·(P2Q)² − ((k−2)(4−n)/2·P2Q − 4kβQ2)².

    Parameters
    ----------
    k : float
        The ratio k, positive.
    n : int
        The spatial dimension.
    beta : float
        The coefficient β.
    P2Q : float
        ∫P²Q.
    Q2 : float
        ∫Q².

    Returns
    -------
    float
        Δ. At n = 4 this is −16β²k²Q2².

    Raises
    ------
    ParameterError
        If k <= 0.
    """
    if not k > 0:
        raise ParameterError(f"k must be positive, got {k}.")

    diagonal = (k + 4) * n * (4 - n) / 4.0 * k * P2Q**2
    off_diagonal = (k - 2) * (4 - n) / 2.0 * P2Q - 4.0 * k * beta * Q2
    return diagonal - off_diagonal**2


def quadratic_form(base: GammaCurveBase, beta: float, alpha0: float, lambda0: float) -> float:
    """Evaluate the form 2k·Hessian at (α0, λ0)."""
    direction = np.array([alpha0, lambda0])
    return float(2.0 * base.k * direction @ curve_hessian(base, beta) @ direction)


def instability_direction(base: GammaCurveBase, beta: float, n: int) -> InstabilityDirection:
    """
    Find the unit direction of most negative curvature of E(α, λ) at (1, 1).

    Parameters
    ----------
    base : GammaCurveBase
        The base integrals.
    beta : float
        The coefficient β.
    n : int
        The spatial dimension. Must match the base.

    Returns
    -------
    InstabilityDirection
        The eigenvector of the smallest Hessian eigenvalue and that eigenvalue.

    Raises
    ------
    ParameterError
        If n does not match the base.
    NoUnstableDirectionError
        If the Hessian is positive semidefinite.
    """
    if n != base.n:
        raise ParameterError(f"n={n} does not match the base dimension {base.n}.")

    eigenvalues, eigenvectors = np.linalg.eigh(curve_hessian(base, beta))
    smallest = float(eigenvalues[0])
    if smallest >= 0:
        raise NoUnstableDirectionError(
            f"The curve Hessian is positive semidefinite (smallest eigenvalue {smallest:.6g})."
        )

    vector = eigenvectors[:, 0]
    # Sign convention: the first nonzero component is positive.
    pivot = vector[0] if abs(vector[0]) > 1e-14 else vector[1]
    if pivot < 0:
        vector = -vector

    logger.debug(
        f"Unstable direction (alpha0, lambda0)=({vector[0]:.6f}, {vector[1]:.6f}) with "
        f"second derivative {smallest:.6g}."
    )
    return InstabilityDirection(float(vector[0]), float(vector[1]), smallest)


def curve_second_difference(
    base: GammaCurveBase, beta: float, alpha0: float, lambda0: float, h: float = 1e-3
) -> float:
    """
    Approximate d²/dt² E(1 + α0t, 1 + λ0t) at t = 0 with a centered second difference.

    Parameters
    ----------
    base : GammaCurveBase
        The base integrals.
    beta : float
        The coefficient β.
    alpha0 : float
        The α-component of the direction.
    lambda0 : float
        The λ-component of the direction.
    h : float, optional
        The step.
        Default is 1e-3.

    Returns
    -------
    float
        The second difference.
    """
    forward = gamma_curve_energy(base, beta, 1 + alpha0 * h, 1 + lambda0 * h)
    center = gamma_curve_energy(base, beta, 1.0, 1.0)
    backward = gamma_curve_energy(base, beta, 1 - alpha0 * h, 1 - lambda0 * h)
    return (forward - 2.0 * center + backward) / h**2
