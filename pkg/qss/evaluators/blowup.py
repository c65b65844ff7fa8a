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
# Blowup

This module provides the blow-up hypotheses as checkable predicates.

Finite-time blow-up is guaranteed for data of finite variance if

    (a) E(u0, v0) < 0 and β > 0, or
    (b) 8E(u0, v0) < βM(u0, v0) and β <= 0.

For β > 0 the variance satisfies V'' <= 8E0, hence V(t) <= V(0) + V'(0)t + 4E0t² along the
flow; `variance_bound_check` verifies this on a recorded series.

## Classes
    - BlowupBranch: Which hypothesis holds.
    - BlowupVerdict: The outcome of the predicate.

## Functions
    - blowup_condition: Check the hypotheses for given E0, M0 and β.
    - make_supercritical_data: Scale a positive profile until a hypothesis holds.
    - lambda_scaling_energy: E(λP, λQ) along a set of amplitudes.
    - variance_bound_check: Check the convexity bound on a recorded series.
"""

from typing import Dict, Sequence, Tuple

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from qss.constants import SCALE_SEARCH_CAP, SCALE_SEARCH_RTOL
from qss.evaluators.observables import ObservableRecord, kj_functionals, l2_squared
from qss.exceptions import ParameterError, SearchCapExceededError, SeriesTooShortError
from qss.spectral.fields import FieldPair, PhysicsParams, axis_gradients_squared
from qss.spectral.grid import Grid
from qss.utils.logs import get_logger

logger = get_logger(__name__)


class BlowupBranch(Enum):
    """Which blow-up hypothesis holds."""

    NEGATIVE_ENERGY_BETA_POSITIVE = "negative_energy_beta_positive"
    EIGHT_E_BELOW_BETA_M = "eight_E_below_betaM"
    NONE = "none"


@dataclass(frozen=True)
class BlowupVerdict:
    """
    The outcome of the blow-up predicate.

    Properties
    ----------
    predicted : bool
        Whether a hypothesis holds.
    branch : BlowupBranch
        The hypothesis that holds, NONE otherwise.
    margin : float
        −E0 for β > 0, βM0 − 8E0 for β <= 0. Positive iff predicted.
    """

    predicted: bool
    branch: BlowupBranch
    margin: float

    def to_json(self) -> Dict:
        """
        Convert the verdict to a JSON friendly dictionary.

        Returns
        -------
        Dict
            predicted, branch and margin.
        """
        return {"predicted": self.predicted, "branch": self.branch.value, "margin": self.margin}


def blowup_condition(E0: float, M0: float, beta: float) -> BlowupVerdict:
    """
    Check the blow-up hypotheses for data with energy E0 and mass M0.

    Parameters
    ----------
    E0 : float
        The energy of the data.
    M0 : float
        The mass of the data, nonnegative.
    beta : float
        The coefficient β.

    Returns
    -------
    BlowupVerdict
        The verdict.

    Raises
    ------
    ParameterError
        If M0 < 0.
    """
    if M0 < 0:
        raise ParameterError(f"The mass must be nonnegative, got {M0}.")

    if beta > 0:
        margin = -E0
        branch = BlowupBranch.NEGATIVE_ENERGY_BETA_POSITIVE
    else:
        margin = beta * M0 - 8.0 * E0
        branch = BlowupBranch.EIGHT_E_BELOW_BETA_M

    predicted = margin > 0
    return BlowupVerdict(
        predicted=predicted, branch=branch if predicted else BlowupBranch.NONE, margin=margin
    )


def _scaling_polynomial(
    U: np.ndarray, grid: Grid, params: PhysicsParams
) -> Tuple[float, float, float]:
    """Coefficients with E(λU, λU) = λ²e2 − λ³e3 and M(λU, λU) = λ²m2."""
    gradients = axis_gradients_squared(U, grid)
    weighted_u = float(np.sum(gradients[:-1]) + params.gamma1 * gradients[-1])
    weighted_v = float(np.sum(gradients[:-1]) + params.gamma2 * gradients[-1])
    u2 = l2_squared(U, grid)
    e2 = 0.5 * (weighted_u + weighted_v + params.beta * u2)
    e3 = 0.5 * grid.cell_volume * float(np.sum(np.real(U) ** 3))
    return e2, e3, 5.0 * u2


def make_supercritical_data(
    U: np.ndarray, grid: Grid, params: PhysicsParams
) -> Tuple[float, FieldPair]:
    """
    Find the smallest λ such that (λU, λU) satisfies a blow-up hypothesis.

    E(λU, λU) is quadratic minus cubic in λ, so the hypotheses hold from some threshold on.
    The threshold is bracketed by doubling from λ = 1 and refined by bisection to a relative
    width of 1e-3; the upper end of the bracket is returned.

    Parameters
    ----------
    U : np.ndarray
        A positive real profile on the grid.
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.

    Returns
    -------
    Tuple[float, FieldPair]
        λ and the data (λU, λU).

    Raises
    ------
    ParameterError
        If U is not positive.
    SearchCapExceededError
        If no λ below the search cap satisfies a hypothesis.
    """
    U = np.asarray(U)
    if U.shape != grid.shape:
        raise ParameterError(f"Profile of shape {U.shape} does not fit grid {grid.shape}.")
    if np.iscomplexobj(U):
        if np.any(np.imag(U) != 0):
            raise ParameterError("The profile must be real.")
        U = np.real(U)
    if not np.all(U > 0):
        raise ParameterError("The profile must be positive at every grid point.")

    e2, e3, m2 = _scaling_polynomial(U, grid, params)

    def predicted(lam: float) -> bool:
        E = lam**2 * e2 - lam**3 * e3
        return blowup_condition(E, lam**2 * m2, params.beta).predicted

    low, high = 0.0, 1.0
    while not predicted(high):
        low, high = high, 2.0 * high
        if high > SCALE_SEARCH_CAP or not math.isfinite(high):
            raise SearchCapExceededError(
                f"No admissible scaling found up to {SCALE_SEARCH_CAP:g}; the profile is "
                "pathological."
            )

    while high - low > SCALE_SEARCH_RTOL * high:
        middle = 0.5 * (low + high)
        if predicted(middle):
            high = middle
        else:
            low = middle

    logger.debug(f"Supercritical scaling lambda={high:.6g} (bracket [{low:.6g}, {high:.6g}]).")
    return high, FieldPair(high * U, high * U)


def variance_bound_check(
    series: Sequence[ObservableRecord], E0: float, beta: float, slack: float = 0.01
) -> bool:
    """
    Check V(t) <= V(0) + V'(0)t + 4E0t² + slack·V(0) along a recorded series.

    The bound follows from V'' <= 8E0 for β >= 0 (d = 3, γ1 = γ2 = 1).

    Parameters
    ----------
    series : Sequence[ObservableRecord]
        The records, the first being the initial time.
    E0 : float
        The conserved energy.
    beta : float
        The coefficient β, nonnegative.
    slack : float, optional
        Relative slack with respect to V(0).
        Default is 0.01.

    Returns
    -------
    bool
        Whether every record satisfies the bound.

    Raises
    ------
    SeriesTooShortError
        If the series has fewer than three records.
    ParameterError
        If β < 0.
    """
    if len(series) < 3:
        raise SeriesTooShortError(f"Need at least 3 records, got {len(series)}.")
    if beta < 0:
        raise ParameterError(f"The variance bound needs beta >= 0, got {beta}.")

    first = series[0]
    for record in series:
        t = record.t - first.t
        bound = first.V + first.dV * t + 4.0 * E0 * t**2 + slack * first.V
        if record.V > bound:
            logger.debug(f"Variance bound violated at t={record.t}: V={record.V} > {bound}.")
            return False

    return True


def lambda_scaling_energy(
    fields: FieldPair, grid: Grid, params: PhysicsParams, lambdas: Sequence[float]
) -> np.ndarray:
    """
    Get E(λP, λQ) = λ²K/2 − λ³J/2 for every λ.

    For a ground state with β = 0 and d >= 3 the values are negative for every λ > 1.

    Parameters
    ----------
    fields : FieldPair
        The pair (P, Q).
    grid : Grid
        The grid.
    params : PhysicsParams
        The coefficients.
    lambdas : Sequence[float]
        The amplitudes.

    Returns
    -------
    np.ndarray
        The energies, one per amplitude.
    """
    functionals = kj_functionals(fields, grid, params)
    lam = np.asarray(lambdas, dtype=float)
    return 0.5 * lam**2 * functionals.K - 0.5 * lam**3 * functionals.J
