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
# Gagliardo-Nirenberg

This module checks the sharp Gagliardo-Nirenberg threshold.

The best constant is C_GN^{-1} = inf {GN(u, v) : J(u, v) > 0} and the infimum is attained at
ground states. In the critical case d = 3 with β = 0 it satisfies 1/C_GN² = M(P0, Q0).

## Functions
    - cgn_threshold_check: Get C_GN and M(P0, Q0)·C_GN² from a ground state.
    - random_gn_pairs: Draw random Gaussian pairs with J > 0.
"""

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from qss.evaluators.observables import gn_quotient, mass
from qss.evaluators.petviashvili import GroundStateResult
from qss.exceptions import ParameterError, UnsupportedCaseError
from qss.spectral.fields import FieldPair, PhysicsParams
from qss.spectral.grid import Grid
from qss.utils.logs import get_logger

logger = get_logger(__name__)


def cgn_threshold_check(
    groundstate: Union[GroundStateResult, FieldPair],
    grid: Optional[Grid] = None,
    d: int = 3,
    params: Optional[PhysicsParams] = None,
) -> Tuple[float, float]:
    """
    Get C_GN = 1 / GN(P0, Q0) and the product M(P0, Q0)·C_GN², which should be one.

    Parameters
    ----------
    groundstate : Union[GroundStateResult, FieldPair]
        A converged result, or a bare pair together with its grid.
    grid : Optional[Grid], optional
        The grid, required for a bare pair.
        Default is None.
    d : int, optional
        The number of transverse dimensions.
        Default is 3.
    params : Optional[PhysicsParams], optional
        The coefficients. Taken from the result when omitted.
        Default is None (γ1 = γ2 = 1, β = 0).

    Returns
    -------
    Tuple[float, float]
        (C_GN, M_product).

    Raises
    ------
    UnsupportedCaseError
        If d != 3, β != 0 or γ1, γ2 differ from one.
    """
    if isinstance(groundstate, GroundStateResult):
        fields, grid = groundstate.fields, groundstate.grid
        params = params if params is not None else groundstate.params
    else:
        fields = groundstate
        if grid is None:
            raise ParameterError("A bare pair needs the grid.")
    if params is None:
        params = PhysicsParams()

    if d != 3 or grid.d != 3:
        raise UnsupportedCaseError(f"The threshold identity needs d = 3, got d={d}.")
    if params.beta != 0:
        raise UnsupportedCaseError(f"The threshold identity needs beta = 0, got {params.beta}.")
    if not params.isotropic or params.gamma1 != 1.0:
        raise UnsupportedCaseError("The threshold identity needs gamma1 = gamma2 = 1.")

    c_gn = 1.0 / gn_quotient(fields, grid, d, params)
    product = mass(fields, grid) * c_gn**2
    logger.info(f"C_GN={c_gn:.10g}, M*C_GN^2={product:.10g}.")
    return c_gn, product


def random_gn_pairs(
    grid: Grid,
    rng: np.random.Generator,
    count: int,
    width_range: Sequence[float] = (0.8, 1.5),
    center_range: float = 1.0,
) -> List[FieldPair]:
    """
    Draw pairs of positive Gaussians with independent amplitudes, widths and centers.

    Both components are positive, hence J > 0.

    Parameters
    ----------
    grid : Grid
        The grid.
    rng : np.random.Generator
        The random generator.
    count : int
        The number of pairs.
    width_range : Sequence[float], optional
        Bounds of the widths.
        Default is (0.8, 1.5).
    center_range : float, optional
        Centers are drawn from [−center_range, center_range] per axis.
        Default is 1.0.

    Returns
    -------
    List[FieldPair]
        The pairs.
    """
    low, high = width_range
    if not 0 < low <= high:
        raise ParameterError(f"Invalid width range {width_range}.")

    def bump(amplitude: float, width: float, center: np.ndarray) -> np.ndarray:
        r2 = sum((grid.coordinate(j) - center[j]) ** 2 for j in range(grid.n))
        return amplitude * np.exp(-r2 / (2.0 * width**2)) * np.ones(grid.shape)

    pairs = []
    for _ in range(count):
        amplitudes = rng.uniform(0.5, 2.0, size=2)
        widths = rng.uniform(low, high, size=2)
        centers = rng.uniform(-center_range, center_range, size=(2, grid.n))
        pairs.append(
            FieldPair(
                bump(amplitudes[0], widths[0], centers[0]),
                bump(amplitudes[1], widths[1], centers[1]),
            )
        )

    return pairs
