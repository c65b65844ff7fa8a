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
# Virial

This module provides the scenario that compares the recorded variances with the closed
formulas for their second derivatives.

## Classes
    - VirialScenario: Finite differences of V and V_perp against d²V and d²V_perp.

## Functions
    - second_difference: Centered second difference on a nonuniform time grid.
    - relative_mismatch: max |a − b| / max |b|.
    - virial_checks: Mismatches of a recorded series against the closed formulas.
"""

from typing import Any, Dict, List, Sequence, Tuple

from pathlib import Path

import numpy as np

from qss.config import RunConfig, build_initial_state
from qss.evaluators.observables import ObservableRecord
from qss.exceptions import SeriesTooShortError
from qss.runs.integrator import evolve
from qss.runs.recorder import Recorder
from qss.runs.status import RunStatus
from qss.scenarios.scenario import Scenario, Verdict
from qss.spectral.fields import PhysicsParams
from qss.utils.logs import get_logger

logger = get_logger(__name__)


def second_difference(t: np.ndarray, values: np.ndarray) -> np.ndarray:
    """
    Get the centered second difference at the interior samples of a nonuniform series.

    Parameters
    ----------
    t : np.ndarray
        Strictly increasing sample times.
    values : np.ndarray
        The samples.

    Returns
    -------
    np.ndarray
        The approximations of the second derivative at t[1:-1].

    Raises
    ------
    SeriesTooShortError
        If fewer than three samples are given.
    """
    if len(t) < 3:
        raise SeriesTooShortError(f"Need at least 3 samples, got {len(t)}.")

    h1 = np.diff(t)[:-1]
    h2 = np.diff(t)[1:]
    slope1 = (values[1:-1] - values[:-2]) / h1
    slope2 = (values[2:] - values[1:-1]) / h2
    return 2.0 * (slope2 - slope1) / (h1 + h2)


def relative_mismatch(approximation: np.ndarray, reference: np.ndarray) -> float:
    """Get max |approximation − reference| / max |reference|."""
    scale = float(np.max(np.abs(reference)))
    error = float(np.max(np.abs(approximation - reference)))
    return error / scale if scale > 0 else error


def _columns(series: Sequence[ObservableRecord], name: str) -> Tuple[np.ndarray, np.ndarray]:
    t = np.array([record.t for record in series])
    return t, np.array([getattr(record, name) for record in series])


def virial_checks(
    series: Sequence[ObservableRecord],
    params: PhysicsParams,
    d: int,
    tolerance: float,
    check_transverse: bool = True,
) -> Tuple[Dict[str, float], List[bool]]:
    """
    Compare the recorded variance derivatives with finite differences of the variances.

    Parameters
    ----------
    series : Sequence[ObservableRecord]
        The records of a fixed-step run, one per step.
    params : PhysicsParams
        The coefficients of the run.
    d : int
        The spatial dimension of the grid.
    tolerance : float
        The largest accepted relative mismatch.
    check_transverse : bool, optional
        Whether to compare the transverse variance as well. Default is True.

    Returns
    -------
    Tuple[Dict[str, float], List[bool]]
        The mismatches by name and one flag per compared quantity.
    """
    measured: Dict[str, float] = {}
    checks: List[bool] = []

    t, V = _columns(series, "V")
    _, d2V = _columns(series, "d2V")
    if params.isotropic:
        fd = second_difference(t, V)
        measured["d2V_mismatch"] = relative_mismatch(fd, d2V[1:-1])
        checks.append(measured["d2V_mismatch"] <= tolerance)

        if d == 3 and params.gamma1 == 1.0:
            # d²V = 8E0 − 4β∫|v|² and 4β∫|v|² = 8 E_beta
            E0 = series[0].E
            _, E_beta = _columns(series, "E_beta")
            measured["d2V_reduction_mismatch"] = relative_mismatch(8.0 * E0 - 8.0 * E_beta, d2V)
            checks.append(measured["d2V_reduction_mismatch"] <= tolerance)

    if check_transverse:
        _, V_perp = _columns(series, "V_perp")
        _, d2V_perp = _columns(series, "d2V_perp")
        fd_perp = second_difference(t, V_perp)
        measured["d2V_perp_mismatch"] = relative_mismatch(fd_perp, d2V_perp[1:-1])
        checks.append(measured["d2V_perp_mismatch"] <= tolerance)

    return measured, checks


class VirialScenario(Scenario):
    """
    Evolve the [initial] data and compare finite differences of the variances with the formulas.

    The run should use a fixed step (dt0 = dt_max and a large cfl_const) and record every step.
    """

    id = "virial-verify"
    name = "Virial identities"
    description = "Second differences of V and V_perp match the closed second-derivative formulas."
    defaults: Dict[str, Any] = {"tolerance": 0.01, "check_transverse": True}

    def run(self, config: RunConfig, out_dir: Path) -> Verdict:  # noqa: D102
        parameters = self.parameters(config)
        tolerance = float(parameters["tolerance"])
        fields0, grid = build_initial_state(config)
        params = config.physics

        with Recorder(out_dir, grid, params, config.integrator.snapshot_every) as recorder:
            result = evolve(fields0, grid, params, config.integrator, recorder)

        mismatches, checks = virial_checks(
            result.series, params, grid.d, tolerance, bool(parameters["check_transverse"])
        )
        measured: Dict[str, Any] = {"run": result.to_json(), **mismatches}
        passed = result.status == RunStatus.COMPLETED and all(checks)
        logger.info(f"Virial check passed={passed}: {mismatches}.")
        return Verdict(
            name=self.id,
            passed=passed,
            measured=measured,
            expected={"tolerance": tolerance},
            reason="formulas match the recorded variances" if passed else "virial mismatch",
        )
