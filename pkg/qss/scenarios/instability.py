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

This module provides the scenario that evaluates the curvature of the energy along the
mass-preserving curve through a ground state.

## Classes
    - InstabilityScenario: Determinant, unstable direction and its finite-difference check.
"""

from typing import Any, Dict, Optional

from pathlib import Path

import numpy as np

from qss.config import RunConfig
from qss.evaluators.blowup import lambda_scaling_energy
from qss.evaluators.instability import (
    GammaCurveBase,
    curve_gradient,
    curve_second_difference,
    hessian_determinant,
    instability_direction,
    quadratic_form,
)
from qss.exceptions import NoUnstableDirectionError
from qss.scenarios.scenario import Scenario, Verdict
from qss.utils.logs import get_logger

logger = get_logger(__name__)


class InstabilityScenario(Scenario):
    """
    Check that the ground state has a direction of negative curvature along the curve.

    The determinant computed by the general formula is compared with its n = 4 reduction, the
    analytic second derivative with a centered second difference. With β = 0 and n >= 4 the
    amplitude scaling E(λP, λQ) is also required to be negative for λ > 1.
    """

    id = "instability"
    name = "Instability"
    description = "The energy has a direction of negative curvature at the ground state."
    defaults: Dict[str, Any] = {
        "fd_step": 1e-3,
        "fd_tolerance": 1e-4,
        "determinant_tolerance": 1e-12,
        "lambdas": [1.1, 1.2, 1.5, 2.0],
    }

    def run(self, config: RunConfig, out_dir: Path) -> Verdict:  # noqa: D102
        parameters = self.parameters(config)
        groundstate = self.solve_groundstate(config, out_dir)
        grid, params = groundstate.grid, groundstate.params
        beta, n = params.beta, grid.n

        base = GammaCurveBase.from_groundstate(groundstate.fields, grid, params)
        determinant = hessian_determinant(base.k, n, beta, base.P2Q, base.Q2)
        measured: Dict[str, Any] = {
            "base": base.to_json(),
            "curve_gradient": list(curve_gradient(base, beta)),
            "determinant": determinant,
        }
        checks = []

        if n == 4:
            reduced = -16.0 * beta**2 * base.k**2 * base.Q2**2
            deviation = abs(determinant - reduced) / max(abs(reduced), np.finfo(float).tiny)
            measured["determinant_reduced"] = reduced
            measured["determinant_deviation"] = deviation
            checks.append(beta == 0 or deviation <= float(parameters["determinant_tolerance"]))
        if (n == 4 and beta != 0) or n == 5:
            checks.append(determinant < 0)

        fd_deviation: Optional[float] = None
        try:
            direction = instability_direction(base, beta, n)
        except NoUnstableDirectionError as e:
            # With beta = 0 and n >= 4 the amplitude scaling below carries the instability.
            logger.warning(str(e))
            checks.append(beta == 0 and n >= 4)
        else:
            fd = curve_second_difference(
                base, beta, direction.alpha0, direction.lambda0, float(parameters["fd_step"])
            )
            fd_deviation = abs(fd - direction.second_derivative) / abs(direction.second_derivative)
            measured["direction"] = direction._asdict()
            measured["form_value"] = quadratic_form(base, beta, direction.alpha0, direction.lambda0)
            measured["second_difference"] = fd
            measured["fd_deviation"] = fd_deviation
            checks.append(fd_deviation <= float(parameters["fd_tolerance"]))

        energies = lambda_scaling_energy(groundstate.fields, grid, params, parameters["lambdas"])
        measured["lambda_scaling"] = {
            "lambdas": list(parameters["lambdas"]),
            "energies": energies.tolist(),
        }
        if beta == 0 and n >= 4:
            checks.append(bool(np.all(energies < 0)))

        passed = all(checks)
        return Verdict(
            name=self.id,
            passed=passed,
            measured=measured,
            expected={
                "determinant_sign": "negative" if (n == 4 and beta != 0) or n == 5 else None,
                "fd_tolerance": parameters["fd_tolerance"],
                "determinant_tolerance": parameters["determinant_tolerance"],
            },
            reason="negative curvature found" if passed else "no consistent unstable direction",
        )
