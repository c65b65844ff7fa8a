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
# GN Check

This module provides the scenario that checks the sharp Gagliardo-Nirenberg threshold at a
ground state.

## Classes
    - GNCheckScenario: Threshold identity, minimality over random pairs and scale invariance.
"""

from typing import Any, Dict

from pathlib import Path

import numpy as np

from qss.config import RunConfig
from qss.evaluators.gagliardo_nirenberg import cgn_threshold_check, random_gn_pairs
from qss.evaluators.observables import gn_quotient, interaction, mass
from qss.evaluators.rescaling import rescale_to_targets
from qss.scenarios.scenario import Scenario, Verdict
from qss.utils.logs import get_logger

logger = get_logger(__name__)


class GNCheckScenario(Scenario):
    """
    Check M(P0, Q0)·C_GN² = 1 for the critical ground state (d = 3, β = 0).

    Additionally the ground state must have a smaller quotient than `trials` random Gaussian
    pairs, and rescaling it to (J, mass_factor·M) must leave the quotient unchanged.
    """

    id = "gn-check"
    name = "Gagliardo-Nirenberg threshold"
    description = "The critical ground state realizes the sharp Gagliardo-Nirenberg constant."
    defaults: Dict[str, Any] = {
        "tolerance": 0.05,
        "trials": 100,
        "mass_factor": 0.8,
        "rescale_tolerance": 1e-3,
    }

    def run(self, config: RunConfig, out_dir: Path) -> Verdict:  # noqa: D102
        parameters = self.parameters(config)
        groundstate = self.solve_groundstate(config, out_dir)
        grid, params, fields = groundstate.grid, groundstate.params, groundstate.fields

        c_gn, product = cgn_threshold_check(groundstate, d=grid.d)
        quotient = 1.0 / c_gn

        rng = np.random.default_rng(config.run.seed)
        pairs = random_gn_pairs(grid, rng, int(parameters["trials"]))
        random_quotients = np.array([gn_quotient(pair, grid, grid.d, params) for pair in pairs])
        violations = int(np.sum(random_quotients < quotient))

        target = (interaction(fields, grid), float(parameters["mass_factor"]) * mass(fields, grid))
        rescaled = rescale_to_targets(fields, grid, target)
        rescale_deviation = abs(gn_quotient(rescaled, grid, grid.d, params) - quotient) / quotient

        passed = (
            abs(product - 1.0) <= float(parameters["tolerance"])
            and violations == 0
            and rescale_deviation <= float(parameters["rescale_tolerance"])
        )
        return Verdict(
            name=self.id,
            passed=passed,
            measured={
                "C_GN": c_gn,
                "M_product": product,
                "groundstate_quotient": quotient,
                "min_random_quotient": float(random_quotients.min()) if pairs else None,
                "violations": violations,
                "rescale_deviation": rescale_deviation,
            },
            expected={
                "M_product": 1.0,
                "tolerance": parameters["tolerance"],
                "rescale_tolerance": parameters["rescale_tolerance"],
            },
            reason="threshold identity holds" if passed else "threshold identity violated",
        )
