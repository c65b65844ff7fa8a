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

This module provides the scenario that drives data satisfying a blow-up hypothesis into the
blow-up detector.

## Classes
    - BlowupScenario: Evolve scaled ground-state or supercritical Gaussian data.
"""

from typing import Any, Dict, Optional

from pathlib import Path

import numpy as np

from qss.config import RunConfig
from qss.evaluators.blowup import blowup_condition, make_supercritical_data, variance_bound_check
from qss.evaluators.observables import energy, mass
from qss.exceptions import ConfigError
from qss.runs.integrator import evolve
from qss.runs.recorder import Recorder
from qss.runs.status import RunStatus
from qss.scenarios.scenario import Scenario, Verdict
from qss.spectral.presets import GaussianPreset
from qss.utils.logs import get_logger

logger = get_logger(__name__)


class BlowupScenario(Scenario):
    """
    Evolve data that satisfies a blow-up hypothesis and expect the detector to fire.

    With data = "ground_state" the initial state is λ(P, Q) for the ground state of [physics];
    with data = "supercritical" it is λ·λ_c(U, U) for a Gaussian U, where λ_c is the smallest
    amplitude satisfying a hypothesis.
    """

    id = "blowup"
    name = "Blow-up"
    description = "Blow-up hypotheses lead to detected blow-up; the variance stays below its bound."
    defaults: Dict[str, Any] = {
        "data": "ground_state",
        "lambda_scale": 1.2,
        "width": 1.0,
        "check_variance": True,
    }

    def run(self, config: RunConfig, out_dir: Path) -> Verdict:  # noqa: D102
        parameters = self.parameters(config)
        grid = config.grid.to_grid()
        params = config.physics
        scale = float(parameters["lambda_scale"])

        threshold: Optional[float] = None
        if parameters["data"] == "ground_state":
            groundstate = self.solve_groundstate(config, out_dir)
            fields0 = groundstate.fields.scaled(scale)
        elif parameters["data"] == "supercritical":
            U = GaussianPreset(width=float(parameters["width"])).sample(grid).u.real
            threshold, data = make_supercritical_data(U, grid, params)
            fields0 = data.scaled(scale)
        else:
            raise ConfigError(f"Unknown blow-up data {parameters['data']!r}.")

        E0, _ = energy(fields0, grid, params)
        M0 = mass(fields0, grid)
        prediction = blowup_condition(E0, M0, params.beta)
        logger.info(
            f"E0={E0:.6g}, M0={M0:.6g}: predicted={prediction.predicted} "
            f"({prediction.branch.value}, margin {prediction.margin:.6g})."
        )

        recorder = Recorder(out_dir, grid, params, config.integrator.snapshot_every)
        with recorder:
            result = evolve(fields0, grid, params, config.integrator, recorder)

        variance_ok: Optional[bool] = None
        variance_applies = (
            bool(parameters["check_variance"])
            and params.beta >= 0
            and grid.d == 3
            and params.gamma1 == 1.0
            and params.gamma2 == 1.0
            and len(result.series) >= 3
        )
        if variance_applies:
            variance_ok = variance_bound_check(result.series, E0, params.beta)

        gradients = np.array([record.gradient_norm for record in result.series])
        detected = result.status == RunStatus.BLOWUP_DETECTED
        passed = prediction.predicted and detected and variance_ok is not False

        if passed:
            reason = f"blow-up detected at t={result.t_final:.6g}"
        elif not prediction.predicted:
            reason = "no blow-up hypothesis holds for the data"
        elif not detected:
            reason = f"run ended with {result.status.to_text()}: {result.reason}"
        else:
            reason = "variance exceeded its convexity bound"

        return Verdict(
            name=self.id,
            passed=passed,
            measured={
                "E0": E0,
                "M0": M0,
                "prediction": prediction.to_json(),
                "supercritical_lambda": threshold,
                "run": result.to_json(),
                "max_gradient_growth": float(gradients.max() / gradients[0]),
                "variance_bound": variance_ok,
            },
            expected={
                "status": RunStatus.BLOWUP_DETECTED.to_text(),
                "t_end": config.integrator.t_end,
                "blowup_factor": config.integrator.blowup_factor,
            },
            reason=reason,
        )
