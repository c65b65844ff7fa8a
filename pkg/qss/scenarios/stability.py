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
# Stability

This module provides the scenario that perturbs a ground state and follows the distance of the
perturbed flow to the ground-state orbit.

## Classes
    - StabilityScenario: Random H¹ perturbations of a ground state.

## Functions
    - random_perturbation: A random smooth perturbation of prescribed relative H¹ size.
"""

from typing import Any, Dict, List

import dataclasses
from pathlib import Path

import numpy as np

from qss.config import RunConfig
from qss.constants import TRIALS_FILENAME
from qss.evaluators.gagliardo_nirenberg import random_gn_pairs
from qss.evaluators.orbit import h1_norm_squared, orbit_distance
from qss.exceptions import ConfigError
from qss.runs.integrator import evolve
from qss.runs.status import RunStatus
from qss.scenarios.scenario import Scenario, Verdict
from qss.spectral.fields import FieldPair
from qss.spectral.grid import Grid
from qss.utils.files import write_jsonlines
from qss.utils.logs import get_logger

logger = get_logger(__name__)


def random_perturbation(
    fields: FieldPair, grid: Grid, rng: np.random.Generator, relative_size: float
) -> FieldPair:
    """
    Draw a smooth complex perturbation η with ‖η‖_{H¹} = relative_size·‖(P, Q)‖_{H¹}.

    Parameters
    ----------
    fields : FieldPair
        The unperturbed pair.
    grid : Grid
        The grid.
    rng : np.random.Generator
        The random generator.
    relative_size : float
        The relative H¹ size.

    Returns
    -------
    FieldPair
        The perturbation η.
    """
    bumps = random_gn_pairs(grid, rng, 1)[0]
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=2))
    eta = FieldPair(phases[0] * bumps.u, phases[1] * bumps.v)
    factor = relative_size * np.sqrt(h1_norm_squared(fields, grid) / h1_norm_squared(eta, grid))
    return eta.scaled(factor)


class StabilityScenario(Scenario):
    """
    Evolve random perturbations of a ground state and check that they stay close to its orbit.

    Every trial passes if the orbit distance stays below `growth_factor` times its initial
    value at every check time.
    """

    id = "stability"
    name = "Stability"
    description = "Perturbed ground states stay close to the ground-state orbit."
    defaults: Dict[str, Any] = {
        "trials": 10,
        "perturbation": 0.01,
        "t_end": 50.0,
        "checks": 50,
        "growth_factor": 5.0,
    }

    def run(self, config: RunConfig, out_dir: Path) -> Verdict:  # noqa: D102
        parameters = self.parameters(config)
        trials = int(parameters["trials"])
        checks = int(parameters["checks"])
        t_end = float(parameters["t_end"])
        if trials < 1 or checks < 1 or not t_end > 0:
            raise ConfigError("trials and checks must be positive, and so must t_end.")

        groundstate = self.solve_groundstate(config, out_dir)
        grid, params = groundstate.grid, groundstate.params
        chunk = dataclasses.replace(
            config.integrator, t_end=t_end / checks, record_every=10**9, snapshot_every=0
        )
        rng = np.random.default_rng(config.run.seed)

        rows: List[Dict[str, Any]] = []
        ratios: List[float] = []
        failed_runs = 0
        for trial in range(trials):
            eta = random_perturbation(
                groundstate.fields, grid, rng, float(parameters["perturbation"])
            )
            state = FieldPair(groundstate.fields.u + eta.u, groundstate.fields.v + eta.v)
            initial = orbit_distance(state, groundstate.fields, grid)
            rows.append({"trial": trial, "t": 0.0, "distance": initial})

            worst = initial
            for check in range(1, checks + 1):
                result = evolve(state, grid, params, chunk)
                if result.status != RunStatus.COMPLETED:
                    failed_runs += 1
                    logger.warning(f"Trial {trial} ended with {result.status.to_text()}.")
                    worst = np.inf
                    break

                state = result.final_state
                distance = orbit_distance(state, groundstate.fields, grid)
                rows.append({"trial": trial, "t": check * chunk.t_end, "distance": distance})
                worst = max(worst, distance)

            ratios.append(worst / initial)
            logger.info(f"Trial {trial}: initial distance {initial:.3e}, growth {ratios[-1]:.3f}.")

        write_jsonlines(out_dir / TRIALS_FILENAME, rows)

        growth = float(max(ratios))
        passed = failed_runs == 0 and growth <= float(parameters["growth_factor"])
        return Verdict(
            name=self.id,
            passed=passed,
            measured={"max_growth": growth, "growth_per_trial": ratios, "failed_runs": failed_runs},
            expected={"growth_factor": parameters["growth_factor"], "t_end": t_end},
            reason="orbit distance stayed bounded" if passed else "orbit distance grew too much",
        )
