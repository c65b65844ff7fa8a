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
# Scenarios

This module collects the scenarios runnable from the command line.

## Functions
    - get_scenario: Look a scenario up by its id.
"""

from typing import Dict, Type

from qss.exceptions import ConfigError
from qss.scenarios.blowup import BlowupScenario
from qss.scenarios.gn_check import GNCheckScenario
from qss.scenarios.instability import InstabilityScenario
from qss.scenarios.scenario import Scenario, Verdict
from qss.scenarios.stability import StabilityScenario
from qss.scenarios.virial import VirialScenario

SCENARIOS: Dict[str, Type[Scenario]] = {
    scenario.id: scenario
    for scenario in (
        BlowupScenario,
        StabilityScenario,
        InstabilityScenario,
        VirialScenario,
        GNCheckScenario,
    )
}


def get_scenario(name: str) -> Scenario:
    """
    Look a scenario up by its id.

    Parameters
    ----------
    name : str
        The id, e.g. "virial-verify".

    Returns
    -------
    Scenario
        A fresh instance.

    Raises
    ------
    ConfigError
        If no scenario has this id.
    """
    if name not in SCENARIOS:
        raise ConfigError(f"Unknown scenario {name!r}; choose from {sorted(SCENARIOS)}.")

    return SCENARIOS[name]()


__all__ = ["SCENARIOS", "Scenario", "Verdict", "get_scenario"]
