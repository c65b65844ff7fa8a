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
# Runs

This module provides the time integration of the evolution system and its recording.
"""

from qss.runs.integrator import (
    IntegratorConfig,
    RunResult,
    SplitStepIntegrator,
    evolve,
    linear_step,
    nonlinear_step,
    strang_step,
)
from qss.runs.recorder import Recorder
from qss.runs.status import RunStatus

__all__ = [
    "IntegratorConfig",
    "Recorder",
    "RunResult",
    "RunStatus",
    "SplitStepIntegrator",
    "evolve",
    "linear_step",
    "nonlinear_step",
    "strang_step",
]
