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
# Constants

This module defines the numerical constants and the exit codes shared by the package.

## Constants
    MIN_DIMENSION: int
    MAX_DIMENSION: int
    MIN_POINTS: int
    FFT_WORKERS: int
    BOUNDARY_MASS_TOLERANCE: float
    BOUNDARY_LAYER_FRACTION: float
    EXIT_SUCCESS: int
    EXIT_BLOWUP: int
    EXIT_DT_UNDERFLOW: int
    EXIT_CRITERION_FAILED: int
    EXIT_CONFIG_ERROR: int
"""

# Spatial dimension n = d + 1 of the computational box
MIN_DIMENSION = 2
MAX_DIMENSION = 5
MIN_POINTS = 8

# Transforms run line-parallel; results do not depend on the thread count
FFT_WORKERS = -1

# Variance-type identities are only trusted if the boundary layer carries less mass than this
BOUNDARY_MASS_TOLERANCE = 1e-8
BOUNDARY_LAYER_FRACTION = 0.05

# Orbit search
THETA_SAMPLES = 720
NEWTON_POLISH_STEPS = 8

# Supercritical data search
SCALE_SEARCH_CAP = 2.0**60
SCALE_SEARCH_RTOL = 1e-3

# Snapshot format
SNAPSHOT_MAGIC = b"QSS1"

# Output files
SERIES_FILENAME = "series.csv"
VERDICT_FILENAME = "verdict.json"
RESOLVED_CONFIG_FILENAME = "resolved_config.toml"
FINAL_STATE_FILENAME = "state_final.qss1"
GROUNDSTATE_FILENAME = "groundstate.qss1"
DIAGNOSTICS_FILENAME = "diagnostics.json"
RESIDUALS_FILENAME = "residuals.jsonl"
TRIALS_FILENAME = "trials.jsonl"

# Exit codes
EXIT_SUCCESS = 0
EXIT_BLOWUP = 2
EXIT_DT_UNDERFLOW = 3
EXIT_CRITERION_FAILED = 4
EXIT_CONFIG_ERROR = 64
