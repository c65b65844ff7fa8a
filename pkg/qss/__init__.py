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
# QSS

Pseudospectral simulator and ground-state toolkit for the coupled quadratic Schrödinger system

    i u_t + Δ_{γ1} u + ū v = 0,
    2i v_t + Δ_{γ2} v − β v + ½ u² = 0.

The package is organized like this:
    - spectral: grids, fields, transforms, snapshots and initial data.
    - evaluators: observables, ground states, orbit distances and the analysis checkers.
    - runs: split-step time integration and recording of the results.
    - scenarios: reproducible experiments driven by the command line.
"""

from pathlib import Path

name = "QSS"
package_name = "qss"
author = "The QSS Authors"
author_email = "qss-dev@users.noreply.github.com"
description = "Pseudospectral simulator and ground-state toolkit for quadratic Schrödinger systems."
url = "https://github.com/qss-dev/qss"
project_urls = {
    "Documentation": "https://github.com/qss-dev/qss",
    "Source Code": "https://github.com/qss-dev/qss",
}
version = "0.1.0"

ROOT_DIR = Path(__file__).parent

__all__ = ["version", "ROOT_DIR"]
