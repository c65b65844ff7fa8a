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
# Spectral

This module collects the periodic grid, the state types, the unitary transforms, the QSS1
snapshot format and the initial-data presets.
"""

from qss.spectral.fields import (
    FieldPair,
    PhysicsParams,
    SpectrumPair,
    forward_transform,
    inverse_transform,
)
from qss.spectral.grid import Grid, laplacian_symbol, make_grid
from qss.spectral.presets import (
    GaussianPreset,
    PlaneWavePreset,
    Preset,
    SnapshotPreset,
    preset_from_dict,
    sample_preset,
)
from qss.spectral.snapshot import load_snapshot, save_snapshot

__all__ = [
    "FieldPair",
    "GaussianPreset",
    "Grid",
    "PhysicsParams",
    "PlaneWavePreset",
    "Preset",
    "SnapshotPreset",
    "SpectrumPair",
    "forward_transform",
    "inverse_transform",
    "laplacian_symbol",
    "load_snapshot",
    "make_grid",
    "preset_from_dict",
    "sample_preset",
    "save_snapshot",
]
