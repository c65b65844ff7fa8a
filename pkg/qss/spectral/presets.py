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
# Presets

This module provides the initial data used by the solvers and the scenarios.

Every preset knows how to sample itself on a grid and how to describe itself as a dictionary,
so presets can be stored in and restored from configuration files.

## Classes
    - Preset: Abstract base of all presets.
    - GaussianPreset: Centered Gaussian bumps in both components.
    - PlaneWavePreset: A single Fourier mode in one component.
    - SnapshotPreset: A state read from a QSS1 file.

## Functions
    - sample_preset: Sample a preset on a grid.
    - preset_from_dict: Build a preset from its dictionary description.
"""

from typing import Any, ClassVar, Dict, List, Optional, Sequence, Type

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from qss.exceptions import ParameterError, ShapeMismatchError
from qss.spectral.fields import FieldPair
from qss.spectral.grid import Grid


class Preset(ABC):
    """Abstract base of all presets."""

    kind: ClassVar[str]

    @abstractmethod
    def sample(self, grid: Grid) -> FieldPair:
        """
        Sample the preset on a grid.

        Parameters
        ----------
        grid : Grid
            The grid.

        Returns
        -------
        FieldPair
            The sampled state.
        """
        pass

    def to_json(self) -> Dict[str, Any]:
        """
        Describe the preset as a dictionary.

        Returns
        -------
        Dict[str, Any]
            The "kind" key plus the preset parameters.
        """
        data = {key: value for key, value in asdict(self).items() if value is not None}  # type: ignore
        return {"kind": self.kind, **data}


@dataclass
class GaussianPreset(Preset):
    """
    Gaussian bumps u = a_u exp(−|x − c|²/(2σ²)), v = a_v exp(−|x − c|²/(2σ²)).

    Properties
    ----------
    amplitude_u : float
        a_u.
    amplitude_v : float
        a_v.
    width : float
        σ, positive.
    center : Optional[List[float]]
        The center c. Defaults to the box center.
    """

    kind: ClassVar[str] = "gaussian"

    amplitude_u: float = 1.0
    amplitude_v: float = 1.0
    width: float = 1.0
    center: Optional[List[float]] = None

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise ParameterError(f"Gaussian width must be positive, got {self.width}.")

    def sample(self, grid: Grid) -> FieldPair:  # noqa: D102
        center = self.center if self.center is not None else [0.0] * grid.n
        if len(center) != grid.n:
            raise ShapeMismatchError(f"Center {center} does not match dimension {grid.n}.")

        r2 = sum((grid.coordinate(j) - center[j]) ** 2 for j in range(grid.n))
        profile = np.exp(-r2 / (2.0 * self.width**2)) * np.ones(grid.shape)
        return FieldPair(self.amplitude_u * profile, self.amplitude_v * profile)


@dataclass
class PlaneWavePreset(Preset):
    """
    A single Fourier mode a exp(i Σ_j 2π m_j x_j / L_j) in one component.

    Properties
    ----------
    mode : List[int]
        The integer mode numbers m_j.
    amplitude : float
        The amplitude a.
    component : str
        "u" or "v".
    """

    kind: ClassVar[str] = "plane_wave"

    mode: List[int] = field(default_factory=lambda: [1])
    amplitude: float = 1.0
    component: str = "u"

    def __post_init__(self) -> None:
        if self.component not in ("u", "v"):
            raise ParameterError(f"`component` must be 'u' or 'v', got {self.component!r}.")

    def sample(self, grid: Grid) -> FieldPair:  # noqa: D102
        mode = list(self.mode) + [0] * (grid.n - len(self.mode))
        if len(mode) != grid.n:
            raise ShapeMismatchError(f"Mode {self.mode} does not match dimension {grid.n}.")

        phase = sum(
            2.0 * np.pi * mode[j] / grid.lengths[j] * grid.coordinate(j) for j in range(grid.n)
        )
        wave = self.amplitude * np.exp(1j * phase) * np.ones(grid.shape)
        zero = np.zeros(grid.shape)
        if self.component == "u":
            return FieldPair(wave, zero)
        return FieldPair(zero, wave)


@dataclass
class SnapshotPreset(Preset):
    """
    A state read from a QSS1 file, optionally scaled.

    Properties
    ----------
    path : str
        The snapshot file, typically a stored ground state.
    scale : float
        Factor λ applied to both components.
    """

    kind: ClassVar[str] = "ground_state_file"

    path: str = ""
    scale: float = 1.0

    def sample(self, grid: Grid) -> FieldPair:  # noqa: D102
        from qss.spectral.snapshot import load_snapshot

        fields_, stored_grid, _, _ = load_snapshot(Path(self.path))
        if stored_grid.shape != grid.shape or not np.allclose(
            stored_grid.lengths, grid.lengths, rtol=1e-14, atol=0.0
        ):
            raise ShapeMismatchError(
                f"Snapshot grid {stored_grid.to_json()} differs from {grid.to_json()}."
            )

        return fields_.scaled(self.scale)


PRESETS: Dict[str, Type[Preset]] = {
    GaussianPreset.kind: GaussianPreset,
    PlaneWavePreset.kind: PlaneWavePreset,
    SnapshotPreset.kind: SnapshotPreset,
}


def sample_preset(grid: Grid, preset: Preset) -> FieldPair:
    """
    Sample a preset on a grid.

    Parameters
    ----------
    grid : Grid
        The grid.
    preset : Preset
        The preset.

    Returns
    -------
    FieldPair
        The state, centered in the box.
    """
    return preset.sample(grid)


def preset_from_dict(data: Dict[str, Any], allowed: Optional[Sequence[str]] = None) -> Preset:
    """
    Build a preset from its dictionary description.

    Parameters
    ----------
    data : Dict[str, Any]
        A dictionary with a "kind" key and the preset parameters.
    allowed : Optional[Sequence[str]], optional
        Restrict the accepted kinds.
        Default is None.

    Returns
    -------
    Preset
        The preset.

    Raises
    ------
    ParameterError
        If the kind is unknown or a parameter is unknown or invalid.
    """
    data = dict(data)
    kind = data.pop("kind", GaussianPreset.kind)
    if kind not in PRESETS or (allowed is not None and kind not in allowed):
        raise ParameterError(f"Unknown preset kind {kind!r}.")

    cls = PRESETS[kind]
    names = {f.name for f in fields(cls)}  # type: ignore
    unknown = set(data) - names
    if unknown:
        raise ParameterError(f"Unknown keys {sorted(unknown)} for preset {kind!r}.")

    try:
        return cls(**data)
    except TypeError as e:
        raise ParameterError(f"Invalid parameters for preset {kind!r}: {e}") from e
