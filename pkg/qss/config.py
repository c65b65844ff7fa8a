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
# Config

This module defines the run configuration and its TOML representation.

A configuration file has the tables [grid], [physics], [integrator], [groundstate], [initial],
[scenario] and [run]. Every table is optional and falls back to the defaults of the
corresponding dataclass. Unknown keys are rejected and every table is re-validated by
constructing the domain object it describes.

## Classes
    - GridConfig: The [grid] table.
    - RunSection: The [run] table.
    - RunConfig: The whole configuration.

## Functions
    - parse_config: Read a configuration file.
    - build_initial_state: Build the initial state described by [initial].
"""

from typing import Any, Dict, List, Optional, Tuple, Union

import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from qss.evaluators.petviashvili import PetviashviliConfig, petviashvili_solve
from qss.exceptions import (
    ConfigError,
    GridError,
    ParameterError,
    ShapeMismatchError,
    SnapshotFormatError,
)
from qss.runs.integrator import IntegratorConfig
from qss.spectral.fields import FieldPair, PhysicsParams
from qss.spectral.grid import Grid, make_grid
from qss.spectral.presets import preset_from_dict
from qss.utils.files import make_dirs
from qss.utils.logs import get_logger

logger = get_logger(__name__)

SECTIONS = ("grid", "physics", "integrator", "groundstate", "initial", "scenario", "run")
GROUND_STATE_KIND = "ground_state"


@dataclass
class GridConfig:
    """
    The [grid] table.

    Properties
    ----------
    n : int
        The spatial dimension.
    points : List[int]
        Points per axis.
    lengths : List[float]
        Box lengths per axis.
    """

    n: int = 2
    points: List[int] = field(default_factory=lambda: [64, 64])
    lengths: List[float] = field(default_factory=lambda: [20.0, 20.0])

    def __post_init__(self) -> None:  # noqa: D105
        self.to_grid()

    def to_grid(self) -> Grid:
        """Build the grid."""
        return make_grid(self.n, self.points, self.lengths)


@dataclass
class RunSection:
    """
    The [run] table.

    Properties
    ----------
    seed : int
        Seed of the randomized scenarios.
    name : str
        A free label stored with the outputs.
    """

    seed: int = 0
    name: str = "qss"


def _build(cls: Any, section: str, data: Dict[str, Any]) -> Any:
    if not isinstance(data, dict):
        raise ConfigError(f"[{section}] must be a table.")

    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"Unknown keys {sorted(unknown)} in [{section}].")

    try:
        return cls(**data)
    except (ParameterError, GridError, TypeError, ValueError) as e:
        raise ConfigError(f"Invalid [{section}]: {e}") from e


@dataclass
class RunConfig:
    """
    The whole run configuration.

    Properties
    ----------
    grid : GridConfig
        The grid.
    physics : PhysicsParams
        The coefficients.
    integrator : IntegratorConfig
        The time stepping.
    groundstate : PetviashviliConfig
        The ground-state iteration.
    initial : Dict[str, Any]
        The initial-data preset, with an optional "scale".
    scenario : Dict[str, Any]
        Scenario-specific parameters, checked by the scenario itself.
    run : RunSection
        Seed and label.
    """

    grid: GridConfig = field(default_factory=GridConfig)
    physics: PhysicsParams = field(default_factory=PhysicsParams)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    groundstate: PetviashviliConfig = field(default_factory=PetviashviliConfig)
    initial: Dict[str, Any] = field(default_factory=lambda: {"kind": "gaussian"})
    scenario: Dict[str, Any] = field(default_factory=dict)
    run: RunSection = field(default_factory=RunSection)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """
        Build and validate a configuration from its table representation.

        Parameters
        ----------
        data : Dict[str, Any]
            The parsed TOML document.

        Returns
        -------
        RunConfig
            The configuration.

        Raises
        ------
        ConfigError
            If a table or key is unknown or a value is invalid.
        """
        unknown = set(data) - set(SECTIONS)
        if unknown:
            raise ConfigError(f"Unknown tables {sorted(unknown)}.")

        config = cls(
            grid=_build(GridConfig, "grid", data.get("grid", {})),
            physics=_build(PhysicsParams, "physics", data.get("physics", {})),
            integrator=_build(IntegratorConfig, "integrator", data.get("integrator", {})),
            groundstate=_build(PetviashviliConfig, "groundstate", data.get("groundstate", {})),
            initial=dict(data.get("initial", {"kind": "gaussian"})),
            scenario=dict(data.get("scenario", {})),
            run=_build(RunSection, "run", data.get("run", {})),
        )
        config.validate_initial()
        return config

    def validate_initial(self) -> None:
        """
        Check the [initial] table without sampling it.

        Raises
        ------
        ConfigError
            If the preset is unknown or malformed.
        """
        initial = dict(self.initial)
        kind = initial.get("kind", "gaussian")
        if kind == GROUND_STATE_KIND:
            unknown = set(initial) - {"kind", "scale"}
            if unknown:
                raise ConfigError(f"Unknown keys {sorted(unknown)} in [initial].")
            return

        if kind != "ground_state_file":
            initial.pop("scale", None)
        try:
            preset_from_dict(initial)
        except ParameterError as e:
            raise ConfigError(f"Invalid [initial]: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        """
        Get the table representation with every default filled in.

        Returns
        -------
        Dict[str, Any]
            One dictionary per table.
        """
        return _drop_none(
            {
                "grid": asdict(self.grid),
                "physics": self.physics.to_json(),
                "integrator": asdict(self.integrator),
                "groundstate": asdict(self.groundstate),
                "initial": dict(self.initial),
                "scenario": dict(self.scenario),
                "run": asdict(self.run),
            }
        )

    def dump(self, filename: Union[str, Path]) -> Path:
        """
        Write the resolved configuration as TOML.

        Parameters
        ----------
        filename : Union[str, Path]
            The target file.

        Returns
        -------
        Path
            The written file.
        """
        filename = Path(filename)
        make_dirs(filename)
        with filename.open("wb") as f:
            tomli_w.dump(self.to_dict(), f)
        return filename


def _drop_none(data: Any) -> Any:
    # TOML has no null.
    if isinstance(data, dict):
        return {k: _drop_none(v) for k, v in data.items() if v is not None}
    if isinstance(data, (list, tuple)):
        return [_drop_none(v) for v in data]
    return data


def parse_config(filename: Optional[Union[str, Path]] = None) -> RunConfig:
    """
    Parse the configuration given the filename.

    Parameters
    ----------
    filename : Optional[Union[str, Path]], optional
        A TOML file.
        By default None (the default configuration is used).

    Returns
    -------
    RunConfig
        The validated configuration.

    Raises
    ------
    ConfigError
        If the file cannot be read or parsed, or the content is invalid.
    """
    if filename is None:
        return RunConfig()

    path = Path(filename)
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except OSError as e:
        raise ConfigError(f"Could not read config {path}: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"Could not parse config {path}: {e}") from e

    logger.debug(f"Loaded config {path}.")
    return RunConfig.from_dict(data)


def build_initial_state(config: RunConfig) -> Tuple[FieldPair, Grid]:
    """
    Build the initial state described by the [initial] table.

    The kind "ground_state" solves for the ground state of [physics] with [groundstate] first.
    Every kind accepts a "scale" factor applied to both components.

    Parameters
    ----------
    config : RunConfig
        The configuration.

    Returns
    -------
    Tuple[FieldPair, Grid]
        The initial state and the grid.

    Raises
    ------
    ConfigError
        If the preset cannot be sampled on the grid.
    NotConvergedError
        If the ground state requested as initial data does not converge.
    """
    grid = config.grid.to_grid()
    initial = dict(config.initial)
    kind = initial.get("kind", "gaussian")

    if kind == GROUND_STATE_KIND:
        scale = float(initial.get("scale", 1.0))
        result = petviashvili_solve(grid, config.physics, config.groundstate)
        return result.fields.scaled(scale), grid

    scale = 1.0 if kind == "ground_state_file" else float(initial.pop("scale", 1.0))
    try:
        preset = preset_from_dict(initial)
        fields_ = preset.sample(grid)
    except (OSError, ParameterError, ShapeMismatchError, SnapshotFormatError) as e:
        raise ConfigError(f"Invalid [initial]: {e}") from e

    return fields_.scaled(scale), grid
