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
# Scenario

This module provides the base class of the scenarios and the verdict they produce.

A scenario wires the evaluators into one experiment. It declares its parameters with their
defaults; the [scenario] table of the configuration overrides them.

## Classes
    - Verdict: The pass/fail outcome with the measured and expected quantities.
    - Scenario: Base class of all scenarios.
"""

from typing import Any, ClassVar, Dict, List, Optional, Union

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path

from qss.config import RunConfig
from qss.constants import EXIT_CRITERION_FAILED, EXIT_SUCCESS, VERDICT_FILENAME
from qss.evaluators.petviashvili import GroundStateResult, petviashvili_solve
from qss.exceptions import ConfigError
from qss.utils.files import write_json
from qss.utils.hash import files_to_hashes
from qss.utils.logs import get_logger

logger = get_logger(__name__)


@dataclass
class Verdict:
    """
    The outcome of a command or scenario.

    Properties
    ----------
    name : str
        The command or scenario that produced it.
    passed : bool
        Whether every criterion holds.
    measured : Dict[str, Any]
        The measured quantities.
    expected : Dict[str, Any]
        The reference values and tolerances.
    reason : str
        A short machine-readable explanation.
    exit_code : Optional[int]
        Overrides the code derived from `passed`.
    files : Dict[str, str]
        md5 digests of the produced files, filled when saved.
    """

    name: str
    passed: bool
    measured: Dict[str, Any] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)
    reason: str = ""
    exit_code: Optional[int] = None
    files: Dict[str, str] = field(default_factory=dict)

    @property
    def code(self) -> int:
        """The process exit code."""
        if self.exit_code is not None:
            return self.exit_code
        return EXIT_SUCCESS if self.passed else EXIT_CRITERION_FAILED

    def to_json(self) -> Dict[str, Any]:
        """
        Convert the verdict to a JSON friendly dictionary.

        Returns
        -------
        Dict[str, Any]
            All fields together with the exit code.
        """
        return {
            "name": self.name,
            "passed": self.passed,
            "exit_code": self.code,
            "reason": self.reason,
            "measured": self.measured,
            "expected": self.expected,
            "files": self.files,
        }

    def save(self, out_dir: Union[str, Path]) -> Path:
        """
        Hash the produced files and write `verdict.json`.

        Parameters
        ----------
        out_dir : Union[str, Path]
            The output directory.

        Returns
        -------
        Path
            The verdict file.
        """
        out_dir = Path(out_dir)
        produced: List[Path] = []
        if out_dir.is_dir():
            produced = [
                f
                for f in sorted(out_dir.rglob("*"))
                if f.suffix in (".csv", ".qss1", ".jsonl") and f.is_file()
            ]
        self.files = files_to_hashes(produced)
        return write_json(out_dir / VERDICT_FILENAME, self.to_json())


class Scenario(ABC):
    """
    Base class of all scenarios.

    Properties
    ----------
    id : str
        The name used on the command line.
    name : str
        A readable name.
    description : str
        What the scenario checks.
    defaults : Dict[str, Any]
        The accepted [scenario] keys and their default values.
    """

    id: ClassVar[str]
    name: ClassVar[str]
    description: ClassVar[str] = ""
    defaults: ClassVar[Dict[str, Any]] = {}

    def parameters(self, config: RunConfig) -> Dict[str, Any]:
        """
        Merge the [scenario] table into the defaults.

        Parameters
        ----------
        config : RunConfig
            The configuration.

        Returns
        -------
        Dict[str, Any]
            The parameters.

        Raises
        ------
        ConfigError
            If the table has keys the scenario does not know.
        """
        unknown = set(config.scenario) - set(self.defaults)
        if unknown:
            raise ConfigError(f"Unknown keys {sorted(unknown)} for scenario {self.id!r}.")

        return {**self.defaults, **config.scenario}

    @staticmethod
    def solve_groundstate(config: RunConfig, out_dir: Optional[Path] = None) -> GroundStateResult:
        """
        Solve for the ground state of the configuration and store it if a directory is given.

        Parameters
        ----------
        config : RunConfig
            The configuration.
        out_dir : Optional[Path], optional
            Where to write the ground state and its diagnostics.
            Default is None.

        Returns
        -------
        GroundStateResult
            The converged result.
        """
        result = petviashvili_solve(config.grid.to_grid(), config.physics, config.groundstate)
        if out_dir is not None:
            result.save(out_dir)
        return result

    @abstractmethod
    def run(self, config: RunConfig, out_dir: Path) -> Verdict:
        """
        Run the experiment.

        Parameters
        ----------
        config : RunConfig
            The configuration.
        out_dir : Path
            The output directory.

        Returns
        -------
        Verdict
            The outcome.
        """
        pass
