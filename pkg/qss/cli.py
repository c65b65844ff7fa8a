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
# CLI

This module defines command-line options using flags.

This includes the entry point for the programs execution. The commands are

    qss groundstate --config <path> --out <dir>
    qss evolve --config <path> --out <dir>
    qss scenario <name> --config <path> --out <dir> [--seed N]

and the exit code is 0 on success, 2 if blow-up was detected, 3 if the time step underflowed,
4 if a criterion failed and 64 if the configuration is invalid.
"""

from typing import List, Optional, Sequence, Union

from pathlib import Path

from absl import app, flags

from qss.config import RunConfig, build_initial_state, parse_config
from qss.constants import (
    EXIT_CONFIG_ERROR,
    EXIT_CRITERION_FAILED,
    RESOLVED_CONFIG_FILENAME,
)
from qss.evaluators.petviashvili import petviashvili_solve, pohozaev_check
from qss.exceptions import (
    ConfigError,
    GridError,
    NotConvergedError,
    ParameterError,
    QSSError,
    ShapeMismatchError,
    UnsupportedCaseError,
)
from qss.runs.integrator import evolve
from qss.runs.recorder import Recorder
from qss.runs.status import RunStatus
from qss.scenarios import get_scenario
from qss.scenarios.scenario import Verdict
from qss.utils.logs import get_logger, set_level

FLAGS = flags.FLAGS
flags.DEFINE_string("config", None, "Filename of a TOML configuration.")
flags.DEFINE_string("out", "output", "Output directory.")
flags.DEFINE_integer("seed", None, "Overrides the seed of the [run] table.")
flags.DEFINE_string("log_level", None, "Level of the package loggers, e.g. DEBUG.")

COMMANDS = ("groundstate", "evolve", "scenario")
CONFIG_ERRORS = (ConfigError, GridError, ParameterError, ShapeMismatchError, UnsupportedCaseError)

logger = get_logger(__name__)


def _relative_drift(initial: float, final: float) -> float:
    change = abs(final - initial)
    return change / abs(initial) if initial != 0 else change


def cmd_groundstate(config: RunConfig, out_dir: Path) -> Verdict:
    """
    Compute the ground state and check its identities.

    Writes `groundstate.qss1`, `diagnostics.json` and `residuals.jsonl`, also if the iteration
    does not converge.

    Parameters
    ----------
    config : RunConfig
        The configuration.
    out_dir : Path
        The output directory.

    Returns
    -------
    Verdict
        Passed iff the residual reached the tolerance and the Pohozaev ratios hold.
    """
    config.physics.require_bound_state()
    grid = config.grid.to_grid()

    try:
        result = petviashvili_solve(grid, config.physics, config.groundstate)
    except NotConvergedError as e:
        if e.result is not None:
            e.result.save(out_dir)
        return Verdict(
            name="groundstate",
            passed=False,
            measured=e.result.to_json() if e.result is not None else {},
            expected={"tol": config.groundstate.tol},
            reason=str(e),
        )

    result.save(out_dir)
    report = pohozaev_check(result, grid.d, tolerance=config.groundstate.pohozaev_tol)
    return Verdict(
        name="groundstate",
        passed=report.passed,
        measured={**result.to_json(), "pohozaev": report.ratios},
        expected={
            "tol": config.groundstate.tol,
            "K/J": report.expected_kj,
            "I/J": report.expected_ij,
            "E/K": report.expected_energy_ratio,
            "pohozaev_tol": report.tolerance,
        },
        reason="converged" if report.passed else "Pohozaev ratios off",
    )


def cmd_evolve(config: RunConfig, out_dir: Path) -> Verdict:
    """
    Evolve the [initial] data and write the series and snapshots.

    Parameters
    ----------
    config : RunConfig
        The configuration.
    out_dir : Path
        The output directory.

    Returns
    -------
    Verdict
        Carries the run status as exit code, with the relative mass and energy drifts.
    """
    fields0, grid = build_initial_state(config)
    with Recorder(out_dir, grid, config.physics, config.integrator.snapshot_every) as recorder:
        result = evolve(fields0, grid, config.physics, config.integrator, recorder)

    first, last = result.series[0], result.series[-1]
    return Verdict(
        name="evolve",
        passed=result.status == RunStatus.COMPLETED,
        measured={
            **result.to_json(),
            "mass_drift": _relative_drift(first.M, last.M),
            "energy_drift": _relative_drift(first.E, last.E),
        },
        expected={"t_end": config.integrator.t_end},
        reason=result.reason,
        exit_code=result.status.exit_code,
    )


def cmd_scenario(name: str, config: RunConfig, out_dir: Path) -> Verdict:
    """
    Run a scenario.

    Parameters
    ----------
    name : str
        The scenario id.
    config : RunConfig
        The configuration.
    out_dir : Path
        The output directory.

    Returns
    -------
    Verdict
        The verdict of the scenario.
    """
    scenario = get_scenario(name)
    logger.info(f"Running scenario {scenario.name!r}.")
    return scenario.run(config, out_dir)


def run_command(
    command: str,
    scenario: Optional[str] = None,
    config_path: Optional[Union[str, Path]] = None,
    out_dir: Union[str, Path] = "output",
    seed: Optional[int] = None,
) -> int:
    """
    Run a command and write its verdict.

    Parameters
    ----------
    command : str
        One of "groundstate", "evolve" and "scenario".
    scenario : Optional[str], optional
        The scenario id, required for "scenario".
        Default is None.
    config_path : Optional[Union[str, Path]], optional
        The TOML configuration.
        Default is None (the defaults).
    out_dir : Union[str, Path], optional
        The output directory.
        Default is "output".
    seed : Optional[int], optional
        Overrides the [run] seed.
        Default is None.

    Returns
    -------
    int
        The exit code.
    """
    out_dir = Path(out_dir)
    name = scenario if command == "scenario" and scenario else command

    try:
        if command not in COMMANDS:
            raise ConfigError(f"Unknown command {command!r}; choose from {list(COMMANDS)}.")
        if command == "scenario" and scenario is None:
            raise ConfigError("The scenario command needs a scenario name.")

        config = parse_config(config_path)
        if seed is not None:
            config.run.seed = int(seed)

        config.dump(out_dir / RESOLVED_CONFIG_FILENAME)

        if command == "groundstate":
            verdict = cmd_groundstate(config, out_dir)
        elif command == "evolve":
            verdict = cmd_evolve(config, out_dir)
        else:
            verdict = cmd_scenario(str(scenario), config, out_dir)
    except CONFIG_ERRORS as e:
        logger.error(f"Invalid configuration: {e}")
        verdict = Verdict(name=name, passed=False, reason=str(e), exit_code=EXIT_CONFIG_ERROR)
    except QSSError as e:
        logger.error(f"{type(e).__name__}: {e}")
        verdict = Verdict(name=name, passed=False, reason=str(e), exit_code=EXIT_CRITERION_FAILED)

    verdict.save(out_dir)

    logger.info(f"{name}: passed={verdict.passed}, exit code {verdict.code}.")
    return verdict.code


def execute(argv: Sequence[str]) -> int:
    """Entry point for the programs execution."""
    set_level(FLAGS.log_level)

    args: List[str] = list(argv[1:])
    if not args:
        logger.error(f"Missing command; choose from {list(COMMANDS)}.")
        return EXIT_CONFIG_ERROR

    command, rest = args[0], args[1:]
    scenario = rest[0] if command == "scenario" and rest else None
    return run_command(command, scenario, FLAGS.config, FLAGS.out, FLAGS.seed)


def main() -> None:
    """Call the execute function."""
    try:
        app.run(execute)
    except KeyboardInterrupt:
        exit("KeyboardInterrupt.")
