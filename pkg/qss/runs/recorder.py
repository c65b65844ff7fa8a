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
# Recorder

This module provides utilities to record a time integration on disk.

## Classes
    - Recorder: Write the observable series and the snapshots of a run.
"""

from typing import TYPE_CHECKING, List, Optional, Union

from pathlib import Path

from typing_extensions import Self

from qss.constants import FINAL_STATE_FILENAME, SERIES_FILENAME
from qss.evaluators.observables import ObservableRecord, write_series
from qss.spectral.fields import FieldPair, PhysicsParams
from qss.spectral.grid import Grid
from qss.spectral.snapshot import save_snapshot
from qss.utils.logs import get_logger

if TYPE_CHECKING:
    from qss.runs.integrator import RunResult

logger = get_logger(__name__)


class Recorder:
    """
    Write the observable series and the snapshots of a run.

    Properties
    ----------
    path : Path
        The output directory.
    grid : Grid
        The grid of the run.
    params : PhysicsParams
        The coefficients of the run.
    snapshot_every : int
        Write `state_<step>.qss1` every this many steps; 0 writes only the final state.
    records : List[ObservableRecord]
        The records received so far.
    files : List[Path]
        The files written so far.
    """

    def __init__(
        self,
        save_path: Union[str, Path],
        grid: Grid,
        params: PhysicsParams,
        snapshot_every: int = 0,
    ) -> None:
        """
        Prepare the output directory.

        Parameters
        ----------
        save_path : Union[str, Path]
            The output directory, created with its parents if missing.
        grid : Grid
            The grid of the run.
        params : PhysicsParams
            The coefficients of the run.
        snapshot_every : int, optional
            Snapshot stride in steps.
            Default is 0.
        """
        self.path = Path(save_path)
        self.path.mkdir(parents=True, exist_ok=True)
        self.grid = grid
        self.params = params
        self.snapshot_every = int(snapshot_every)
        self.records: List[ObservableRecord] = []
        self.files: List[Path] = []

    def __enter__(self) -> Self:
        return self

    def __exit__(self, type, value, traceback) -> None:  # type: ignore
        pass

    def record(self, record: ObservableRecord) -> None:
        """
        Receive a record.

        Parameters
        ----------
        record : ObservableRecord
            The record.
        """
        self.records.append(record)

    def snapshot(self, step: int, t: float, fields: FieldPair) -> Optional[Path]:
        """
        Write a snapshot if the step is on the stride.

        Parameters
        ----------
        step : int
            The number of completed steps.
        t : float
            The time.
        fields : FieldPair
            The state.

        Returns
        -------
        Optional[Path]
            The written file, if any.
        """
        if self.snapshot_every <= 0 or step % self.snapshot_every != 0:
            return None

        path = save_snapshot(fields, self.grid, self.params, t, self.path / f"state_{step}.qss1")
        self.files.append(path)
        return path

    def finish(self, result: "RunResult", grid: Grid, params: PhysicsParams) -> None:
        """
        Write the series and the final state.

        Parameters
        ----------
        result : RunResult
            The outcome of the run.
        grid : Grid
            The grid.
        params : PhysicsParams
            The coefficients.
        """
        series = write_series(self.records, self.path / SERIES_FILENAME)
        final = save_snapshot(
            result.final_state, grid, params, result.t_final, self.path / FINAL_STATE_FILENAME
        )
        self.files.extend([series, final])
        logger.info(f"Wrote {len(self.records)} records and the final state to {self.path}.")
