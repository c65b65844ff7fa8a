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
# Snapshot

This module persists states in the binary "QSS1" format.

Layout of a file:
    - 4 bytes magic `QSS1`;
    - 4 bytes little-endian unsigned header length;
    - UTF-8 JSON header with the keys n, points, lengths, gamma1, gamma2, beta, omega, t;
    - u, then v, each as interleaved (re, im) IEEE-754 binary64 little-endian values in
      row-major order (last axis fastest).

Floats in the header are written with their shortest round-tripping representation, so a
load after a save is exact on the metadata and bit-exact on the arrays.
"""

from typing import Any, Dict, Tuple, Union

import json
import struct
from pathlib import Path

import numpy as np

from qss.constants import SNAPSHOT_MAGIC
from qss.exceptions import GridError, ParameterError, SnapshotFormatError
from qss.spectral.fields import FieldPair, PhysicsParams
from qss.spectral.grid import Grid, make_grid
from qss.utils.files import make_dirs
from qss.utils.logs import get_logger

logger = get_logger(__name__)

HEADER_KEYS = ("n", "points", "lengths", "gamma1", "gamma2", "beta", "omega", "t")
_LENGTH = struct.Struct("<I")
_DTYPE = np.dtype("<c16")


def save_snapshot(
    fields: FieldPair,
    grid: Grid,
    params: PhysicsParams,
    t: float,
    path: Union[str, Path],
) -> Path:
    """
    Write a state to a QSS1 file.

    Parameters
    ----------
    fields : FieldPair
        The state.
    grid : Grid
        The grid the state lives on.
    params : PhysicsParams
        The coefficients, stored for reproducibility.
    t : float
        The time of the state.
    path : Union[str, Path]
        The target file.

    Returns
    -------
    Path
        The written file.
    """
    fields.check_grid(grid)

    header: Dict[str, Any] = {
        "n": grid.n,
        "points": list(grid.points),
        "lengths": list(grid.lengths),
        **params.to_json(),
        "t": float(t),
    }
    header_bytes = json.dumps(header).encode("utf-8")

    path = Path(path)
    make_dirs(path)
    with path.open("wb") as f:
        f.write(SNAPSHOT_MAGIC)
        f.write(_LENGTH.pack(len(header_bytes)))
        f.write(header_bytes)
        f.write(fields.u.astype(_DTYPE).tobytes(order="C"))
        f.write(fields.v.astype(_DTYPE).tobytes(order="C"))

    logger.debug(f"Saved snapshot at t={t} to {path}.")
    return path


def load_snapshot(path: Union[str, Path]) -> Tuple[FieldPair, Grid, PhysicsParams, float]:
    """
    Read a state from a QSS1 file.

    Parameters
    ----------
    path : Union[str, Path]
        The file.

    Returns
    -------
    Tuple[FieldPair, Grid, PhysicsParams, float]
        The state, its grid, the stored coefficients and the time.

    Raises
    ------
    SnapshotFormatError
        If the magic, the header or the payload size is invalid, or the payload is not finite.
    """
    data = Path(path).read_bytes()
    prefix = len(SNAPSHOT_MAGIC) + _LENGTH.size

    if len(data) < prefix:
        raise SnapshotFormatError(f"{path}: file is truncated ({len(data)} bytes).")
    if data[: len(SNAPSHOT_MAGIC)] != SNAPSHOT_MAGIC:
        raise SnapshotFormatError(f"{path}: bad magic {data[:len(SNAPSHOT_MAGIC)]!r}.")

    (header_length,) = _LENGTH.unpack_from(data, len(SNAPSHOT_MAGIC))
    if len(data) < prefix + header_length:
        raise SnapshotFormatError(
            f"{path}: header of {header_length} bytes exceeds the file size {len(data)}."
        )

    try:
        header = json.loads(data[prefix : prefix + header_length].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise SnapshotFormatError(f"{path}: header is not valid JSON ({e}).") from e

    if not isinstance(header, dict) or set(header) != set(HEADER_KEYS):
        raise SnapshotFormatError(f"{path}: header keys must be {HEADER_KEYS}.")

    try:
        grid = make_grid(header["n"], header["points"], header["lengths"])
        params = PhysicsParams(
            gamma1=header["gamma1"],
            gamma2=header["gamma2"],
            beta=header["beta"],
            omega=header["omega"],
        )
        t = float(header["t"])
    except (GridError, ParameterError, TypeError, ValueError) as e:
        raise SnapshotFormatError(f"{path}: invalid header ({e}).") from e

    payload = data[prefix + header_length :]
    expected = 2 * grid.size * _DTYPE.itemsize
    if len(payload) != expected:
        raise SnapshotFormatError(
            f"{path}: payload has {len(payload)} bytes but header dims {list(grid.points)} "
            f"require {expected}."
        )

    arrays = np.frombuffer(payload, dtype=_DTYPE).astype(np.complex128)
    if not np.all(np.isfinite(arrays)):
        raise SnapshotFormatError(f"{path}: payload contains nonfinite values.")

    u = arrays[: grid.size].reshape(grid.shape)
    v = arrays[grid.size :].reshape(grid.shape)

    return FieldPair(u, v), grid, params, t
