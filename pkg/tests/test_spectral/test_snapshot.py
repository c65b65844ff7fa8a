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

import json
import struct
import tempfile
import unittest
from pathlib import Path

import numpy as np

from qss.exceptions import SnapshotFormatError
from qss.spectral.fields import FieldPair, PhysicsParams
from qss.spectral.grid import make_grid
from qss.spectral.snapshot import HEADER_KEYS, load_snapshot, save_snapshot


class TestSnapshot(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "nested" / "state.qss1"

        self.grid = make_grid(3, [8, 10, 12], [4.0, 5.0, 6.0])
        self.params = PhysicsParams(gamma1=1.0, gamma2=0.5, beta=-0.25, omega=2.0)
        rng = np.random.default_rng(7)
        shape = self.grid.shape
        self.fields = FieldPair(
            rng.normal(size=shape) + 1j * rng.normal(size=shape),
            rng.normal(size=shape) + 1j * rng.normal(size=shape),
        )

    def tearDown(self):
        self.tmp.cleanup()

    def test_round_trip_is_bit_exact(self):
        save_snapshot(self.fields, self.grid, self.params, 0.125, self.path)
        fields, grid, params, t = load_snapshot(self.path)

        assert np.array_equal(fields.u, self.fields.u)
        assert np.array_equal(fields.v, self.fields.v)
        self.assertEqual(grid, self.grid)
        self.assertEqual(params.to_json(), self.params.to_json())
        self.assertEqual(t, 0.125)

    def test_layout(self):
        save_snapshot(self.fields, self.grid, self.params, 1.0, self.path)
        data = self.path.read_bytes()

        assert data[:4] == b"QSS1"
        (length,) = struct.unpack("<I", data[4:8])
        header = json.loads(data[8 : 8 + length].decode("utf-8"))
        self.assertEqual(set(header), set(HEADER_KEYS))
        self.assertEqual(header["points"], [8, 10, 12])
        self.assertEqual(len(data), 8 + length + 2 * 16 * self.grid.size)

    def test_bad_magic(self):
        save_snapshot(self.fields, self.grid, self.params, 0.0, self.path)
        data = bytearray(self.path.read_bytes())
        data[:4] = b"QSS2"
        self.path.write_bytes(bytes(data))

        with self.assertRaises(SnapshotFormatError):
            load_snapshot(self.path)

    def test_truncated_payload(self):
        save_snapshot(self.fields, self.grid, self.params, 0.0, self.path)
        data = self.path.read_bytes()
        self.path.write_bytes(data[:-16])

        with self.assertRaises(SnapshotFormatError):
            load_snapshot(self.path)

        self.path.write_bytes(data[:6])
        with self.assertRaises(SnapshotFormatError):
            load_snapshot(self.path)

    def test_nonfinite_payload(self):
        save_snapshot(self.fields, self.grid, self.params, 0.0, self.path)
        data = self.path.read_bytes()
        self.path.write_bytes(data[:-16] + np.array([np.nan + 0j]).astype("<c16").tobytes())

        with self.assertRaises(SnapshotFormatError):
            load_snapshot(self.path)

    def test_bad_header(self):
        header = b'{"n": 3}'
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_bytes(b"QSS1" + struct.pack("<I", len(header)) + header)

        with self.assertRaises(SnapshotFormatError):
            load_snapshot(self.path)

        self.path.write_bytes(b"QSS1" + struct.pack("<I", 4) + b"\xff\xfe{[")
        with self.assertRaises(SnapshotFormatError):
            load_snapshot(self.path)


if __name__ == "__main__":
    unittest.main()
