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

import tempfile
import unittest
from pathlib import Path

import numpy as np

from qss.evaluators.observables import read_series
from qss.runs import IntegratorConfig, Recorder, RunStatus, evolve
from qss.spectral.fields import PhysicsParams
from qss.spectral.grid import make_grid
from qss.spectral.presets import GaussianPreset
from qss.spectral.snapshot import load_snapshot


class TestRecorder(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name)
        self.grid = make_grid(2, [16, 16], [10.0, 10.0])
        self.params = PhysicsParams(beta=0.1)
        self.fields = GaussianPreset(width=1.2).sample(self.grid)
        self.config = IntegratorConfig(
            dt0=0.01, dt_min=0.01, dt_max=0.01, t_end=0.06, cfl_const=1e6, record_every=3
        )

    def tearDown(self):
        self.tmp.cleanup()

    def test_run_files(self):
        with Recorder(self.path / "run", self.grid, self.params, snapshot_every=2) as recorder:
            result = evolve(self.fields, self.grid, self.params, self.config, recorder)

        names = sorted(p.name for p in (self.path / "run").iterdir())
        self.assertEqual(
            names,
            ["series.csv", "state_2.qss1", "state_4.qss1", "state_6.qss1", "state_final.qss1"],
        )
        self.assertEqual(len(recorder.files), 5)

        records = read_series(self.path / "run" / "series.csv")
        self.assertEqual(len(records), len(result.series))
        self.assertEqual([r.t for r in records], [r.t for r in result.series])

        final, _, params, t = load_snapshot(self.path / "run" / "state_final.qss1")
        assert np.array_equal(final.u, result.final_state.u)
        self.assertEqual(t, result.t_final)
        self.assertEqual(params.beta, 0.1)

        _, _, _, t = load_snapshot(self.path / "run" / "state_4.qss1")
        self.assertAlmostEqual(t, 0.04)

    def test_final_state_only(self):
        recorder = Recorder(self.path / "run", self.grid, self.params)
        result = evolve(self.fields, self.grid, self.params, self.config, recorder)
        self.assertEqual(result.status, RunStatus.COMPLETED)
        self.assertEqual(
            sorted(p.name for p in recorder.path.iterdir()), ["series.csv", "state_final.qss1"]
        )
        self.assertEqual(recorder.records, result.series)

    def test_creates_nested_directory(self):
        target = self.path / "a" / "b"
        recorder = Recorder(target, self.grid, self.params)
        self.assertEqual(recorder.path, target)
        assert target.is_dir()

        # An existing directory is reused
        again = Recorder(str(target), self.grid, self.params)
        self.assertEqual(again.path, target)


class TestRunStatus(unittest.TestCase):
    def test_exit_codes(self):
        self.assertEqual(RunStatus.COMPLETED.exit_code, 0)
        self.assertEqual(RunStatus.BLOWUP_DETECTED.exit_code, 2)
        self.assertEqual(RunStatus.DT_UNDERFLOW.exit_code, 3)

    def test_to_text(self):
        self.assertEqual(RunStatus.BLOWUP_DETECTED.to_text(), "blowup_detected")
        self.assertEqual(RunStatus.DT_UNDERFLOW.to_text(), "dt_underflow")


if __name__ == "__main__":
    unittest.main()
