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
import tempfile
import unittest
from pathlib import Path

from qss.cli import run_command
from qss.config import parse_config
from qss.constants import (
    EXIT_CONFIG_ERROR,
    EXIT_CRITERION_FAILED,
    EXIT_SUCCESS,
    FINAL_STATE_FILENAME,
    GROUNDSTATE_FILENAME,
    RESOLVED_CONFIG_FILENAME,
    SERIES_FILENAME,
    VERDICT_FILENAME,
)

SMALL_GRID = """
[grid]
n = 2
points = [16, 16]
lengths = [10.0, 10.0]
"""


class TestRunCommand(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name)
        self.out = self.path / "out"

    def tearDown(self):
        self.tmp.cleanup()

    def write_config(self, text: str, grid: str = SMALL_GRID) -> Path:
        filename = self.path / "config.toml"
        filename.write_text(grid + text, encoding="utf-8")
        return filename

    def read_verdict(self):
        with (self.out / VERDICT_FILENAME).open("r") as f:
            return json.load(f)

    def test_evolve_zero_data(self):
        config = self.write_config(
            """
[integrator]
dt0 = 0.01
dt_min = 0.01
dt_max = 0.01
t_end = 0.1
cfl_const = 1e6
record_every = 2

[initial]
kind = "gaussian"
amplitude_u = 0.0
amplitude_v = 0.0
"""
        )
        code = run_command("evolve", config_path=config, out_dir=self.out)
        self.assertEqual(code, EXIT_SUCCESS)

        for filename in (
            SERIES_FILENAME,
            FINAL_STATE_FILENAME,
            VERDICT_FILENAME,
            RESOLVED_CONFIG_FILENAME,
        ):
            assert (self.out / filename).exists(), filename

        verdict = self.read_verdict()
        assert verdict["passed"]
        self.assertEqual(verdict["exit_code"], 0)
        self.assertEqual(verdict["measured"]["mass_drift"], 0.0)
        self.assertEqual(verdict["measured"]["energy_drift"], 0.0)
        assert SERIES_FILENAME in verdict["files"]
        assert FINAL_STATE_FILENAME in verdict["files"]

        # The resolved configuration parses back to the same run
        resolved = parse_config(self.out / RESOLVED_CONFIG_FILENAME)
        self.assertEqual(resolved.to_dict(), parse_config(config).to_dict())

    def test_groundstate(self):
        config = self.write_config(
            "[groundstate]\nmax_iter = 1000\ntol = 1e-9\npohozaev_tol = 1e-3\n",
            grid="[grid]\nn = 2\npoints = [64, 64]\nlengths = [30.0, 30.0]\n",
        )
        code = run_command("groundstate", config_path=config, out_dir=self.out)
        self.assertEqual(code, EXIT_SUCCESS)
        assert (self.out / GROUNDSTATE_FILENAME).exists()
        verdict = self.read_verdict()
        assert verdict["passed"]
        self.assertAlmostEqual(verdict["measured"]["pohozaev"][1], 1.5, delta=1e-3)

    def test_groundstate_not_converged(self):
        config = self.write_config("[groundstate]\nmax_iter = 1\n")
        code = run_command("groundstate", config_path=config, out_dir=self.out)
        self.assertEqual(code, EXIT_CRITERION_FAILED)

        # The partial result is kept
        assert (self.out / GROUNDSTATE_FILENAME).exists()
        verdict = self.read_verdict()
        assert not verdict["passed"]
        self.assertEqual(verdict["exit_code"], EXIT_CRITERION_FAILED)

    def test_groundstate_initial_guess_without_interaction(self):
        config = self.write_config('[groundstate]\ninit = {kind = "gaussian", amplitude_v = 0.0}\n')
        code = run_command("groundstate", config_path=config, out_dir=self.out)
        self.assertEqual(code, EXIT_CRITERION_FAILED)

        assert (self.out / GROUNDSTATE_FILENAME).exists()
        with (self.out / "diagnostics.json").open("r") as f:
            self.assertIsNone(json.load(f)["ratios"]["K/J"])
        verdict = self.read_verdict()
        assert not verdict["passed"]
        self.assertEqual(verdict["exit_code"], EXIT_CRITERION_FAILED)

    def test_groundstate_without_bound_state(self):
        config = self.write_config("[physics]\nomega = -1.0\n")
        code = run_command("groundstate", config_path=config, out_dir=self.out)
        self.assertEqual(code, EXIT_CONFIG_ERROR)
        self.assertEqual(self.read_verdict()["exit_code"], EXIT_CONFIG_ERROR)

    def test_config_errors(self):
        self.assertEqual(run_command("simulate", out_dir=self.out), EXIT_CONFIG_ERROR)
        self.assertEqual(run_command("scenario", out_dir=self.out), EXIT_CONFIG_ERROR)
        self.assertEqual(
            run_command("scenario", scenario="collapse", out_dir=self.out), EXIT_CONFIG_ERROR
        )

        config = self.write_config("[scenario]\nunknown_key = 1\n")
        self.assertEqual(
            run_command("scenario", scenario="virial-verify", config_path=config, out_dir=self.out),
            EXIT_CONFIG_ERROR,
        )

        config = self.write_config("[physics\nbeta = 1.0\n")
        self.assertEqual(
            run_command("evolve", config_path=config, out_dir=self.out), EXIT_CONFIG_ERROR
        )
        verdict = self.read_verdict()
        self.assertEqual(verdict["name"], "evolve")
        assert not verdict["passed"]

    def test_seed_override(self):
        config = self.write_config("[run]\nseed = 1\n[scenario]\nunknown_key = 1\n")
        run_command("scenario", "gn-check", config_path=config, out_dir=self.out, seed=42)
        resolved = parse_config(self.out / RESOLVED_CONFIG_FILENAME)
        self.assertEqual(resolved.run.seed, 42)


if __name__ == "__main__":
    unittest.main()
