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

# noqa: D400
"""
# Status

This module provides the termination status of a time integration.

## Classes
    - RunStatus: Represent the status of a run as an Enum.
"""

from enum import IntEnum

from qss.constants import EXIT_BLOWUP, EXIT_DT_UNDERFLOW, EXIT_SUCCESS


class RunStatus(IntEnum):
    """
    Represent the status of a run as an Enum.

    The integer values are the exit codes of the command line.
    """

    COMPLETED = EXIT_SUCCESS
    BLOWUP_DETECTED = EXIT_BLOWUP
    DT_UNDERFLOW = EXIT_DT_UNDERFLOW

    def to_text(self) -> str:
        """
        Convert name to simpler, lower case text format.

        Returns
        -------
        str
            The converted name in lower case with underscores kept, e.g. "blowup_detected".
        """
        return self.name.lower()

    @property
    def exit_code(self) -> int:
        """The exit code of the command line."""
        return int(self.value)
