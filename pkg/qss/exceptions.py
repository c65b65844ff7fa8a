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
# Exceptions

This module provides the errors raised throughout the package.

All errors derive from `QSSError` so callers (most notably the command line) can catch
domain failures in one place and map them to exit codes.

## Classes
    - QSSError: Base class of all package errors.
    - GridError: Raised if a grid violates its invariants.
    - ShapeMismatchError: Raised if arrays do not match a grid or each other.
    - SnapshotFormatError: Raised if a snapshot file is malformed.
    - ParameterError: Raised if a physical or numerical parameter is out of range.
    - FieldOverflowError: Raised if a field contains nonfinite values.
    - NotConvergedError: Raised if the ground-state iteration does not converge.
    - UndefinedQuotientError: Raised if the Gagliardo-Nirenberg quotient is undefined.
    - SearchCapExceededError: Raised if a scaling search leaves its admissible range.
    - NoUnstableDirectionError: Raised if a quadratic form has no negative direction.
    - UnsupportedCaseError: Raised if an identity is requested outside its stated case.
    - SeriesTooShortError: Raised if a time series has too few samples.
    - ConfigError: Raised if a configuration file is invalid.
    - BoundaryMassWarning: Issued if a state is not decayed at the box boundary.
"""

from typing import Any


class QSSError(Exception):
    """Base class of all package errors."""

    pass


class GridError(QSSError):
    """Raised if a grid violates its invariants."""

    pass


class ShapeMismatchError(QSSError):
    """Raised if arrays do not match a grid or each other."""

    pass


class SnapshotFormatError(QSSError):
    """Raised if a snapshot file is malformed."""

    pass


class ParameterError(QSSError):
    """Raised if a physical or numerical parameter is out of range."""

    pass


class FieldOverflowError(QSSError):
    """Raised if a field contains nonfinite values."""

    pass


class NotConvergedError(QSSError):
    """
    Raised if the ground-state iteration does not converge.

    Properties
    ----------
    result : Any
        The last iterate together with its residual history.
    """

    def __init__(self, message: str, result: Any = None) -> None:
        super().__init__(message)
        self.result = result


class UndefinedQuotientError(QSSError):
    """Raised if the Gagliardo-Nirenberg quotient is undefined (J <= 0)."""

    pass


class SearchCapExceededError(QSSError):
    """Raised if a scaling search leaves its admissible range."""

    pass


class NoUnstableDirectionError(QSSError):
    """Raised if a quadratic form has no negative direction."""

    pass


class UnsupportedCaseError(QSSError):
    """Raised if an identity is requested outside its stated case."""

    pass


class SeriesTooShortError(QSSError):
    """Raised if a time series has too few samples."""

    pass


class ConfigError(QSSError):
    """Raised if a configuration file is invalid."""

    pass


class BoundaryMassWarning(UserWarning):
    """Issued if a state carries non-negligible mass close to the box boundary."""

    pass
