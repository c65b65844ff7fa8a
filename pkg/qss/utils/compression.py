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
# Compression

This module provides utilities for serializing reports to JSON.

## Classes
    - Encoder: This class defines a custom JSON Encoder.

## Constants
    - JSON_DENSE_SEPARATORS: Tuple(str, str)
"""

from typing import Any, Dict, List, Union

import dataclasses
import enum
import json
import math
from pathlib import Path

import numpy as np

JSON_DENSE_SEPARATORS = (",", ":")


class Encoder(json.JSONEncoder):
    """Define a custom JSON Encoder that understands numpy, enums, paths and dataclasses."""

    def default(self, obj: Any) -> Any:
        """
        Return a JSON friendly version of the object.

        Parameters
        ----------
        obj : Any
            The object to be converted.

        Returns
        -------
        Any
            The converted object.
        """
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return sanitize(float(obj))
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return sanitize(obj.tolist())
        elif isinstance(obj, enum.Enum):
            return obj.value
        elif isinstance(obj, Path):
            return str(obj)
        elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return sanitize(dataclasses.asdict(obj))
        return json.JSONEncoder.default(self, obj)


def sanitize(data: Any) -> Any:
    """
    Replace nonfinite floats by None so the output stays valid JSON.

    Parameters
    ----------
    data : Any
        A (nested) structure of lists, tuples, dicts and scalars.

    Returns
    -------
    Any
        The same structure with NaN and infinities replaced by None.
    """
    if isinstance(data, float):
        return data if math.isfinite(data) else None
    if isinstance(data, dict):
        return {key: sanitize(value) for key, value in data.items()}
    if isinstance(data, (list, tuple)):
        return [sanitize(value) for value in data]
    return data


def serialize(data: Union[Dict, List], dense: bool = False) -> str:
    """
    Serialize a report to a string.

    Parameters
    ----------
    data : Union[Dict, List]
        The report.
    dense : bool, optional
        Whether to skip indentation and whitespace.
        Default is False.

    Returns
    -------
    str
        The serialized object as a JSON formatted string.
    """
    if dense:
        return json.dumps(
            sanitize(data), cls=Encoder, separators=JSON_DENSE_SEPARATORS, allow_nan=False
        )

    return json.dumps(sanitize(data), cls=Encoder, indent=4, allow_nan=False)
