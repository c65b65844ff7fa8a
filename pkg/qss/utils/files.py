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
# Files

This module provides utilities to create directories and to write reports.
"""

from typing import Any, Iterable, Union

from pathlib import Path

import jsonlines

from qss.utils.compression import serialize


def make_dirs(filename: Union[str, Path], parents: bool = True) -> None:
    """
    Create a directory.

    Parameters
    ----------
    filename : Union[str, Path]
        The name and path of the file. If it has a suffix, its parent directory is created.
    parents : bool, optional
        Whether intermediate directories should be created.
        Default is True.
    """
    path = Path(filename)
    if path.suffix != "":  # Is file
        path = path.parent

    path.mkdir(exist_ok=True, parents=parents)


def write_json(filename: Union[str, Path], data: Any) -> Path:
    """
    Write a report as indented JSON.

    Parameters
    ----------
    filename : Union[str, Path]
        The target file.
    data : Any
        The report.

    Returns
    -------
    Path
        The written file.
    """
    path = Path(filename)
    make_dirs(path)
    path.write_text(serialize(data) + "\n", encoding="utf-8")
    return path


def write_jsonlines(filename: Union[str, Path], rows: Iterable[Any], append: bool = False) -> Path:
    """
    Write one JSON object per line.

    Parameters
    ----------
    filename : Union[str, Path]
        The target file.
    rows : Iterable[Any]
        The rows.
    append : bool, optional
        Whether to append to an existing file.
        Default is False.

    Returns
    -------
    Path
        The written file.
    """
    path = Path(filename)
    make_dirs(path)
    with jsonlines.open(
        path, mode="a" if append else "w", dumps=lambda row: serialize(row, dense=True)
    ) as writer:
        for row in rows:
            writer.write(row)

    return path
