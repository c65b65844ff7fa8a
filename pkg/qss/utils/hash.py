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
# Hash

This module provides utilities to hash output files.
"""

from typing import Dict, Iterable

import hashlib
from pathlib import Path


def file_to_hash(filename: Path) -> str:
    """
    Convert a file to a hash.

    Parameters
    ----------
    filename : Path
        The path to the file to be converted.

    Returns
    -------
    str
        The hex digest.
    """
    hash = hashlib.md5()
    with Path(filename).open("rb") as f:
        while chunk := f.read(4096):
            hash.update(chunk)

    return hash.hexdigest()


def files_to_hashes(filenames: Iterable[Path]) -> Dict[str, str]:
    """
    Hash every existing file and key the digests by file name.

    Parameters
    ----------
    filenames : Iterable[Path]
        The files.

    Returns
    -------
    Dict[str, str]
        File name to hex digest, sorted by file name.
    """
    hashes = {Path(f).name: file_to_hash(Path(f)) for f in filenames if Path(f).is_file()}
    return dict(sorted(hashes.items()))
