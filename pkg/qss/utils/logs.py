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
# Logs

This module sets up the logging configuration from `logging.yml` and hands out loggers.
"""

from typing import Optional, Union

import logging
import logging.config
from pathlib import Path

import yaml

import qss

path = Path(qss.__file__).parent / "utils" / "logging.yml"
with path.open("r") as stream:
    config = yaml.load(stream, Loader=yaml.FullLoader)

logging.config.dictConfig(config)


def get_logger(logger_name: str) -> logging.Logger:
    """
    Get the logger corresponding to the logger name.

    Parameters
    ----------
    logger_name : str
        The name of the logger.

    Returns
    -------
    logging.Logger
        The logger corresponding to the logger name.
    """
    return logging.getLogger(logger_name)


def set_level(level: Optional[Union[str, int]]) -> None:
    """
    Set the level of the package loggers and the root logger.

    Parameters
    ----------
    level : Optional[Union[str, int]]
        A level name such as "DEBUG" or a numeric level. None leaves the levels untouched.
    """
    if level is None:
        return

    if isinstance(level, str):
        level = level.upper()

    logging.getLogger().setLevel(level)
    logging.getLogger("qss").setLevel(level)
