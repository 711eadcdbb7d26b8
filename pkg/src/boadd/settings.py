# boadd - bounded-strength decoupling schemes from balanced-cycle orthogonal arrays
# Copyright (C) 2024 Paweł Głomski

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published
# by the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU Affero General Public License for more details.

# You should have received a copy of the GNU Affero General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/>.


import os
from typing import Annotated

import pydantic
import pydantic_settings

from boadd import __version__


# ------------------------------------------- Constants ------------------------------------------ #

PROJECT_NAME = "boadd"
PROJECT_VERSION = __version__

ENV_PREFIX = "BOA_"

_MAX_FULL_DIMENSION_DEFAULT = 2**14
_LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")

# ------------------------------------------ Validators ------------------------------------------ #


def validate_log_level(level: str) -> str:
    level = level.upper()
    if level not in _LOG_LEVELS:
        raise ValueError(f"Unknown log level '{level}', expected one of {_LOG_LEVELS}")
    return level


LogLevel = Annotated[str, pydantic.AfterValidator(validate_log_level)]

# ------------------------------------------ Environment ----------------------------------------- #


class Environment(pydantic_settings.BaseSettings):
    model_config = pydantic_settings.SettingsConfigDict(
        frozen=True, validate_default=True, env_prefix=ENV_PREFIX
    )

    threads: int = pydantic.Field(
        default_factory=lambda: os.cpu_count() or 1,
        ge=1,
        description="Caps the number of worker threads used by verification and simulation",
    )
    max_full_dimension: int = pydantic.Field(
        _MAX_FULL_DIMENSION_DEFAULT,
        ge=2,
        description="Largest Hilbert-space dimension simulated without the per-term reduction",
    )
    log_level: LogLevel = "INFO"
