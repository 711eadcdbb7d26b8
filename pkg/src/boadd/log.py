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


from __future__ import annotations

import sys
import loguru
from functools import lru_cache
from typing import Callable


DEFAULT_LOGGER_NAME = "boadd"
DEFAULT_LEVEL = "INFO"


class _Logger:
    def __init__(self):
        self._logger: loguru.Logger | None = None
        self._sink_id: int | None = None

    def __getstate__(self) -> dict[str]:
        return self.__dict__

    def __setstate__(self, state: dict[str]):
        self.__dict__.update(state)

    def __getattr__(self, attr_name: str):
        assert attr_name not in ("_logger", "_sink_id")

        if self._logger is None:
            # library code may log before (or without) the CLI entry point
            self.initialize(name=DEFAULT_LOGGER_NAME)

        return getattr(self._logger, attr_name)

    @property
    def is_initialized(self) -> bool:
        return self._logger is not None

    def initialize(
        self,
        name: str,
        main_logger: loguru.Logger | "_Logger" | None = None,
        level: str = DEFAULT_LEVEL,
    ) -> None:
        """Binds the logger to a name. Repeated calls rebind the name and replace the sink level,
        so the CLI entry point can be invoked more than once in a single process.

        Args:
            name (str): Name shown in the `logger_name` column
            main_logger (loguru.Logger | _Logger | None): Logger to share the sink with
            level (str): Minimal level of the stderr sink
        """
        if main_logger is None:
            base_logger = self._create_logger(level)
        elif isinstance(main_logger, _Logger):
            base_logger = main_logger._logger  # pylint: disable=protected-access
        else:
            base_logger = main_logger

        self._logger = base_logger.bind(logger_name=name)

    def _create_logger(self, level: str) -> loguru.Logger:
        if self._sink_id is None:
            loguru.logger.remove()
        else:
            loguru.logger.remove(self._sink_id)

        self._sink_id = loguru.logger.add(
            sys.stderr,
            level=level,
            format=(
                "<green>{time:YYYY-MM-DD HH:mm:ss.SSSS}</green> | "
                "<level>{extra[logger_name]}</level> | "
                "<level>{thread.name}</level> | "
                "<level>{level}</level> | "
                "<cyan>{name}:{line}</cyan> | "
                "<level>{extra[context]}{message}</level>"
                "<light-black>{extra[details]}</light-black>"
            ),
            diagnose=False,
        )
        loguru.logger.configure(
            extra={
                "context": "",
                "details": "",
            }
        )
        return loguru.logger.patch(_Logger._patch_extra)

    @staticmethod
    def _patch_extra(record) -> None:
        if context := record["extra"]["context"]:
            record["extra"]["context"] = f"<{context}> "
        if details := record["extra"]["details"]:
            record["extra"]["details"] = f"\n ↳ {details}"


logger: loguru.Logger | _Logger = _Logger()


@lru_cache(16)
def log_once(log_fn: Callable[[str], None], *args, **kwargs):
    log_fn(*args, **kwargs)
