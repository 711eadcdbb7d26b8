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

import json
from pathlib import Path
from typing import Any

import pydantic

from boadd.codes.builtin import Family
from boadd.control.pauli_rep import RepresentationMode
from boadd.control.schedule import ExportFormat
from boadd.control.sim import AverageMode


class RunConfig(pydantic.BaseModel):
    """Parameters of a single CLI run, read from an optional JSON file and overridden by flags."""

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid", validate_default=True)

    # code
    family: Family | None = None
    code_file: Path | None = None
    d: int | None = pydantic.Field(None, ge=2, le=16)
    q: int | None = pydantic.Field(None, ge=2)
    m: int | None = pydantic.Field(None, ge=1)
    designed: int | None = pydantic.Field(None, ge=2)
    n: int | None = pydantic.Field(None, ge=1)
    locality: int = pydantic.Field(2, ge=1)
    strength: int | None = pydantic.Field(None, ge=1)

    # schedule and simulation
    rep: RepresentationMode | None = None
    diagonal: bool = False
    delta: float = pydantic.Field(1.0, gt=0)
    symmetrize: bool = False
    seed: int = pydantic.Field(0, ge=0, lt=2**64)
    mode: AverageMode | None = None
    quadrature: int | None = pydantic.Field(None, ge=1)
    format: ExportFormat = ExportFormat.JSON

    # files
    input: Path | None = None
    output: Path | None = None
    schedule_output: Path | None = None

    # table
    localities: list[int] = pydantic.Field(default_factory=lambda: [2, 3, 4, 5])
    k_min: int = pydantic.Field(2, ge=2)
    k_max: int | None = pydantic.Field(None, ge=2)

    @pydantic.field_validator("mode", mode="before")
    @classmethod
    def parse_mode(cls, mode: Any) -> Any:
        return AverageMode.parse(mode) if isinstance(mode, str) else mode

    @pydantic.model_validator(mode="after")
    def check_field_order(self) -> RunConfig:
        if self.rep == RepresentationMode.WEYL and self.diagonal:
            raise ValueError("--diagonal selects the x_only representation, not weyl")
        if self.d is not None and self.q is not None:
            if self.q not in (self.d, self.d * self.d):
                raise ValueError(f"q={self.q} must be d={self.d} or d^2={self.d * self.d}")
            if self.q == self.d and self.representation_mode != RepresentationMode.X_ONLY:
                raise ValueError(f"q=d={self.d} requires the x_only representation (--diagonal)")
            if self.q != self.d and self.representation_mode == RepresentationMode.X_ONLY:
                raise ValueError(f"The x_only representation needs q=d={self.d}, got q={self.q}")
        if self.k_max is not None and self.k_max < self.k_min:
            raise ValueError(f"Empty k range {self.k_min}..{self.k_max}")
        return self

    @property
    def representation_mode(self) -> RepresentationMode:
        if self.rep is not None:
            return self.rep
        return RepresentationMode.X_ONLY if self.diagonal else RepresentationMode.WEYL

    @property
    def field_order(self) -> int | None:
        if self.q is not None:
            return self.q
        if self.d is None:
            return None
        return self.d if self.representation_mode == RepresentationMode.X_ONLY else self.d**2

    @staticmethod
    def load(path: Path | None, overrides: dict[str, Any]) -> RunConfig:
        """Merges a JSON config file with the explicitly given flags (flags win)."""
        data = dict[str, Any]()
        if path is not None:
            with open(path, "r", encoding="utf-8") as config_file:
                data = json.load(config_file)
            if not isinstance(data, dict):
                raise ValueError(f"Config file {path} does not hold a JSON object")
        data.update(overrides)
        return RunConfig.model_validate(data)
