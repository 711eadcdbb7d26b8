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

"""Piecewise control schedules.

Slot j lasts delta and is anchored at the frame `columns[:, j]`. A forward slot starts at its
anchor and runs u_b(t) with b = `transitions[:, j]`, ending at anchor + b. A reversed slot runs the
same kind of pulse backwards in time: it starts at anchor - transition and ends at the anchor, the
control being u_b(delta - t) with b = -transition. Consecutive slots must meet, cyclically.
"""

from __future__ import annotations

import csv
import dataclasses as dclass
import enum
import io
from typing import Literal

import numpy as np
import pydantic

from boadd.core.gf import FiniteField, field_of_order
from boadd.design.boa import BoaArray
from boadd.log import logger

from .pauli_rep import Representation, RepresentationMode


class ExportFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"


@dclass.dataclass(frozen=True)
class ControlSchedule:
    class ParseError(ValueError):
        pass

    field: FiniteField
    columns: np.ndarray
    transitions: np.ndarray
    reversed: np.ndarray
    delta: float
    d: int
    mode: RepresentationMode
    symmetrized: bool = False

    def __post_init__(self):
        columns = self.field.validate(np.array(self.columns, dtype=np.int64, copy=True))
        transitions = self.field.validate(np.array(self.transitions, dtype=np.int64, copy=True))
        reversed_slots = np.array(self.reversed, dtype=bool, copy=True)
        for name, value in [
            ("columns", columns),
            ("transitions", transitions),
            ("reversed", reversed_slots),
        ]:
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "mode", RepresentationMode(self.mode))
        object.__setattr__(self, "delta", float(self.delta))
        self.validate()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ControlSchedule):
            return NotImplemented
        return (
            self.field == other.field
            and self.delta == other.delta
            and self.d == other.d
            and self.mode == other.mode
            and self.symmetrized == other.symmetrized
            and np.array_equal(self.columns, other.columns)
            and np.array_equal(self.transitions, other.transitions)
            and np.array_equal(self.reversed, other.reversed)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.delta, self.d, self.mode, self.columns.tobytes()))

    def __str__(self) -> str:
        kind = "symmetrized " if self.symmetrized else ""
        return f"{kind}schedule n={self.n} N={self.N} q={self.q} delta={self.delta}"

    def validate(self) -> None:
        if self.columns.ndim != 2 or 0 in self.columns.shape:
            raise ValueError(f"Columns of shape {self.columns.shape} are not an n x N array")
        if self.transitions.shape != self.columns.shape:
            raise ValueError(f"Transitions of shape {self.transitions.shape} do not match")
        if self.reversed.shape != (self.N,):
            raise ValueError(f"Expected {self.N} reversed flags, got {self.reversed.shape}")
        if not np.isfinite(self.delta) or self.delta <= 0:
            raise ValueError(f"Slot duration {self.delta} must be positive")

        expected_q = self.d * self.d if self.mode == RepresentationMode.WEYL else self.d
        if self.q != expected_q:
            mode = self.mode.value
            raise ValueError(f"{mode} with d={self.d} needs q={expected_q}, got {self.q}")

        starts, ends = self.start_frames, self.end_frames
        if np.any(starts[:, 0] != 0):
            raise ValueError("The schedule must start at the identity frame")
        broken = np.nonzero(np.any(ends != np.roll(starts, -1, axis=1), axis=0))[0]
        if broken.size:
            raise ValueError(f"Slot {int(broken[0])} does not end where the next one starts")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    @property
    def N(self) -> int:  # pylint: disable=invalid-name
        return self.columns.shape[1]

    @property
    def total_time(self) -> float:
        return self.N * self.delta

    @property
    def start_frames(self) -> np.ndarray:
        return np.where(
            self.reversed[None, :], self.field.sub(self.columns, self.transitions), self.columns
        )

    @property
    def end_frames(self) -> np.ndarray:
        return np.where(
            self.reversed[None, :], self.columns, self.field.add(self.columns, self.transitions)
        )

    @property
    def pulse_labels(self) -> np.ndarray:
        """Labels b of the pulses u_b executed in every slot (negated transitions when reversed)."""
        return np.where(self.reversed[None, :], self.field.neg(self.transitions), self.transitions)


# ------------------------------------------ Operations ------------------------------------------ #


def schedule_from_boa(
    boa: BoaArray, rep: Representation | tuple[int, RepresentationMode | str], delta: float = 1.0
) -> ControlSchedule:
    """Columns a_0..a_(N-1) of the array with transitions b_j = a_j - a_(j-1), a_N = a_0 = 0."""
    d, mode = (rep.d, rep.mode) if isinstance(rep, Representation) else rep
    mode = RepresentationMode(mode)
    expected_q = d * d if mode == RepresentationMode.WEYL else d
    if boa.q != expected_q:
        raise ValueError(f"{boa} is over GF({boa.q}), {mode.value} with d={d} needs q={expected_q}")

    columns = boa.entries
    transitions = boa.field.sub(np.roll(columns, -1, axis=1), columns)
    schedule = ControlSchedule(
        field=boa.field,
        columns=columns,
        transitions=transitions,
        reversed=np.zeros(boa.N, dtype=bool),
        delta=delta,
        d=d,
        mode=mode,
    )
    logger.debug(f"Built {schedule} from {boa}")
    return schedule


def symmetrize(schedule: ControlSchedule) -> ControlSchedule:
    """Appends the time-mirrored schedule so that U_c(t) = U_c(T - t): anchors are revisited in
    reverse and every mirrored slot replays its twin's pulse backwards.
    """
    return ControlSchedule(
        field=schedule.field,
        columns=np.concatenate([schedule.columns, schedule.columns[:, ::-1]], axis=1),
        transitions=np.concatenate(
            [schedule.transitions, schedule.field.neg(schedule.transitions[:, ::-1])], axis=1
        ),
        reversed=np.concatenate([schedule.reversed, ~schedule.reversed[::-1]]),
        delta=schedule.delta,
        d=schedule.d,
        mode=schedule.mode,
        symmetrized=True,
    )


def free_evolution_schedule(
    n: int, rep: Representation | tuple[int, RepresentationMode | str], delta: float = 1.0
) -> ControlSchedule:
    """A single slot without any control."""
    d, mode = (rep.d, rep.mode) if isinstance(rep, Representation) else rep
    mode = RepresentationMode(mode)
    field = field_of_order(d * d if mode == RepresentationMode.WEYL else d)
    zeros = np.zeros((n, 1), dtype=np.int64)
    return ControlSchedule(field, zeros, zeros, np.zeros(1, dtype=bool), delta, d, mode)


def corrupt_schedule(schedule: ControlSchedule, column: int) -> ControlSchedule:
    """Deletes one column of a forward schedule and rebuilds the transitions around the gap."""
    if schedule.symmetrized or np.any(schedule.reversed):
        raise ValueError("Only forward schedules can be corrupted")
    if not 1 <= column < schedule.N:
        raise ValueError(f"Column {column} outside of 1..{schedule.N - 1}")

    columns = np.delete(schedule.columns, column, axis=1)
    return ControlSchedule(
        field=schedule.field,
        columns=columns,
        transitions=schedule.field.sub(np.roll(columns, -1, axis=1), columns),
        reversed=np.zeros(columns.shape[1], dtype=bool),
        delta=schedule.delta,
        d=schedule.d,
        mode=schedule.mode,
    )


# -------------------------------------------- Export -------------------------------------------- #


class RepSpec(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    d: int = pydantic.Field(ge=2)
    mode: Literal["weyl", "x_only"]


class ScheduleDocument(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    q: int = pydantic.Field(ge=2)
    n: int = pydantic.Field(ge=1)
    slots: int = pydantic.Field(ge=1, alias="N")
    delta: float = pydantic.Field(gt=0)
    rep: RepSpec
    columns: list[list[int]]
    transitions: list[list[int]]
    reversed: list[bool] | None = None
    symmetrized: bool = False

    @staticmethod
    def from_schedule(schedule: ControlSchedule) -> ScheduleDocument:
        return ScheduleDocument(
            q=schedule.q,
            n=schedule.n,
            slots=schedule.N,
            delta=schedule.delta,
            rep=RepSpec(d=schedule.d, mode=schedule.mode.value),
            columns=schedule.columns.tolist(),
            transitions=schedule.transitions.tolist(),
            reversed=schedule.reversed.tolist(),
            symmetrized=schedule.symmetrized,
        )

    def to_schedule(self) -> ControlSchedule:
        columns = np.array(self.columns, dtype=np.int64)
        if columns.shape != (self.n, self.slots):
            raise ValueError(f"Columns of shape {columns.shape}, expected {(self.n, self.slots)}")
        return ControlSchedule(
            field=field_of_order(self.q),
            columns=columns,
            transitions=np.array(self.transitions, dtype=np.int64),
            reversed=np.zeros(self.slots, dtype=bool) if self.reversed is None else self.reversed,
            delta=self.delta,
            d=self.rep.d,
            mode=self.rep.mode,
            symmetrized=self.symmetrized,
        )


def _transitions_csv(schedule: ControlSchedule) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["qudit"] + [f"b{slot + 1}" for slot in range(schedule.N)])
    for qudit, row in enumerate(schedule.transitions):
        writer.writerow([qudit] + [int(entry) for entry in row])
    return buffer.getvalue()


def export_schedule(
    schedule: ControlSchedule, fmt: ExportFormat | str = ExportFormat.JSON
) -> bytes:
    """Deterministic serialization: the JSON document, or the transition table as CSV.

    The CSV has a header row `qudit,b1,...,bN` and one row per qudit, made of the 0-based qudit
    index followed by the transition labels of the N slots.
    """
    match ExportFormat(fmt):
        case ExportFormat.JSON:
            document = ScheduleDocument.from_schedule(schedule)
            return document.model_dump_json(by_alias=True, indent=1).encode("utf-8")
        case ExportFormat.CSV:
            return _transitions_csv(schedule).encode("utf-8")


def import_schedule(data: bytes | str) -> ControlSchedule:
    try:
        return ScheduleDocument.model_validate_json(data).to_schedule()
    except pydantic.ValidationError as err:
        raise ControlSchedule.ParseError(f"Invalid schedule document: {err}") from err
    except ValueError as err:
        raise ControlSchedule.ParseError(str(err)) from err
