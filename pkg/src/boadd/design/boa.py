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

"""Balanced-cycle orthogonal arrays: construction from a code and a cycle, exhaustive checks."""

from __future__ import annotations

import csv
import dataclasses as dclass
import io
import itertools
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from boadd.codes.linear import LinearCode, dual_distance
from boadd.core.budget import SUBSET_ENUMERATION_LIMIT, check_budget
from boadd.core.gf import FiniteField, field_of_order
from boadd.core.multithreading import ThreadPool, resolve_pool
from boadd.log import logger

from .cayley import BalanceReport, Cycle, check_balanced, pack


@dclass.dataclass(frozen=True)
class BoaArray:
    """n x N array over GF(q); rows are qudits, columns are time slots."""

    class ParseError(ValueError):
        pass

    field: FiniteField
    entries: np.ndarray
    strength: int
    provenance: str = "user"

    def __post_init__(self):
        entries = self.field.validate(np.array(self.entries, dtype=np.int64, copy=True))
        if entries.ndim != 2 or 0 in entries.shape:
            raise ValueError(f"Entries of shape {entries.shape} are not a nonempty n x N array")
        if np.any(entries[:, 0] != 0):
            raise ValueError("The first column of the array must be the zero vector")
        if not 0 <= self.strength <= entries.shape[0]:
            raise ValueError(f"Strength {self.strength} outside of 0..{entries.shape[0]}")

        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoaArray):
            return NotImplemented
        return (
            self.field == other.field
            and self.strength == other.strength
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.strength, self.entries.tobytes()))

    def __str__(self) -> str:
        return f"BOA({self.N},{self.n},{self.q},{self.strength}) ({self.provenance})"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def N(self) -> int:  # pylint: disable=invalid-name
        return self.entries.shape[1]

    @property
    def lam(self) -> Fraction:
        """N / q^l, an integer whenever the OA property holds."""
        return Fraction(self.N, self.q**self.strength)

    # ------------------------------------------- files ------------------------------------------ #

    def dumps(self) -> str:
        lines = [f"{self.q} {self.n} {self.N} {self.strength} {self.lam}"]
        lines += [" ".join(str(int(entry)) for entry in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    @staticmethod
    def loads(text: str, provenance: str = "user") -> BoaArray:
        lines = [line.split() for line in text.splitlines() if line.strip()]
        if not lines or len(lines[0]) != 5:
            raise BoaArray.ParseError("Expected a 'q n N l lambda' header line")

        try:
            q, n, cols, strength = (int(token) for token in lines[0][:4])
            lam = Fraction(lines[0][4])
            rows = [[int(token) for token in line] for line in lines[1:]]
        except ValueError as err:
            raise BoaArray.ParseError(f"Malformed entry: {err}") from err

        if len(rows) != n or any(len(row) != cols for row in rows):
            raise BoaArray.ParseError(f"Expected {n} rows of {cols} entries")
        try:
            array = BoaArray(field_of_order(q), np.array(rows), strength, provenance)
        except ValueError as err:
            raise BoaArray.ParseError(str(err)) from err
        if array.lam != lam:
            raise BoaArray.ParseError(f"Header lambda {lam} does not match N/q^l = {array.lam}")
        return array

    def write(self, path: Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @staticmethod
    def read(path: Path) -> BoaArray:
        path = Path(path)
        return BoaArray.loads(path.read_text(encoding="utf-8"), provenance=f"file:{path.name}")

    def to_csv(self) -> str:
        """The array as CSV: a header row `qudit,a0,...,a{N-1}`, then one row per qudit that starts
        with the 0-based qudit index followed by its N entries.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["qudit"] + [f"a{col}" for col in range(self.N)])
        for row_idx, row in enumerate(self.entries):
            writer.writerow([row_idx] + [int(entry) for entry in row])
        return buffer.getvalue()


@dclass.dataclass(frozen=True)
class SubsetReport:
    rows: tuple[int, ...]
    balance: BalanceReport

    @property
    def generators(self) -> list[tuple[int, ...]]:
        return self.balance.generators


@dclass.dataclass(frozen=True)
class VerificationReport:
    strength: int
    oa_ok: bool
    lam: Fraction | None
    boa_ok: bool
    per_subset: list[SubsetReport]
    failures: list[str]

    def __post_init__(self):
        assert not self.boa_ok or self.oa_ok

    def __str__(self) -> str:
        return (
            f"strength={self.strength} oa_ok={self.oa_ok} lambda={self.lam} "
            f"boa_ok={self.boa_ok} subsets={len(self.per_subset)} failures={len(self.failures)}"
        )


# ------------------------------------------ Operations ------------------------------------------ #


def build_boa(code: LinearCode, cycle: Cycle, strength: int | None = None) -> BoaArray:
    """Maps every vertex m_j of the cycle to the codeword G @ m_j, in cycle order.

    Args:
        code (LinearCode): [n, k]_q code
        cycle (Cycle): Cycle over F_q^k starting at zero
        strength (int | None, optional): Claimed strength; computed as the dual distance minus one
            when omitted

    Returns:
        BoaArray: The n x N array
    """
    if cycle.field != code.field or cycle.k != code.k:
        raise ValueError(f"Cycle over F_{cycle.q}^{cycle.k} does not match the code {code}")
    if strength is None:
        strength = min(dual_distance(code) - 1, code.n)

    entries = code.field.matmul(code.generator, cycle.vertices.T)
    array = BoaArray(code.field, entries, strength, provenance=f"{code.label}/cycle N={cycle.N}")
    logger.debug(f"Built {array}")
    return array


def _check_strength(array: BoaArray, strength: int) -> None:
    if not 1 <= strength <= array.n:
        raise ValueError(f"Strength {strength} outside of 1..{array.n}")
    check_budget(
        "Subarray enumeration",
        math.comb(array.n, strength) * array.q**strength,
        SUBSET_ENUMERATION_LIMIT,
        hint=f"{array}",
    )


def verify_oa(array: BoaArray, strength: int) -> tuple[bool, Fraction | None]:
    """Checks that every `strength`-row subarray holds every tuple equally often.

    Returns:
        tuple[bool, Fraction | None]: The verdict and the common count, None when it fails
    """
    _check_strength(array, strength)
    tuples = array.q**strength
    if array.N % tuples:
        return False, None

    lam = array.N // tuples
    for rows in itertools.combinations(range(array.n), strength):
        counts = np.bincount(pack(array.field, array.entries[list(rows)].T), minlength=tuples)
        if np.any(counts != lam):
            logger.debug(f"Rows {rows} are not an OA: counts {counts.min()}..{counts.max()}")
            return False, None
    return True, Fraction(lam)


def verify_boa(
    array: BoaArray, strength: int, thread_pool: ThreadPool | None = None
) -> VerificationReport:
    """Checks that every `strength`-row restriction, read column by column and closed back to
    the zero first column, is a balanced cycle over F_q^strength.

    Subsets are distributed over `thread_pool`; the report lists them in lexicographic order.
    """
    _check_strength(array, strength)
    oa_ok, lam = verify_oa(array, strength)

    subsets = list(itertools.combinations(range(array.n), strength))
    logger.info(f"Verifying {array} at strength {strength}: {len(subsets)} subsets")

    def check_subset(rows: tuple[int, ...]) -> SubsetReport:
        return SubsetReport(rows, check_balanced(array.field, array.entries[list(rows)].T))

    per_subset = resolve_pool(thread_pool).map(check_subset, subsets)

    failures = list[str]()
    if not oa_ok:
        failures.append(f"not an orthogonal array of strength {strength}")
    for subset in per_subset:
        balance = subset.balance
        logger.debug(f"Rows {subset.rows}: mu={balance.mu}")
        if not balance.balanced:
            first = balance.violations[0] if balance.violations else None
            failures.append(
                f"rows {subset.rows}: {len(balance.violations)} violations"
                + (f", e.g. {first}" if first else "")
                + "".join(f", {problem}" for problem in balance.problems)
            )

    for failure in failures[:10]:
        logger.warning(f"Verification failure: {failure}")

    boa_ok = oa_ok and all(subset.balance.balanced for subset in per_subset)
    return VerificationReport(
        strength=strength,
        oa_ok=oa_ok,
        lam=lam,
        boa_ok=boa_ok,
        per_subset=per_subset,
        failures=failures,
    )


def pad_rows(array: BoaArray, n_target: int) -> BoaArray:
    """Keeps the first `n_target` rows: a scheme for n qudits also serves any n_target of them."""
    if not 1 <= n_target <= array.n:
        raise ValueError(f"Target row count {n_target} outside of 1..{array.n}")
    if n_target == array.n:
        return array
    return BoaArray(
        array.field,
        array.entries[:n_target],
        min(array.strength, n_target),
        provenance=f"{array.provenance}/rows<{n_target}",
    )
