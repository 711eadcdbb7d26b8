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

import dataclasses as dclass
import itertools
import math
from typing import Iterator

import numpy as np

from boadd.core.budget import CODEWORD_ENUMERATION_LIMIT, check_budget
from boadd.core.gf import FiniteField
from boadd.log import logger


_ENUMERATION_CHUNK = 2**15


@dclass.dataclass(frozen=True)
class LinearCode:
    """[n, k]_q code given by an n x k generator matrix; codewords are the columns G @ m."""

    class DimensionError(ValueError):
        pass

    field: FiniteField
    generator: np.ndarray
    label: str = "user"

    def __post_init__(self):
        generator = self.field.validate(np.array(self.generator, dtype=np.int64, copy=True))
        if generator.ndim != 2 or generator.shape[1] == 0:
            raise LinearCode.DimensionError(f"Generator of shape {generator.shape} is not n x k")
        if generator.shape[1] > generator.shape[0]:
            raise LinearCode.DimensionError(f"Generator of shape {generator.shape} has k > n")
        if self.field.rank(generator) != generator.shape[1]:
            raise ValueError(f"Generator of '{self.label}' does not have full column rank")

        generator.setflags(write=False)
        object.__setattr__(self, "generator", generator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field == other.field
            and self.label == other.label
            and np.array_equal(self.generator, other.generator)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.label, self.generator.tobytes()))

    def __str__(self) -> str:
        return f"[{self.n},{self.k}]_{self.q} ({self.label})"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.generator.shape[0]

    @property
    def k(self) -> int:
        return self.generator.shape[1]

    @property
    def size(self) -> int:
        return self.q**self.k

    def messages(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Messages with indices in <start, stop), rows of base-q digits (first coordinate least
        significant).
        """
        stop = self.size if stop is None else stop
        indices = np.arange(start, stop, dtype=np.int64)
        return (indices[:, None] // (self.q ** np.arange(self.k, dtype=np.int64))[None, :]) % self.q

    def codewords(self, chunk: int = _ENUMERATION_CHUNK) -> Iterator[np.ndarray]:
        """Yields all codewords, as rows, in chunks following the message enumeration order."""
        for start in range(0, self.size, chunk):
            stop = min(start + chunk, self.size)
            yield self.field.matmul(self.messages(start, stop), self.generator.T)


@dclass.dataclass(frozen=True)
class CodeReport:
    distance: int
    dual_distance: int
    strength: int = dclass.field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "strength", self.dual_distance - 1)

    def __str__(self) -> str:
        return (
            f"distance={self.distance} dual_distance={self.dual_distance} "
            f"strength={self.strength}"
        )


def encode(code: LinearCode, message: np.ndarray | list[int]) -> np.ndarray:
    message = code.field.validate(message)
    if message.shape != (code.k,):
        raise LinearCode.DimensionError(f"Message of shape {message.shape}, expected ({code.k},)")
    return code.field.matmul(code.generator, message[:, None])[:, 0]


def dual_code(code: LinearCode) -> LinearCode:
    """The [n, n-k] code spanning the null space of G^T under x.y = sum_i x_i*y_i."""
    if code.k == code.n:
        raise ValueError(f"{code} is the full space, its dual is the zero code")
    generator = code.field.null_space(code.generator.T)
    return LinearCode(code.field, generator, label=f"{code.label}-dual")


def min_distance(code: LinearCode) -> int:
    check_budget(
        "Codeword enumeration", code.size, CODEWORD_ENUMERATION_LIMIT, hint=f"code {code}"
    )
    logger.debug(f"Enumerating {code.size} codewords of {code}")

    distance = code.n
    for words in code.codewords():
        weights = np.count_nonzero(words, axis=1)
        weights = weights[weights > 0]
        if weights.size:
            distance = min(distance, int(weights.min()))
    return distance


def dual_distance(code: LinearCode) -> int:
    """Minimum weight of the dual code.

    Enumerates the dual when it is small enough, otherwise searches for the smallest set of
    linearly dependent rows of G (a dual codeword of weight w is a dependency among w rows).
    """
    if code.k == code.n:
        return code.n + 1

    if code.q ** (code.n - code.k) <= CODEWORD_ENUMERATION_LIMIT:
        return min_distance(dual_code(code))

    for weight in range(1, code.k + 2):
        check_budget(
            "Dependent-row search",
            math.comb(code.n, weight),
            CODEWORD_ENUMERATION_LIMIT,
            hint=f"code {code}, weight {weight}",
        )
        for rows in itertools.combinations(range(code.n), weight):
            if code.field.rank(code.generator[list(rows)]) < weight:
                return weight
    raise AssertionError("More than k+1 rows are always dependent")


def code_report(code: LinearCode) -> CodeReport:
    report = CodeReport(distance=min_distance(code), dual_distance=dual_distance(code))
    logger.debug(f"Code {code}: {report}")
    return report


def oa_from_code(code: LinearCode) -> np.ndarray:
    """The n x q^k array whose columns are all codewords (message enumeration order)."""
    check_budget("Codeword enumeration", code.size, CODEWORD_ENUMERATION_LIMIT)
    return np.concatenate(list(code.codewords()), axis=0).T
