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

"""Projective unitary representations of the additive group of GF(q) on one qudit.

In the weyl mode an element of GF(d^2), read as 2e coordinates over GF(p), is split into
X-exponents (first e coordinates) and Z-exponents (last e) and mapped to
X^a_1 Z^b_1 (x) ... (x) X^a_e Z^b_e on (C^p)^(x)e. The x_only mode maps GF(d), d prime, to the
powers of the shift.
"""

from __future__ import annotations

import dataclasses as dclass
import enum
import functools
from typing import Sequence

import numpy as np

from boadd.core.budget import GROUP_AVERAGE_LIMIT, TENSOR_DIMENSION_LIMIT, check_budget
from boadd.core.gf import FieldElement, FiniteField, field_create, prime_power
from boadd.core.linalg import Complex, conjugate_by_product, kron_all, phase_free_distance
from boadd.log import logger

MAX_QUDIT_DIMENSION = 16


class RepresentationMode(enum.Enum):
    WEYL = "weyl"
    X_ONLY = "x_only"


def shift_matrix(p: int) -> np.ndarray:
    """X with X|j+1> = |j>, so that X Z = omega Z X."""
    return np.roll(np.eye(p, dtype=Complex), 1, axis=1)


def clock_matrix(p: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(p) / p)).astype(Complex)


def _weyl_operator(
    shift: np.ndarray, clock: np.ndarray, x_exps: np.ndarray, z_exps: np.ndarray
) -> np.ndarray:
    return kron_all(
        [
            np.linalg.matrix_power(shift, int(x_exp)) @ np.linalg.matrix_power(clock, int(z_exp))
            for x_exp, z_exp in zip(x_exps, z_exps)
        ]
    )


@dclass.dataclass(frozen=True)
class Representation:
    d: int
    mode: RepresentationMode
    field: FiniteField
    table: np.ndarray = dclass.field(repr=False, compare=False)
    exponents: np.ndarray = dclass.field(repr=False, compare=False)

    def __post_init__(self):
        assert self.table.shape == (self.q, self.d, self.d)
        self.table.setflags(write=False)
        self.exponents.setflags(write=False)

    def __str__(self) -> str:
        return f"{self.mode.value}(d={self.d}, q={self.q})"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "q": self.q,
            "mode": self.mode.value,
            "unitaries": [
                [[[float(entry.real), float(entry.imag)] for entry in row] for row in unitary]
                for unitary in self.table
            ],
        }


@functools.lru_cache(maxsize=None)
def _build_representation(d: int, mode: RepresentationMode) -> Representation:
    try:
        p, e = prime_power(d)
    except ValueError as err:
        raise ValueError(f"Qudit dimension {d} is not a prime power") from err
    if d > MAX_QUDIT_DIMENSION:
        raise ValueError(f"Qudit dimension {d} exceeds {MAX_QUDIT_DIMENSION}")

    shift, clock = shift_matrix(p), clock_matrix(p)
    match mode:
        case RepresentationMode.WEYL:
            field = field_create(p, 2 * e)
            coords = field.coords(np.arange(field.q))
            exponents = np.stack([coords[:, :e], coords[:, e:]], axis=1)
        case RepresentationMode.X_ONLY:
            if e != 1:
                raise ValueError(f"x_only representations need a prime dimension, got d={d}")
            field = field_create(p, 1)
            exponents = np.stack([np.arange(p)[:, None], np.zeros((p, 1), dtype=np.int64)], axis=1)
        case _:
            raise ValueError(f"Unknown representation mode {mode}")

    table = np.stack(
        [_weyl_operator(shift, clock, x_exps, z_exps) for x_exps, z_exps in exponents]
    )
    representation = Representation(d, mode, field, table, exponents)
    logger.debug(f"Built representation {representation}")
    return representation


def build_representation(d: int, mode: RepresentationMode | str) -> Representation:
    """Builds (and caches) the representation of the additive group of GF(q) on C^d.

    Args:
        d (int): Qudit dimension, a prime power up to 16
        mode (RepresentationMode | str): weyl (q = d^2, irreducible) or x_only (q = d, d prime)

    Returns:
        Representation: Table of q unitaries of dimension d
    """
    return _build_representation(d, RepresentationMode(mode))


def _label_value(rep: Representation, label: FieldElement | int) -> int:
    if isinstance(label, FieldElement):
        if label.field != rep.field:
            raise FiniteField.MismatchError(f"{label} is not an element of {rep.field}")
        return label.value
    value = int(label)
    if not 0 <= value < rep.q:
        raise ValueError(f"Label {value} outside of {rep.field}")
    return value


def unitary_for(rep: Representation, label: FieldElement | int) -> np.ndarray:
    return rep.table[_label_value(rep, label)]


def tensor_unitary(rep: Representation, labels: Sequence[FieldElement | int]) -> np.ndarray:
    """U_(a_1) (x) ... (x) U_(a_r), the first label acting on the most significant site."""
    values = [_label_value(rep, label) for label in labels]
    if not values:
        raise ValueError("At least one label is required")
    check_budget("Tensor dimension", rep.d ** len(values), TENSOR_DIMENSION_LIMIT)
    return kron_all([rep.table[value] for value in values])


def group_average(rep: Representation, arity: int, matrix: np.ndarray) -> np.ndarray:
    """Pi_G(A) = 1/|G| sum_g U_g^dagger A U_g over G = GF(q)^arity.

    The group is a product, so the average is applied one site at a time.
    """
    check_budget("Group average", rep.q**arity, GROUP_AVERAGE_LIMIT)
    dim = rep.d**arity
    if matrix.shape != (dim, dim):
        raise ValueError(f"Matrix of shape {matrix.shape}, expected {(dim, dim)}")

    result = np.asarray(matrix, dtype=Complex)
    for site in range(arity):
        site_ops: list[np.ndarray | None] = [None] * arity
        averaged = np.zeros_like(result)
        for unitary in rep.table:
            site_ops[site] = unitary
            averaged += conjugate_by_product(result, site_ops, rep.d)
        result = averaged / rep.q
    return result


def projectivity_defect(rep: Representation) -> float:
    """max over g, h of min over phases of ||U_(g+h) - e^(i theta) U_g U_h||."""
    values = np.arange(rep.q)
    sums = rep.field.add(values[:, None], values[None, :])
    return max(
        phase_free_distance(rep.table[sums[g, h]], rep.table[g] @ rep.table[h])
        for g in values
        for h in values
    )
