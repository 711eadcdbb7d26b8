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

"""Reference codes and cycles reproduced verbatim, used as fixtures by the CLI and the tests."""

import enum

import numpy as np

from boadd.core.gf import field_create

from .linear import LinearCode


class Family(enum.Enum):
    HAMMING = "hamming"
    BCH = "bch"
    EXAMPLE1 = "example1"
    EXAMPLE2 = "example2"
    EXAMPLE3 = "example3"
    FILE = "file"


# GF(4) under x^2 + x + 1: alpha = 2, alpha^2 = alpha + 1 = 3
_ALPHA_SQUARED = 3

# ------------------------------------------- [7,3]_2 -------------------------------------------- #

EXAMPLE1_GENERATOR = (
    (1, 0, 0),
    (0, 1, 0),
    (1, 1, 0),
    (0, 0, 1),
    (1, 0, 1),
    (0, 1, 1),
    (1, 1, 1),
)

# Eulerian cycle on the Cayley graph of Z_2^3 w.r.t. the unit vectors, as published
EXAMPLE1_CYCLE = (
    (0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0),
    (0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 0, 0), (1, 0, 1), (1, 1, 1), (1, 1, 0), (1, 1, 1),
    (0, 1, 1), (0, 1, 0), (0, 1, 1), (0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 0, 1), (0, 0, 1),
)  # fmt: skip

# 0-based rows of the BOA built from the two above that trace the hourglass-shaped balanced cycle
EXAMPLE1_BALANCED_ROWS = (4, 6)
EXAMPLE1_BALANCED_MU = {(0, 1): 2, (1, 1): 4}

# ------------------------------------------- [5,2]_4 -------------------------------------------- #

EXAMPLE2_GENERATOR = (
    (1, 0),
    (0, 1),
    (1, _ALPHA_SQUARED),
    (_ALPHA_SQUARED, _ALPHA_SQUARED),
    (_ALPHA_SQUARED, 1),
)

# ------------------------------------------- [16,9]_2 ------------------------------------------- #

EXAMPLE3_GENERATOR = tuple(tuple(int(i == j) for j in range(9)) for i in range(9)) + (
    (1, 1, 0, 0, 1, 1, 1, 0, 0),
    (0, 1, 1, 0, 0, 1, 1, 1, 0),
    (0, 0, 1, 1, 0, 0, 1, 1, 1),
    (1, 1, 0, 1, 0, 1, 1, 1, 1),
    (1, 0, 1, 0, 0, 1, 0, 1, 1),
    (1, 0, 0, 1, 1, 1, 0, 0, 1),
    (1, 0, 0, 0, 1, 0, 1, 1, 1),
)


def example1() -> LinearCode:
    """[7,3]_2, dual distance 3, for 2-local diagonal Hamiltonians on 7 qubits."""
    return LinearCode(field_create(2, 1), np.array(EXAMPLE1_GENERATOR), label="example1")


def example1_cycle() -> np.ndarray:
    return np.array(EXAMPLE1_CYCLE, dtype=np.int64)


def example2() -> LinearCode:
    """[5,2]_4, the dual of the [5,3,3]_4 Hamming code."""
    return LinearCode(field_create(2, 2), np.array(EXAMPLE2_GENERATOR), label="example2")


def example3() -> LinearCode:
    """[16,9]_2, the dual of BCH^ext(F_16/F_2, 6) = [16,7,6]_2."""
    return LinearCode(field_create(2, 1), np.array(EXAMPLE3_GENERATOR), label="example3")


def builtin_code(family: Family) -> LinearCode:
    match family:
        case Family.EXAMPLE1:
            return example1()
        case Family.EXAMPLE2:
            return example2()
        case Family.EXAMPLE3:
            return example3()
        case _:
            raise ValueError(f"'{family.value}' is not a builtin code")
