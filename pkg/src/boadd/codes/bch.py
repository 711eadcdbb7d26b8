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

"""Extended primitive narrow-sense BCH codes.

BCH^ext(F_{q^m}/F_q, D) has length q^m. Its cyclic part has zeros alpha^1 .. alpha^(D-2) for the
primitive element alpha of GF(q^m); the extension appends one coordinate (last) that makes every
codeword sum to zero, which lifts the minimum distance to at least D.
"""

import dataclasses as dclass
import math

import numpy as np

from boadd.core.gf import (
    Polynomial,
    cyclotomic_coset,
    field_create,
    field_of_order,
    minimal_polynomial,
    prime_power,
)
from boadd.log import logger

from .linear import LinearCode


def _check_designed_distance(q: int, m: int, designed: int) -> None:
    if m < 1:
        raise ValueError(f"Extension degree m={m} must be positive")
    if not 2 <= designed <= q**m - 1:
        raise ValueError(f"Designed distance D={designed} outside of 2..{q**m - 1}")


def zero_cosets(q: int, m: int, designed: int) -> list[frozenset[int]]:
    """Distinct q-cyclotomic cosets mod q^m - 1 covering the exponents 1 .. D-2, ordered by their
    smallest member.
    """
    _check_designed_distance(q, m, designed)
    n0 = q**m - 1
    cosets = {cyclotomic_coset(i % n0, n0, q, m) for i in range(1, designed - 1)}
    return sorted(cosets, key=min)


def bch_generator_polynomial(q: int, m: int, designed: int) -> Polynomial:
    """g(x) = lcm of the minimal polynomials of alpha^1 .. alpha^(D-2) over GF(q)."""
    p, e = prime_power(q)
    base = field_of_order(q)
    ext = field_create(p, e * m)
    alpha = ext.primitive_element()

    generator = Polynomial(base, (1,))
    for coset in zero_cosets(q, m, designed):
        generator = generator * minimal_polynomial(alpha ** min(coset), base)
    return generator


def bch_ext_code(q: int, m: int, designed: int) -> LinearCode:
    """Builds BCH^ext(F_{q^m}/F_q, D).

    Args:
        q (int): Order of the base field
        m (int): Extension degree, the length is q^m
        designed (int): Designed distance D, 2 <= D <= q^m - 1

    Returns:
        LinearCode: The [q^m, k]_q code, generator columns are the shifts x^j*g(x) extended by
        the parity coordinate
    """
    _check_designed_distance(q, m, designed)
    base = field_of_order(q)
    g = bch_generator_polynomial(q, m, designed)

    n0 = q**m - 1
    k = n0 - g.degree
    cyclic = np.zeros((n0, k), dtype=np.int64)
    for shift in range(k):
        cyclic[shift : shift + g.degree + 1, shift] = g.coeffs

    parity = np.zeros(k, dtype=np.int64)
    for row in cyclic:
        parity = base.sub(parity, row)
    generator = np.vstack([cyclic, parity[None, :]])

    logger.debug(f"Built BCH^ext({q}^{m}/{q}, {designed}) with g of degree {g.degree}, k={k}")
    return LinearCode(base, generator, label=f"bch-ext({q},{m},{designed})")


def bch_dual_dimension(q: int, m: int, designed: int) -> int:
    """Dimension of the dual of BCH^ext(F_{q^m}/F_q, D), i.e. the number of zeros plus one."""
    return sum(len(coset) for coset in zero_cosets(q, m, designed)) + 1


# ----------------------------------------- Dimension bound -------------------------------------- #


@dclass.dataclass(frozen=True)
class BoundCheck:
    applicable: bool
    holds: bool
    bound: int | None
    slack: int | None

    def __str__(self) -> str:
        if not self.applicable:
            return "bound not applicable"
        return f"bound={self.bound} holds={self.holds} slack={self.slack}"


def dimension_bound(q: int, m: int, designed: int) -> int:
    """k >= q^m - m*ceil((q-1)/q * (D-2)) - 1."""
    return q**m - m * math.ceil((q - 1) * (designed - 2) / q) - 1


def bound_applies(q: int, m: int, designed: int) -> bool:
    return designed <= q ** math.ceil(m / 2) + 2


def check_dimension_bound(code: LinearCode, designed: int, m: int, q: int) -> BoundCheck:
    """Compares the dimension of an extended BCH code with the guaranteed lower bound, which
    holds for D <= q^ceil(m/2) + 2.
    """
    if code.q != q or code.n != q**m:
        raise ValueError(f"{code} is not an extended BCH code over GF({q}) of length {q**m}")
    if not bound_applies(q, m, designed):
        return BoundCheck(applicable=False, holds=False, bound=None, slack=None)

    bound = dimension_bound(q, m, designed)
    return BoundCheck(applicable=True, holds=code.k >= bound, bound=bound, slack=code.k - bound)
