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


import itertools

import numpy as np

from boadd.core.gf import field_of_order
from boadd.log import logger

from .linear import LinearCode


def hamming_length(q: int, r: int) -> int:
    return (q**r - 1) // (q - 1)


def hamming_dimension(q: int, n: int) -> int | None:
    """k = log_q((q-1)n + 1) when that is an integer >= 2, None otherwise."""
    r = 2
    while hamming_length(q, r) < n:
        r += 1
    return r if hamming_length(q, r) == n else None


def projective_points(q: int, r: int) -> list[tuple[int, ...]]:
    """One representative per 1-dimensional subspace of F_q^r, normalized so that the first
    nonzero coordinate is 1, in lexicographic order.
    """
    points = [
        (0,) * lead + (1,) + tail
        for lead in range(r)
        for tail in itertools.product(range(q), repeat=r - lead - 1)
    ]
    return sorted(points)


def hamming_dual_code(q: int, n: int) -> LinearCode:
    """The [n, r]_q code dual to the Hamming code of length n = (q^r - 1)/(q - 1): the rows of its
    generator are the projective points of PG(r-1, q), so every two rows are independent and the
    dual distance is 3.
    """
    field = field_of_order(q)
    r = hamming_dimension(q, n)
    if r is None:
        raise ValueError(f"n={n} is not of the form (q^r - 1)/(q - 1), r >= 2, for q={q}")

    generator = np.array(projective_points(q, r), dtype=np.int64)
    assert generator.shape == (n, r)

    logger.debug(f"Built the Hamming-dual [{n},{r}]_{q} code")
    return LinearCode(field, generator, label="hamming-dual")
