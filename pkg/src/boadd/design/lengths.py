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

"""Schedule-length bookkeeping for the constructive code families."""

from boadd.codes.bch import bch_dual_dimension
from boadd.codes.hamming import hamming_length
from boadd.core.gf import prime_power

# bch_dual_dimension is pure integer arithmetic, the cap only stops the search
_MAX_BCH_LENGTH = 2**24


def boa_length(q: int, k: int, generator_count: int) -> int:
    """N = q^k * |S|."""
    return q**k * generator_count


def table_length(d: int, k: int) -> int:
    """N = q^k * 2ke for q = d^2 and d = p^e, i.e. the standard generating set of F_q^k."""
    _, e = prime_power(d)
    return boa_length(d * d, k, 2 * k * e)


def hamming_range(q: int, k: int) -> tuple[int, int]:
    """Qudit counts served by the Hamming-dual [n, k]_q codes: past the range of k-1, up to
    (q^k - 1)/(q - 1).
    """
    if k < 2:
        raise ValueError(f"Hamming-dual codes need k >= 2, got {k}")
    return hamming_length(q, k - 1) + 1, hamming_length(q, k)


def bch_length(q: int, k: int, locality: int) -> int | None:
    """Largest q^m such that the dual of BCH^ext(F_{q^m}/F_q, l+1) has dimension at most k."""
    designed = locality + 1
    best = None
    m = 1
    while q**m <= _MAX_BCH_LENGTH:
        if designed <= q**m - 1:
            if bch_dual_dimension(q, m, designed) > k:
                break
            best = q**m
        m += 1
    return best


def bch_ranges(q: int, ks: range, locality: int) -> dict[int, tuple[int, int] | None]:
    """Consecutive constructive n-ranges per dimension k, each one starting past the previous."""
    ranges = dict[int, tuple[int, int] | None]()
    previous = locality - 1
    for k in ks:
        stop = bch_length(q, k, locality)
        start = max(locality, previous + 1)
        if stop is None or stop < start:
            ranges[k] = None
            continue
        ranges[k] = (start, stop)
        previous = stop
    return ranges


def length_bound(d: int, n: int, locality: int) -> int:
    """2qe * n'^(l-1) * [(l-1) m + 1] for n' = q^m >= n, the length guaranteed by embedding the
    qudits into q^m of them and using the dual of BCH^ext(F_{q^m}/F_q, l+1).
    """
    _, e = prime_power(d)
    q = d * d
    m = 1
    while q**m < n:
        m += 1
    return 2 * q * e * (q**m) ** (locality - 1) * ((locality - 1) * m + 1)
