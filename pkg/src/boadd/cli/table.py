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

"""Schedule lengths N = q^k * 2ke per dimension k and the qudit counts the constructive code
families reach with them.
"""

from typing import Sequence

from boadd.design.lengths import bch_ranges, hamming_range, table_length

MAX_K = {2: 8, 3: 7}
DATABASE_CELL = "db"
LEGEND = "db = external database, not reproduced"


def table_ks(d: int, k_min: int = 2, k_max: int | None = None) -> range:
    if d not in MAX_K:
        raise ValueError(f"Tables are available for d in {sorted(MAX_K)}, got d={d}")
    k_max = MAX_K[d] if k_max is None else k_max
    if not 2 <= k_min <= k_max <= MAX_K[d]:
        raise ValueError(f"k range {k_min}..{k_max} outside of 2..{MAX_K[d]} for d={d}")
    return range(k_min, k_max + 1)


def table_rows(d: int, localities: Sequence[int], ks: range) -> list[list[str]]:
    """Header row of lengths followed by one row of n-ranges per locality."""
    q = d * d
    rows = [["l \\ N"] + [str(table_length(d, k)) for k in ks]]
    for locality in localities:
        if locality < 2:
            raise ValueError(f"Locality {locality} must be at least 2")
        if locality == 2:
            cells = ["{}-{}".format(*hamming_range(q, k)) for k in ks]
        else:
            ranges = bch_ranges(q, ks, locality)
            cells = [
                DATABASE_CELL if ranges[k] is None else "{}-{}".format(*ranges[k]) for k in ks
            ]
        rows.append([str(locality)] + cells)
    return rows


def render_table(
    d: int, localities: Sequence[int], k_min: int = 2, k_max: int | None = None
) -> str:
    rows = table_rows(d, localities, table_ks(d, k_min, k_max))
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows]
    lines.append(LEGEND)
    return "\n".join(lines) + "\n"
