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

"""Generator-matrix files: a "q n k" header line followed by n rows of k element encodings."""

from pathlib import Path

import numpy as np

from boadd.core.gf import field_of_order

from .linear import LinearCode


class GeneratorFileError(ValueError):
    pass


def parse_generator(text: str, label: str = "user") -> LinearCode:
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 3:
        raise GeneratorFileError("Expected a 'q n k' header line")

    try:
        q, n, k = (int(token) for token in lines[0])
        rows = [[int(token) for token in line] for line in lines[1:]]
    except ValueError as err:
        raise GeneratorFileError(f"Non-integer entry: {err}") from err

    if len(rows) != n or any(len(row) != k for row in rows):
        raise GeneratorFileError(f"Expected {n} rows of {k} entries")
    try:
        field = field_of_order(q)
        return LinearCode(field, np.array(rows, dtype=np.int64).reshape(n, k), label=label)
    except ValueError as err:
        raise GeneratorFileError(str(err)) from err


def read_generator(path: Path) -> LinearCode:
    return parse_generator(Path(path).read_text(encoding="utf-8"), label=f"file:{Path(path).name}")


def format_generator(code: LinearCode) -> str:
    lines = [f"{code.q} {code.n} {code.k}"]
    lines += [" ".join(str(int(entry)) for entry in row) for row in code.generator]
    return "\n".join(lines) + "\n"


def write_generator(code: LinearCode, path: Path) -> None:
    Path(path).write_text(format_generator(code), encoding="utf-8")
