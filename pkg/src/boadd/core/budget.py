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


CODEWORD_ENUMERATION_LIMIT = 2**24
SUBSET_ENUMERATION_LIMIT = 10**8
GROUP_AVERAGE_LIMIT = 2**20
TENSOR_DIMENSION_LIMIT = 2**14
LOCAL_DIMENSION_LIMIT = 256
CYCLE_LENGTH_LIMIT = 10**7


class BudgetExceededError(ValueError):
    def __init__(self, what: str, value: int, limit: int, hint: str = ""):
        message = f"{what} needs {value} steps, the limit is {limit}"
        if hint:
            message += f" ({hint})"
        super().__init__(message)

        self.what = what
        self.value = value
        self.limit = limit


def check_budget(what: str, value: int, limit: int, hint: str = "") -> None:
    if value > limit:
        raise BudgetExceededError(what, value, limit, hint)
