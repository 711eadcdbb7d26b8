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


from typing import Callable, Iterable, TypeVar
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor

from boadd.log import logger

T1 = TypeVar("T1")
T2 = TypeVar("T2")


# ------------------------------------------------------------------------------------------------ #
#                                       Interface of ThreadPool                                    #
# ------------------------------------------------------------------------------------------------ #


class ThreadPool(ABC):
    @property
    @abstractmethod
    def workers(self) -> int:
        raise NotImplementedError()

    @abstractmethod
    def map(self, fn: Callable[[T1], T2], items: Iterable[T1]) -> list[T2]:
        """Applies `fn` to every item. Results keep the order of `items`, whatever the order in
        which the jobs finished.
        """
        raise NotImplementedError()


# ------------------------------------------------------------------------------------------------ #
#                                          SerialThreadPool                                        #
# ------------------------------------------------------------------------------------------------ #


class SerialThreadPool(ThreadPool):
    @property
    def workers(self) -> int:
        return 1

    def map(self, fn: Callable[[T1], T2], items: Iterable[T1]) -> list[T2]:
        return [do_job_with_exception_logging(fn, args=(item,), kwargs={}) for item in items]


# ------------------------------------------------------------------------------------------------ #
#                                           PyThreadPool                                           #
# ------------------------------------------------------------------------------------------------ #


class PyThreadPool(ThreadPool):
    def __init__(self, workers: int | None = None):
        super().__init__()
        self._thread_pool = ThreadPoolExecutor(workers, thread_name_prefix="boadd-worker")
        self._workers = self._thread_pool._max_workers  # pylint: disable=protected-access

    def __del__(self):
        if hasattr(self, "_thread_pool"):
            self.shutdown()

    @property
    def workers(self) -> int:
        return self._workers

    def map(self, fn: Callable[[T1], T2], items: Iterable[T1]) -> list[T2]:
        futures = [
            self._thread_pool.submit(do_job_with_exception_logging, fn, (item,), {})
            for item in items
        ]
        return [future.result() for future in futures]

    def shutdown(self) -> None:
        self._thread_pool.shutdown(wait=True)


def resolve_pool(thread_pool: ThreadPool | None) -> ThreadPool:
    return thread_pool if thread_pool is not None else SerialThreadPool()


def do_job_with_exception_logging(job: Callable, args: tuple, kwargs: dict):
    with logger.catch(reraise=True):
        return job(*args, **kwargs)
