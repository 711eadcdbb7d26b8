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
import enum
import math
import sys
from pathlib import Path
from typing import TextIO

from boadd.codes import bch, builtin, hamming, io
from boadd.codes.builtin import Family
from boadd.codes.linear import LinearCode, code_report, dual_code, dual_distance
from boadd.control.pauli_rep import RepresentationMode, build_representation
from boadd.control.schedule import export_schedule, import_schedule, schedule_from_boa, symmetrize
from boadd.control.sim import AverageMode, decoupling_residual, random_local_hamiltonian
from boadd.core.multithreading import ThreadPool
from boadd.design.boa import BoaArray, build_boa, pad_rows, verify_boa
from boadd.design.cayley import Cycle, eulerian_cycle, standard_generators
from boadd.log import logger
from boadd.settings import Environment

from .config import RunConfig
from .table import render_table

DEFAULT_BOA_PATH = Path("boa.txt")
DEFAULT_SCHEDULE_PATH = Path("schedule.json")
PER_TERM_THRESHOLD = 10


class ExitCode(enum.IntEnum):
    SUCCESS = 0
    VERIFICATION_FAILED = 1
    USAGE_ERROR = 2
    BUDGET_EXCEEDED = 3


@dclass.dataclass(frozen=True)
class CodeChoice:
    code: LinearCode
    d: int
    mode: RepresentationMode
    cycle: Cycle | None = None


# ----------------------------------------- Code families ---------------------------------------- #


def _fixture(config: RunConfig) -> CodeChoice | None:
    match config.family:
        case Family.EXAMPLE1:
            cycle = Cycle(builtin.example1().field, builtin.example1_cycle())
            return CodeChoice(builtin.example1(), 2, RepresentationMode.X_ONLY, cycle)
        case Family.EXAMPLE2:
            return CodeChoice(builtin.example2(), 2, RepresentationMode.WEYL)
        case Family.EXAMPLE3:
            return CodeChoice(builtin.example3(), 2, RepresentationMode.X_ONLY)
    return None


def _require(value: int | Path | None, flag: str, family: str) -> int | Path:
    if value is None:
        raise ValueError(f"The {family} family needs {flag}")
    return value


def _hamming_code(config: RunConfig) -> LinearCode:
    if config.locality != 2:
        raise ValueError(
            f"Hamming-dual codes reach strength 2 only, use --family bch for l={config.locality}"
        )
    q = _require(config.field_order, "--d or --q", "hamming")
    n = _require(config.n, "--n", "hamming")
    r = 2
    while hamming.hamming_length(q, r) < n:
        r += 1
    return hamming.hamming_dual_code(q, hamming.hamming_length(q, r))


def _bch_parameters(config: RunConfig) -> tuple[int, int, int]:
    q = _require(config.field_order, "--d or --q", "bch")
    designed = config.designed or config.locality + 1
    if designed < config.locality + 1:
        raise ValueError(f"Designed distance {designed} gives strength below l={config.locality}")

    m = config.m
    if m is None:
        n = _require(config.n, "--m or --n", "bch")
        m = 1
        while q**m < n or q**m - 1 < designed:
            m += 1
    return q, m, designed


def _bch_schedule_code(config: RunConfig) -> LinearCode:
    q, m, designed = _bch_parameters(config)
    return dual_code(bch.bch_ext_code(q, m, designed))


def _user_code(config: RunConfig) -> LinearCode:
    return io.read_generator(_require(config.code_file, "--code-file", "file"))


def _representation_for(config: RunConfig, q: int) -> tuple[int, RepresentationMode]:
    mode = config.representation_mode
    if config.d is not None:
        d = config.d
    elif mode == RepresentationMode.X_ONLY:
        d = q
    else:
        d = math.isqrt(q)
        if d * d != q:
            if config.rep is None:
                logger.info(f"GF({q}) is not of square order, using the x_only representation")
                return q, RepresentationMode.X_ONLY
            raise ValueError(f"GF({q}) is not GF(d^2), pass --diagonal for the x_only mode")

    expected = d if mode == RepresentationMode.X_ONLY else d * d
    if q != expected:
        raise ValueError(f"The {mode.value} representation with d={d} needs q={expected}, not {q}")
    return d, mode


def resolve_code(config: RunConfig) -> CodeChoice:
    family = config.family or (Family.FILE if config.code_file is not None else None)
    if family is None:
        raise ValueError("Choose a code with --family or --code-file")
    if fixture := _fixture(config.model_copy(update={"family": family})):
        return fixture

    match family:
        case Family.HAMMING:
            code = _hamming_code(config)
        case Family.BCH:
            code = _bch_schedule_code(config)
        case Family.FILE:
            code = _user_code(config)
        case _:
            raise ValueError(f"Unsupported family {family}")
    d, mode = _representation_for(config, code.q)
    return CodeChoice(code, d, mode)


def _next_length_hint(config: RunConfig, code: LinearCode) -> str:
    match config.family:
        case Family.HAMMING:
            return "the next Hamming length is picked automatically"
        case Family.BCH:
            q, m, _ = _bch_parameters(config.model_copy(update={"m": None}))
            return f"use --m {m} (length {q**m}) and ignore the extra qudits"
    return f"embed the {config.n} qudits into a larger system with a longer code than {code}"


# ------------------------------------------- Commands ------------------------------------------- #


class Commands:
    def __init__(
        self, environment: Environment, thread_pool: ThreadPool, out: TextIO | None = None
    ):
        self._environment = environment
        self._thread_pool = thread_pool
        self._out = out

    def _print(self, text: str) -> None:
        print(text, file=self._out or sys.stdout)

    def _emit(self, data: bytes, path: Path | None) -> None:
        if path is None:
            self._print(data.decode("utf-8").rstrip("\n"))
        else:
            Path(path).write_bytes(data)

    def cmd_build(self, config: RunConfig) -> ExitCode:
        choice = resolve_code(config)
        code = choice.code
        strength = dual_distance(code) - 1
        if strength < config.locality:
            raise ValueError(
                f"{code} has strength {strength}, below the locality {config.locality}"
            )

        n = config.n or code.n
        if n > code.n:
            raise ValueError(
                f"No {code.label} code serves n={n} qudits ({code} is too short), "
                + _next_length_hint(config, code)
            )

        if choice.cycle is not None:
            cycle, generator_count = choice.cycle, choice.cycle.N // code.size
        else:
            generators = standard_generators(code.q, code.k)
            cycle, generator_count = eulerian_cycle(code.q, code.k, generators), len(generators)

        array = pad_rows(build_boa(code, cycle, min(strength, code.n)), n)
        schedule = schedule_from_boa(array, (choice.d, choice.mode), config.delta)
        if config.symmetrize:
            schedule = symmetrize(schedule)

        boa_path = config.output or DEFAULT_BOA_PATH
        schedule_path = config.schedule_output or DEFAULT_SCHEDULE_PATH
        array.write(boa_path)
        Path(schedule_path).write_bytes(export_schedule(schedule, config.format))

        self._print(f"code: {code}, strength {strength}")
        self._print(f"array: {array}, k={code.k}, lambda={array.lam}")
        self._print(
            f"N = q^k * |S| = {code.q}^{code.k} * {generator_count} = {array.N}"
            + (f", schedule of {schedule.N} slots" if config.symmetrize else "")
        )
        self._print(f"wrote {boa_path} and {schedule_path}")
        return ExitCode.SUCCESS

    def cmd_verify(self, config: RunConfig) -> ExitCode:
        array = BoaArray.read(_require(config.input, "--input", "verify"))
        strength = array.strength if config.strength is None else config.strength
        report = verify_boa(array, strength, self._thread_pool)

        self._print(f"{array}: {report}")
        for failure in report.failures:
            self._print(f"  {failure}")
        return ExitCode.SUCCESS if report.boa_ok else ExitCode.VERIFICATION_FAILED

    def cmd_schedule(self, config: RunConfig) -> ExitCode:
        array = BoaArray.read(_require(config.input, "--input", "schedule"))
        schedule = schedule_from_boa(array, _representation_for(config, array.q), config.delta)
        if config.symmetrize:
            schedule = symmetrize(schedule)
        self._emit(export_schedule(schedule, config.format), config.output)
        return ExitCode.SUCCESS

    def cmd_simulate(self, config: RunConfig) -> ExitCode:
        path = Path(_require(config.input, "--input", "simulate"))
        schedule = import_schedule(path.read_bytes())
        rep = build_representation(schedule.d, schedule.mode)

        mode = config.mode
        if mode is None:
            mode = AverageMode.PER_TERM if schedule.n > PER_TERM_THRESHOLD else AverageMode.FULL
        hamiltonian = random_local_hamiltonian(
            schedule.n, schedule.d, config.locality, config.seed, config.diagonal
        )
        report = decoupling_residual(
            hamiltonian,
            schedule,
            rep,
            mode=mode,
            nodes=config.quadrature,
            thread_pool=self._thread_pool,
            max_dimension=self._environment.max_full_dimension,
        )
        document = report.model_dump_json(by_alias=True, indent=1, exclude={"elapsed"})
        self._emit(document.encode("utf-8"), config.output)
        return ExitCode.SUCCESS

    def cmd_table(self, config: RunConfig) -> ExitCode:
        d = config.d or 2
        self._print(render_table(d, config.localities, config.k_min, config.k_max).rstrip("\n"))
        return ExitCode.SUCCESS

    def cmd_describe(self, config: RunConfig) -> ExitCode:
        family = config.family or (Family.FILE if config.code_file is not None else None)
        match family:
            case Family.BCH:
                q, m, designed = _bch_parameters(config)
                code = bch.bch_ext_code(q, m, designed)
            case Family.HAMMING:
                q = _require(config.field_order, "--d or --q", "hamming")
                code = hamming.hamming_dual_code(q, _require(config.n, "--n", "hamming"))
            case Family.FILE:
                code = _user_code(config)
            case None:
                raise ValueError("Choose a code with --family or --code-file")
            case _:
                code = builtin.builtin_code(family)

        report = code_report(code)
        self._print(f"code: {code}")
        self._print(str(report))
        if family == Family.BCH:
            check = bch.check_dimension_bound(code, designed, m, q)
            self._print(f"dimension {check}")
        self._print("generator:\n" + "\n".join(" ".join(map(str, row)) for row in code.generator))
        return ExitCode.SUCCESS
