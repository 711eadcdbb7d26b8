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

import argparse
import sys
from pathlib import Path
from typing import Sequence

import pydantic
from dependency_injector import containers, providers

from boadd import core
from boadd.cli.commands import Commands, ExitCode
from boadd.cli.config import RunConfig
from boadd.codes.builtin import Family
from boadd.control.pauli_rep import RepresentationMode
from boadd.control.schedule import ExportFormat
from boadd.control.sim import AverageMode
from boadd.core.budget import BudgetExceededError
from boadd.log import logger
from boadd.settings import PROJECT_NAME, PROJECT_VERSION, Environment


class Container(containers.DeclarativeContainer):
    environment = providers.Singleton(Environment)

    # -------------------------------------- Multithreading -------------------------------------- #

    thread_pool = providers.Singleton(
        core.multithreading.PyThreadPool,
        workers=environment.provided.threads,
    )

    # ----------------------------------------- Commands ----------------------------------------- #

    commands = providers.Factory(
        Commands,
        environment=environment,
        thread_pool=thread_pool,
    )


# -------------------------------------------- Parser -------------------------------------------- #


def _add_code_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=[family.value for family in Family])
    parser.add_argument("--code-file", "--file", dest="code_file", type=Path)
    parser.add_argument("--d", type=int, help="qudit dimension")
    parser.add_argument("--q", type=int, help="field order, d or d^2")
    parser.add_argument("--m", type=int, help="extension degree of BCH codes")
    parser.add_argument("--designed", type=int, help="designed distance of BCH codes")
    parser.add_argument("--n", type=int, help="number of qudits")


def _add_schedule_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rep", choices=[mode.value for mode in RepresentationMode])
    parser.add_argument("--diagonal", action="store_true", help="x_only representation")
    parser.add_argument("--delta", type=float, help="slot duration")
    parser.add_argument("--symmetrize", action="store_true")
    parser.add_argument("--format", choices=[fmt.value for fmt in ExportFormat])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="JSON file with default arguments")
    common.add_argument("--output", type=Path)

    parser = argparse.ArgumentParser(
        prog=PROJECT_NAME,
        description="Bounded-strength decoupling schemes from balanced-cycle orthogonal arrays",
    )
    parser.add_argument("--version", action="version", version=f"{PROJECT_NAME} {PROJECT_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def subparser(name: str, help_text: str, *parents: argparse.ArgumentParser):
        return subparsers.add_parser(
            name, help=help_text, parents=[common, *parents], argument_default=argparse.SUPPRESS
        )

    build = subparser("build", "construct a BOA and its control schedule")
    _add_code_arguments(build)
    _add_schedule_arguments(build)
    build.add_argument("--locality", type=int)
    build.add_argument("--schedule-output", dest="schedule_output", type=Path)

    verify = subparser("verify", "check the OA and balanced-cycle properties of a BOA file")
    verify.add_argument("--input", type=Path, required=True)
    verify.add_argument("--strength", type=int)

    schedule = subparser("schedule", "convert a BOA file into a control schedule")
    schedule.add_argument("--input", type=Path, required=True)
    schedule.add_argument("--d", type=int, help="qudit dimension")
    _add_schedule_arguments(schedule)

    simulate = subparser("simulate", "average a random local Hamiltonian over a schedule")
    simulate.add_argument("--input", type=Path, required=True)
    simulate.add_argument("--locality", type=int)
    simulate.add_argument("--seed", type=int)
    simulate.add_argument("--diagonal", action="store_true", help="diagonal terms only")
    simulate.add_argument("--mode", choices=[mode.value for mode in AverageMode] + ["per-term"])
    simulate.add_argument("--quadrature", type=int, help="Gauss-Legendre nodes per slot")

    table = subparser("table", "print the schedule length table")
    table.add_argument("--d", type=int)
    table.add_argument("--localities", type=int, nargs="+")
    table.add_argument("--k-min", dest="k_min", type=int)
    table.add_argument("--k-max", dest="k_max", type=int)

    codes = subparser("codes", "inspect linear codes")
    codes_subparsers = codes.add_subparsers(dest="codes_command", required=True)
    describe = codes_subparsers.add_parser(
        "describe",
        help="print parameters and dual distance of a code",
        parents=[common],
        argument_default=argparse.SUPPRESS,
    )
    _add_code_arguments(describe)
    describe.add_argument("--locality", type=int)

    return parser


_COMMANDS = {
    "build": Commands.cmd_build,
    "verify": Commands.cmd_verify,
    "schedule": Commands.cmd_schedule,
    "simulate": Commands.cmd_simulate,
    "table": Commands.cmd_table,
    "codes": Commands.cmd_describe,
}


def run(argv: Sequence[str] | None = None, container: Container | None = None) -> int:
    try:
        arguments = vars(build_parser().parse_args(argv))
    except SystemExit as exit_request:
        return ExitCode.SUCCESS if exit_request.code in (0, None) else ExitCode.USAGE_ERROR

    container = container or Container()
    try:
        environment = container.environment()
    except pydantic.ValidationError as err:
        print(f"Invalid environment: {err}", file=sys.stderr)
        return ExitCode.USAGE_ERROR
    logger.initialize(name="Main", level=environment.log_level)

    command = arguments.pop("command")
    arguments.pop("codes_command", None)
    config_path = arguments.pop("config", None)
    try:
        config = RunConfig.load(config_path, arguments)
        return _COMMANDS[command](container.commands(), config)
    except BudgetExceededError as err:
        logger.error(str(err))
        return ExitCode.BUDGET_EXCEEDED
    except (ValueError, OSError) as err:
        logger.error(str(err))
        return ExitCode.USAGE_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
