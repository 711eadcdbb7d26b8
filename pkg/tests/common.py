import functools

from boadd.codes.builtin import example1, example1_cycle, example2
from boadd.codes.hamming import hamming_dual_code
from boadd.control.pauli_rep import RepresentationMode, build_representation
from boadd.control.schedule import ControlSchedule, schedule_from_boa
from boadd.design.boa import BoaArray, build_boa, pad_rows
from boadd.design.cayley import Cycle, eulerian_cycle, standard_generators

SEEDS = range(10)
RESIDUAL_TOLERANCE = 1e-10
# smallest residual of an Example-1 schedule with one column deleted is about 3.5e-2
NEGATIVE_CONTROL_FLOOR = 1e-2


@functools.lru_cache
def example1_boa() -> BoaArray:
    code = example1()
    return build_boa(code, Cycle(code.field, example1_cycle()))


@functools.lru_cache
def example2_boa() -> BoaArray:
    return build_boa(example2(), eulerian_cycle(4, 2, standard_generators(4, 2)))


@functools.lru_cache
def qutrit_boa(n: int = 4) -> BoaArray:
    code = hamming_dual_code(9, 10)
    return pad_rows(build_boa(code, eulerian_cycle(9, 2, standard_generators(9, 2))), n)


@functools.lru_cache
def example1_schedule() -> ControlSchedule:
    return schedule_from_boa(example1_boa(), (2, RepresentationMode.X_ONLY))


@functools.lru_cache
def example2_schedule() -> ControlSchedule:
    return schedule_from_boa(example2_boa(), (2, RepresentationMode.WEYL))


@functools.lru_cache
def qutrit_schedule() -> ControlSchedule:
    return schedule_from_boa(qutrit_boa(), (3, RepresentationMode.WEYL))


X_ONLY_QUBIT = build_representation(2, RepresentationMode.X_ONLY)
WEYL_QUBIT = build_representation(2, RepresentationMode.WEYL)
WEYL_QUTRIT = build_representation(3, RepresentationMode.WEYL)
