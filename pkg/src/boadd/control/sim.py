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

"""First-order average Hamiltonian of a piecewise control schedule.

Every slot runs constant single-qudit generators h_b (u_b(t) = exp(-i h_b t)) chosen so that
u_b(delta) equals U_b up to a phase. The slot integral (1/delta) int u_b^dagger M u_b is done
analytically in the product eigenbasis of the slot's generators; a Gauss-Legendre rule over the
same integral serves as an independent oracle.
"""

from __future__ import annotations

import dataclasses as dclass
import enum
import functools
import itertools
import math
import time
from typing import Literal, Sequence

import numpy as np
import pydantic
import scipy.linalg

from boadd.core.budget import LOCAL_DIMENSION_LIMIT, TENSOR_DIMENSION_LIMIT, check_budget
from boadd.core.linalg import (
    ALGEBRAIC_TOLERANCE,
    Complex,
    conjugate_by_product,
    embed_operator,
    is_hermitian,
    random_diagonal,
    random_hermitian,
    spectral_norm,
)
from boadd.core.multithreading import ThreadPool, resolve_pool
from boadd.design.cayley import check_balanced
from boadd.log import log_once, logger

from .pauli_rep import Representation, group_average
from .schedule import ControlSchedule

DEGENERATE_GAP = 1e-12
MAX_RANDOM_TERMS = 50


class AverageMode(enum.Enum):
    FULL = "full"
    PER_TERM = "per_term"

    @staticmethod
    def parse(value: AverageMode | str) -> AverageMode:
        if isinstance(value, AverageMode):
            return value
        return AverageMode(value.replace("-", "_"))


# ------------------------------------------------------------------------------------------------ #
#                                          Hamiltonians                                            #
# ------------------------------------------------------------------------------------------------ #


@dclass.dataclass(frozen=True)
class HamiltonianTerm:
    support: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=Complex, copy=True)
        matrix.setflags(write=False)
        object.__setattr__(self, "support", tuple(int(site) for site in self.support))
        object.__setattr__(self, "matrix", matrix)

    @property
    def arity(self) -> int:
        return len(self.support)


@dclass.dataclass(frozen=True)
class LocalHamiltonian:
    """H = sum_k h_k, every h_k Hermitian, traceless and acting on the qudits of its support."""

    n: int
    d: int
    terms: tuple[HamiltonianTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for term in self.terms:
            support = term.support
            if list(support) != sorted(set(support)) or not support:
                raise ValueError(f"Support {support} is not a sorted list of distinct qudits")
            if support[0] < 0 or support[-1] >= self.n:
                raise ValueError(f"Support {support} outside of qudits 0..{self.n - 1}")

            dim = self.d**term.arity
            if term.matrix.shape != (dim, dim):
                raise ValueError(f"Term on {support} has shape {term.matrix.shape}, not {dim}")
            scale = max(1.0, float(np.max(np.abs(term.matrix), initial=0.0)))
            if not is_hermitian(term.matrix, ALGEBRAIC_TOLERANCE * scale):
                raise ValueError(f"Term on {support} is not Hermitian")
            if abs(np.trace(term.matrix)) > ALGEBRAIC_TOLERANCE * scale * dim:
                raise ValueError(f"Term on {support} is not traceless")

    def __add__(self, other: LocalHamiltonian) -> LocalHamiltonian:
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("Hamiltonians act on different systems")
        return LocalHamiltonian(self.n, self.d, self.terms + other.terms)

    def __rmul__(self, factor: float) -> LocalHamiltonian:
        terms = tuple(HamiltonianTerm(term.support, factor * term.matrix) for term in self.terms)
        return LocalHamiltonian(self.n, self.d, terms)

    @property
    def locality(self) -> int:
        return max((term.arity for term in self.terms), default=0)

    @property
    def dimension(self) -> int:
        return self.d**self.n

    def assemble(self, max_dimension: int = TENSOR_DIMENSION_LIMIT) -> np.ndarray:
        check_budget(
            "Full-space dimension", self.dimension, max_dimension, hint="use the per_term mode"
        )
        full = np.zeros((self.dimension, self.dimension), dtype=Complex)
        for term in self.terms:
            full += embed_operator(term.matrix, term.support, self.n, self.d)
        return full


def random_local_hamiltonian(
    n: int, d: int, locality: int, seed: int, diagonal_only: bool = False
) -> LocalHamiltonian:
    """Seeded random l-local Hamiltonian with one term per l-subset of qudits (all subsets when
    there are at most 50 of them, otherwise 50 distinct random ones).

    Args:
        n (int): Qudit count
        d (int): Qudit dimension
        locality (int): Size of every support
        seed (int): Seed of the generator
        diagonal_only (bool, optional): Real diagonal terms only. Defaults to False.

    Returns:
        LocalHamiltonian: Hermitian traceless terms, standard complex normal entries before the
        projection
    """
    if not 1 <= locality <= n:
        raise ValueError(f"Locality {locality} outside of 1..{n}")
    check_budget("Local term dimension", d**locality, LOCAL_DIMENSION_LIMIT)

    rng = np.random.default_rng(seed)
    subsets = list(itertools.combinations(range(n), locality))
    if len(subsets) > MAX_RANDOM_TERMS:
        chosen = rng.choice(len(subsets), size=MAX_RANDOM_TERMS, replace=False)
        subsets = [subsets[idx] for idx in sorted(chosen)]

    dim = d**locality
    sample = random_diagonal if diagonal_only else random_hermitian
    terms = tuple(HamiltonianTerm(subset, sample(rng, dim)) for subset in subsets)
    return LocalHamiltonian(n, d, terms)


# ------------------------------------------------------------------------------------------------ #
#                                        Control generators                                        #
# ------------------------------------------------------------------------------------------------ #


@dclass.dataclass(frozen=True)
class SingleQuditGenerator:
    hamiltonian: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@functools.lru_cache(maxsize=1024)
def single_qudit_generator(rep: Representation, label: int, delta: float) -> SingleQuditGenerator:
    """Traceless h with exp(-i h delta) = U_label up to a phase, from the principal logarithm
    (eigenphases in (-pi, pi]).
    """
    unitary = rep.table[label]
    schur, vectors = scipy.linalg.schur(unitary, output="complex")
    phases = np.angle(np.diag(schur))
    phases = np.where(phases <= -np.pi + DEGENERATE_GAP, np.pi, phases)

    eigenvalues = -phases / delta
    eigenvalues -= eigenvalues.mean()
    hamiltonian = (vectors * eigenvalues[None, :]) @ vectors.conj().T

    for array in (hamiltonian, eigenvalues, vectors):
        array.setflags(write=False)
    return SingleQuditGenerator(hamiltonian, eigenvalues, vectors)


@dclass.dataclass(frozen=True)
class ControlGenerator:
    label: tuple[int, ...]
    delta: float
    generators: tuple[SingleQuditGenerator, ...]

    @property
    def hamiltonians(self) -> np.ndarray:
        return np.stack([generator.hamiltonian for generator in self.generators])

    def unitary(self, time_point: float) -> list[np.ndarray]:
        """Per-qudit u_(b_i)(t) = exp(-i h_(b_i) t)."""
        return [scipy.linalg.expm(-1j * h * time_point) for h in self.hamiltonians]


def control_generator(rep: Representation, label: Sequence[int], delta: float) -> ControlGenerator:
    if delta <= 0:
        raise ValueError(f"Slot duration {delta} must be positive")
    values = tuple(int(value) for value in rep.field.validate(np.asarray(label)).ravel())
    generators = tuple(single_qudit_generator(rep, value, float(delta)) for value in values)
    return ControlGenerator(values, float(delta), generators)


# ------------------------------------------------------------------------------------------------ #
#                                         Slot integrals                                           #
# ------------------------------------------------------------------------------------------------ #


def _phase_factors(eigenvalues: Sequence[np.ndarray], delta: float) -> np.ndarray:
    """(exp(i x) - 1)/(i x) with x = (L_r - L_c) delta for the product eigenvalues L."""
    combined = functools.reduce(
        lambda acc, values: (acc[:, None] + values[None, :]).ravel(), eigenvalues, np.zeros(1)
    )
    gaps = combined[:, None] - combined[None, :]
    arguments = 1j * gaps * delta
    degenerate = np.abs(gaps) < DEGENERATE_GAP
    safe = np.where(degenerate, 1.0, arguments)
    return np.where(degenerate, 1.0, (np.exp(safe) - 1.0) / safe)


def _frame(rep: Representation, labels: Sequence[int]) -> list[np.ndarray | None]:
    return [None if label == 0 else rep.table[label] for label in labels]


def slot_average(rep: Representation, matrix: np.ndarray, pulse: Sequence[int], delta: float):
    """F_b(M) = (1/delta) int_0^delta u_b(t)^dagger M u_b(t) dt, exactly."""
    if not any(pulse):
        return np.asarray(matrix, dtype=Complex)

    generators = [single_qudit_generator(rep, int(label), delta) for label in pulse]
    bases = [None if label == 0 else gen.eigenvectors for label, gen in zip(pulse, generators)]
    rotated = conjugate_by_product(matrix, bases, rep.d)
    rotated = rotated * _phase_factors([gen.eigenvalues for gen in generators], delta)
    inverse = [None if basis is None else basis.conj().T for basis in bases]
    return conjugate_by_product(rotated, inverse, rep.d)


def slot_average_quadrature(
    rep: Representation,
    matrix: np.ndarray,
    pulse: Sequence[int],
    delta: float,
    nodes: int,
    backwards: bool = False,
) -> np.ndarray:
    """F_b(M) by a `nodes`-point Gauss-Legendre rule; `backwards` runs u_b(delta - t)."""
    generator = control_generator(rep, pulse, delta)
    points, weights = np.polynomial.legendre.leggauss(nodes)

    result = np.zeros_like(np.asarray(matrix, dtype=Complex))
    for point, weight in zip(points, weights):
        time_point = delta * (point + 1) / 2
        if backwards:
            time_point = delta - time_point
        unitaries = generator.unitary(time_point)
        site_ops = [None if label == 0 else u for label, u in zip(pulse, unitaries)]
        result += weight / 2 * conjugate_by_product(matrix, site_ops, rep.d)
    return result


def _slot_groups(
    schedule: ControlSchedule, rows: Sequence[int], by_direction: bool
) -> dict[tuple, int]:
    """Distinct (anchor, pulse, backwards) triples of the restricted slots, in first-occurrence
    order, with their multiplicities.
    """
    anchors = schedule.columns[list(rows)].T.tolist()
    pulses = schedule.pulse_labels[list(rows)].T.tolist()
    backwards = schedule.reversed.tolist() if by_direction else [False] * schedule.N

    groups = dict[tuple, int]()
    for anchor, pulse, flag in zip(anchors, pulses, backwards):
        key = (tuple(anchor), tuple(pulse), flag)
        groups[key] = groups.get(key, 0) + 1
    return groups


def _schedule_average(
    rep: Representation,
    matrix: np.ndarray,
    schedule: ControlSchedule,
    rows: Sequence[int],
    nodes: int | None,
) -> np.ndarray:
    groups = _slot_groups(schedule, rows, by_direction=nodes is not None)

    result = np.zeros_like(np.asarray(matrix, dtype=Complex))
    for (anchor, pulse, backwards), count in groups.items():
        if nodes is None:
            averaged = slot_average(rep, matrix, pulse, schedule.delta)
        else:
            averaged = slot_average_quadrature(
                rep, matrix, pulse, schedule.delta, nodes, backwards
            )
        result += count * conjugate_by_product(averaged, _frame(rep, anchor), rep.d)
    return result / schedule.N


def _check_compatible(
    hamiltonian: LocalHamiltonian, schedule: ControlSchedule, rep: Representation
) -> None:
    if (rep.d, rep.mode) != (schedule.d, schedule.mode) or rep.q != schedule.q:
        raise ValueError(f"{rep} does not match the representation of the {schedule}")
    if hamiltonian.d != rep.d or hamiltonian.n != schedule.n:
        raise ValueError(
            f"Hamiltonian on {hamiltonian.n} qudits of dimension {hamiltonian.d} does not match "
            f"the {schedule} with d={rep.d}"
        )


# ------------------------------------------------------------------------------------------------ #
#                                        Average Hamiltonian                                       #
# ------------------------------------------------------------------------------------------------ #


def term_averages(
    hamiltonian: LocalHamiltonian,
    schedule: ControlSchedule,
    rep: Representation,
    nodes: int | None = None,
    thread_pool: ThreadPool | None = None,
) -> list[np.ndarray]:
    """Average of every term h_k, restricted to its support: the controls acting elsewhere
    commute with h_k and cancel, so only the rows of the support matter.
    """
    _check_compatible(hamiltonian, schedule, rep)

    def average_term(term: HamiltonianTerm) -> np.ndarray:
        return _schedule_average(rep, term.matrix, schedule, term.support, nodes)

    return resolve_pool(thread_pool).map(average_term, hamiltonian.terms)


def _assemble_terms(hamiltonian: LocalHamiltonian, averages: list[np.ndarray]) -> np.ndarray:
    full = np.zeros((hamiltonian.dimension, hamiltonian.dimension), dtype=Complex)
    for term, average in zip(hamiltonian.terms, averages):
        full += embed_operator(average, term.support, hamiltonian.n, hamiltonian.d)
    return full


def average_hamiltonian(
    hamiltonian: LocalHamiltonian,
    schedule: ControlSchedule,
    rep: Representation,
    mode: AverageMode | str = AverageMode.FULL,
    thread_pool: ThreadPool | None = None,
    max_dimension: int = TENSOR_DIMENSION_LIMIT,
) -> np.ndarray:
    """H^(0) = (1/T_c) int_0^T_c U_c(t)^dagger H U_c(t) dt as a d^n x d^n matrix.

    Args:
        hamiltonian (LocalHamiltonian): System Hamiltonian
        schedule (ControlSchedule): Executed schedule
        rep (Representation): Representation the schedule labels refer to
        mode (AverageMode | str, optional): Conjugate the assembled H (full) or every term on its
            support only (per_term). Defaults to full.
        thread_pool (ThreadPool | None, optional): Distributes the terms in the per_term mode
        max_dimension (int, optional): Budget for d^n

    Returns:
        np.ndarray: The first-order average Hamiltonian
    """
    return _average_hamiltonian(hamiltonian, schedule, rep, mode, None, thread_pool, max_dimension)


def average_hamiltonian_quadrature(
    hamiltonian: LocalHamiltonian,
    schedule: ControlSchedule,
    rep: Representation,
    nodes: int,
    mode: AverageMode | str = AverageMode.FULL,
    thread_pool: ThreadPool | None = None,
    max_dimension: int = TENSOR_DIMENSION_LIMIT,
) -> np.ndarray:
    """Same as `average_hamiltonian` with every slot integral replaced by a Gauss-Legendre rule."""
    if nodes < 1:
        raise ValueError(f"Quadrature needs at least one node, got {nodes}")
    return _average_hamiltonian(hamiltonian, schedule, rep, mode, nodes, thread_pool, max_dimension)


def _average_hamiltonian(
    hamiltonian: LocalHamiltonian,
    schedule: ControlSchedule,
    rep: Representation,
    mode: AverageMode | str,
    nodes: int | None,
    thread_pool: ThreadPool | None,
    max_dimension: int,
) -> np.ndarray:
    _check_compatible(hamiltonian, schedule, rep)
    check_budget(
        "Full-space dimension", hamiltonian.dimension, max_dimension, hint="use the per_term mode"
    )

    match AverageMode.parse(mode):
        case AverageMode.FULL:
            full = hamiltonian.assemble(max_dimension)
            return _schedule_average(rep, full, schedule, range(schedule.n), nodes)
        case AverageMode.PER_TERM:
            averages = term_averages(hamiltonian, schedule, rep, nodes, thread_pool)
            return _assemble_terms(hamiltonian, averages)


# ------------------------------------------------------------------------------------------------ #
#                                            Residuals                                             #
# ------------------------------------------------------------------------------------------------ #


class ResidualReport(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True, populate_by_name=True)

    residual: float = pydantic.Field(ge=0)
    per_term: list[float]
    triangle_slack: float
    method: Literal["eigenbasis_exact", "quadrature"]
    mode: Literal["full", "per_term"]
    norm_basis: Literal["full", "per_term"]
    n: int
    slots: int = pydantic.Field(alias="N")
    terms: int
    elapsed: float = pydantic.Field(ge=0)


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator > 0 else 0.0


def decoupling_residual(
    hamiltonian: LocalHamiltonian,
    schedule: ControlSchedule,
    rep: Representation,
    mode: AverageMode | str = AverageMode.FULL,
    nodes: int | None = None,
    thread_pool: ThreadPool | None = None,
    max_dimension: int = TENSOR_DIMENSION_LIMIT,
) -> ResidualReport:
    """||H^(0)|| / ||H|| (spectral norms) with the per-term breakdown ||H_k^(0)|| / ||h_k||.

    When d^n exceeds `max_dimension` in the per_term mode the norms cannot be taken on the
    assembled operators and the ratio sum_k ||H_k^(0)|| / sum_k ||h_k|| is reported instead.
    """
    started = time.perf_counter()
    mode = AverageMode.parse(mode)
    _check_compatible(hamiltonian, schedule, rep)

    averages = term_averages(hamiltonian, schedule, rep, nodes, thread_pool)
    term_norms = [spectral_norm(term.matrix) for term in hamiltonian.terms]
    average_norms = [spectral_norm(average) for average in averages]
    per_term = [_ratio(avg, norm) for avg, norm in zip(average_norms, term_norms)]

    full_fits = hamiltonian.dimension <= max_dimension
    if mode == AverageMode.FULL or full_fits:
        if mode == AverageMode.FULL:
            average = _average_hamiltonian(
                hamiltonian, schedule, rep, mode, nodes, thread_pool, max_dimension
            )
        else:
            average = _assemble_terms(hamiltonian, averages)
        norm = spectral_norm(hamiltonian.assemble(max_dimension))
        residual = _ratio(spectral_norm(average), norm)
        triangle_slack = _ratio(sum(average_norms), norm) - residual
        norm_basis = "full"
    else:
        log_once(logger.warning, "Residual normalized per term: d^n exceeds the full budget")
        residual = _ratio(sum(average_norms), sum(term_norms))
        triangle_slack = 0.0
        norm_basis = "per_term"

    report = ResidualReport(
        residual=residual,
        per_term=per_term,
        triangle_slack=triangle_slack,
        method="eigenbasis_exact" if nodes is None else "quadrature",
        mode=mode.value,
        norm_basis=norm_basis,
        n=hamiltonian.n,
        slots=schedule.N,
        terms=len(hamiltonian.terms),
        elapsed=time.perf_counter() - started,
    )
    logger.info(
        f"Residual {report.residual:.3e} ({report.mode}, {report.method}) for the {schedule}, "
        f"{report.terms} terms in {report.elapsed:.2f}s"
    )
    return report


# ------------------------------------------------------------------------------------------------ #
#                                      Balanced-cycle averaging                                    #
# ------------------------------------------------------------------------------------------------ #


def balanced_cycle_average(
    matrix: np.ndarray, vertices: np.ndarray, rep: Representation, delta: float = 1.0
) -> np.ndarray:
    """Runs the balanced cycle g_0, g_1, ... over GF(q)^l directly: the average equals
    Pi_G(F_S(M)) with F_S(M) = sum_s mu_s F_s(M) / sum_s mu_s.

    Args:
        matrix (np.ndarray): Operator on l qudits
        vertices (np.ndarray): N x l balanced cycle starting at zero
        rep (Representation): Representation of GF(q)
        delta (float, optional): Slot duration. Defaults to 1.0.

    Returns:
        np.ndarray: The first-order average of `matrix`
    """
    report = check_balanced(rep.field, vertices)
    if not report.balanced:
        raise ValueError(f"The cycle is not balanced: {report.problems or report.violations[:3]}")

    arity = np.asarray(vertices).shape[1]
    total = sum(report.mu.values())
    weighted = sum(
        mu * slot_average(rep, matrix, label, delta) for label, mu in report.mu.items()
    )
    assert math.isclose(total, np.asarray(vertices).shape[0] / rep.q**arity)
    return group_average(rep, arity, weighted / total)
