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

"""Cycles on the Cayley graph of the additive group F_q^k.

Vertices are vectors over GF(q); an edge labeled s joins g and g + s. Vectors are packed into
integers (coordinate 0 least significant, base q) wherever whole vertex sets are processed.
"""

from __future__ import annotations

import dataclasses as dclass
from typing import NamedTuple

import numpy as np

from boadd.core.budget import CYCLE_LENGTH_LIMIT, check_budget
from boadd.core.gf import FiniteField, field_create, field_of_order
from boadd.log import logger


# --------------------------------------------- Utils -------------------------------------------- #


def pack(field: FiniteField, vectors: np.ndarray) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.int64)
    return vectors @ (field.q ** np.arange(vectors.shape[-1], dtype=np.int64))


def unpack(field: FiniteField, codes: np.ndarray, k: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    return (codes[..., None] // (field.q ** np.arange(k, dtype=np.int64))) % field.q


def all_vectors(field: FiniteField, k: int) -> np.ndarray:
    return unpack(field, np.arange(field.q**k, dtype=np.int64), k)


def generates(field: FiniteField, vectors: np.ndarray, k: int) -> bool:
    """Whether `vectors` generate F_q^k as an additive group, i.e. their flattened coordinates
    over GF(p) span a space of dimension k*e.
    """
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, k)
    if vectors.shape[0] == 0:
        return False
    flat = field.coords(vectors).reshape(vectors.shape[0], k * field.e)
    return field_create(field.p, 1).rank(flat) == k * field.e


def transitions_of(field: FiniteField, vertices: np.ndarray) -> np.ndarray:
    """s_j = g_j - g_(j-1) for j = 1..N with g_N = g_0; row j-1 holds s_j."""
    return field.sub(np.roll(vertices, -1, axis=0), vertices)


# ------------------------------------------ Domain types ---------------------------------------- #


@dclass.dataclass(frozen=True)
class GeneratingSet:
    field: FiniteField
    elements: np.ndarray

    def __post_init__(self):
        elements = self.field.validate(np.array(self.elements, dtype=np.int64, copy=True))
        if elements.ndim != 2 or elements.shape[0] == 0:
            raise ValueError(f"Generators of shape {elements.shape} are not a |S| x k array")
        if np.any(np.all(elements == 0, axis=1)):
            raise ValueError("Generators must be nonzero")
        if np.unique(pack(self.field, elements)).size != elements.shape[0]:
            raise ValueError("Generators must be distinct")
        if not generates(self.field, elements, elements.shape[1]):
            raise ValueError(f"Generators do not generate F_{self.field.q}^{elements.shape[1]}")

        elements.setflags(write=False)
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return self.elements.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def k(self) -> int:
        return self.elements.shape[1]


@dclass.dataclass(frozen=True)
class Cycle:
    field: FiniteField
    vertices: np.ndarray

    def __post_init__(self):
        vertices = self.field.validate(np.array(self.vertices, dtype=np.int64, copy=True))
        if vertices.ndim != 2 or vertices.shape[0] == 0:
            raise ValueError(f"Vertices of shape {vertices.shape} are not an N x k array")
        if np.any(vertices[0] != 0):
            raise ValueError("A cycle starts at the zero vector")

        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def N(self) -> int:  # pylint: disable=invalid-name
        return self.vertices.shape[0]

    @property
    def k(self) -> int:
        return self.vertices.shape[1]

    @property
    def transitions(self) -> np.ndarray:
        return transitions_of(self.field, self.vertices)


class Violation(NamedTuple):
    vertex: tuple[int, ...]
    label: tuple[int, ...]
    count: int
    expected: int


@dclass.dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    mu: dict[tuple[int, ...], int]
    violations: list[Violation]
    problems: list[str] = dclass.field(default_factory=list)

    @property
    def generators(self) -> list[tuple[int, ...]]:
        """The distinct transition labels, i.e. the generating set the cycle walks on."""
        return list(self.mu)


# ------------------------------------------ Operations ------------------------------------------ #


def standard_generators(q: int, k: int) -> GeneratingSet:
    """The k*e vectors x*e_i with x in the F_p-basis {1, alpha, ..., alpha^(e-1)}, listed
    coordinate by coordinate.
    """
    if k < 1:
        raise ValueError(f"Arity k={k} must be positive")
    field = field_of_order(q)

    elements = np.zeros((k * field.e, k), dtype=np.int64)
    for coordinate in range(k):
        for power, basis_element in enumerate(field.basis()):
            elements[coordinate * field.e + power, coordinate] = basis_element.value
    return GeneratingSet(field, elements)


def eulerian_cycle(q: int, k: int, generators: GeneratingSet) -> Cycle:
    """Deterministic Hierholzer walk through every directed edge (g, g + s) exactly once.

    Generators are consumed in their listed order at every vertex and closed sub-walks are
    spliced in at the earliest vertex of the circuit that still has unused edges.

    Args:
        q (int): Field order
        k (int): Arity of the vectors
        generators (GeneratingSet): Edge labels, must generate F_q^k

    Returns:
        Cycle: The cycle starting at zero, of length q^k * |S|
    """
    field = field_of_order(q)
    if generators.field != field or generators.k != k:
        raise ValueError(f"Generators over F_{generators.q}^{generators.k}, expected F_{q}^{k}")

    vertex_count = q**k
    size = len(generators)
    check_budget("Eulerian cycle", vertex_count * size, CYCLE_LENGTH_LIMIT)

    vectors = all_vectors(field, k)
    successors = np.stack(
        [pack(field, field.add(vectors, generator)) for generator in generators.elements], axis=1
    ).tolist()
    next_edge = [0] * vertex_count

    def walk(start: int) -> list[int]:
        path = [start]
        vertex = start
        while next_edge[vertex] < size:
            edge = next_edge[vertex]
            next_edge[vertex] += 1
            vertex = successors[vertex][edge]
            path.append(vertex)
        assert vertex == start, "Unbalanced Cayley graph"
        return path

    circuit = list[int]()
    pending = [(walk(0), 0)]
    while pending:
        path, position = pending.pop()
        while position < len(path):
            vertex = path[position]
            position += 1
            if next_edge[vertex] < size:
                pending.append((path, position))
                path, position = walk(vertex), 1
            circuit.append(vertex)

    assert len(circuit) == vertex_count * size + 1 and circuit[-1] == 0
    logger.debug(f"Eulerian cycle on F_{q}^{k}: N={vertex_count * size}, |S|={size}")
    return Cycle(field, unpack(field, np.array(circuit[:-1], dtype=np.int64), k))


def check_balanced(field: FiniteField, vertices: np.ndarray) -> BalanceReport:
    """Checks that a closed vertex sequence over F_q^l is a balanced cycle: the transitions
    generate the group, every vertex is visited and every vertex is left via every label s the
    same number mu_s >= 1 of times.

    Args:
        field (FiniteField): GF(q)
        vertices (np.ndarray): N x l array, the sequence closes back to its first row

    Returns:
        BalanceReport: μ per label (the most common per-vertex count) and every deviation from it
    """
    vertices = field.validate(vertices)
    if vertices.ndim != 2 or vertices.shape[0] == 0:
        raise ValueError(f"Vertices of shape {vertices.shape} are not a nonempty N x l array")

    arity = vertices.shape[1]
    group_order = field.q**arity
    problems = list[str]()
    if np.any(vertices[0] != 0):
        problems.append("first vertex is not zero")

    departures = pack(field, vertices)
    transitions = transitions_of(field, vertices)
    labels = pack(field, transitions)

    visited = np.unique(departures).size
    if visited != group_order:
        problems.append(f"only {visited} of {group_order} vertices are visited")

    distinct_labels = np.unique(labels)
    if not generates(field, unpack(field, distinct_labels, arity), arity):
        problems.append("transitions do not generate the group")

    mu = dict[tuple[int, ...], int]()
    violations = list[Violation]()
    for label in distinct_labels:
        counts = np.bincount(departures[labels == label], minlength=group_order)
        expected = int(np.bincount(counts).argmax())
        label_key = tuple(int(coord) for coord in unpack(field, label, arity))
        mu[label_key] = expected

        for vertex in np.nonzero((counts != expected) | (counts == 0))[0]:
            violations.append(
                Violation(
                    vertex=tuple(int(coord) for coord in unpack(field, vertex, arity)),
                    label=label_key,
                    count=int(counts[vertex]),
                    expected=expected,
                )
            )

    balanced = not violations and not problems
    if balanced:
        assert vertices.shape[0] == group_order * sum(mu.values())
    return BalanceReport(balanced=balanced, mu=mu, violations=violations, problems=problems)
