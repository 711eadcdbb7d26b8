import numpy as np
import pytest

from boadd.codes.builtin import example1_cycle
from boadd.core.budget import BudgetExceededError
from boadd.core.gf import field_of_order
from boadd.design.cayley import (
    Cycle,
    GeneratingSet,
    all_vectors,
    check_balanced,
    eulerian_cycle,
    generates,
    pack,
    standard_generators,
    unpack,
)


class TestGeneratingSet:
    @pytest.mark.parametrize("q, k, size", [(2, 3, 3), (4, 2, 4), (9, 2, 4), (3, 1, 1), (8, 2, 6)])
    def test_standard_generators_should_have_ke_elements(self, q, k, size):
        generators = standard_generators(q, k)
        assert len(generators) == size
        assert generates(generators.field, generators.elements, k)

    @pytest.mark.parametrize(
        "elements",
        [
            [[0, 0], [1, 0], [0, 1]],
            [[1, 0], [1, 0], [0, 1]],
            [[1, 0], [2, 0]],
            np.zeros((0, 2), dtype=int),
        ],
    )
    def test_generating_set_should_raise_when_elements_invalid(self, elements):
        with pytest.raises(ValueError):
            GeneratingSet(field_of_order(4), elements)

    def test_generates_should_need_both_basis_multiples_when_gf4(self):
        field = field_of_order(4)
        assert not generates(field, np.array([[1]]), 1)
        assert generates(field, np.array([[1], [2]]), 1)

    def test_pack_should_invert_unpack(self):
        field = field_of_order(9)
        vectors = all_vectors(field, 2)
        assert np.array_equal(pack(field, vectors), np.arange(81))
        assert np.array_equal(unpack(field, pack(field, vectors), 2), vectors)


class TestEulerianCycle:
    @pytest.mark.parametrize("q, k", [(2, 1), (2, 3), (3, 2), (4, 2), (9, 2), (2, 5)])
    def test_eulerian_cycle_should_traverse_every_edge_once(self, q, k):
        generators = standard_generators(q, k)
        cycle = eulerian_cycle(q, k, generators)
        assert cycle.N == q**k * len(generators)

        report = check_balanced(cycle.field, cycle.vertices)
        assert report.balanced
        assert set(report.mu.values()) == {1}
        assert len(report.mu) == len(generators)

    def test_eulerian_cycle_should_be_deterministic(self):
        generators = standard_generators(4, 2)
        first = eulerian_cycle(4, 2, generators)
        second = eulerian_cycle(4, 2, generators)
        assert np.array_equal(first.vertices, second.vertices)

    def test_eulerian_cycle_should_step_by_generators(self):
        generators = standard_generators(3, 2)
        cycle = eulerian_cycle(3, 2, generators)
        labels = {tuple(label) for label in cycle.transitions.tolist()}
        assert labels == {tuple(element) for element in generators.elements.tolist()}

    def test_eulerian_cycle_should_raise_when_generators_from_other_group(self):
        with pytest.raises(ValueError):
            eulerian_cycle(4, 3, standard_generators(4, 2))

    def test_eulerian_cycle_should_raise_when_over_budget(self):
        with pytest.raises(BudgetExceededError):
            eulerian_cycle(2, 20, standard_generators(2, 20))

    def test_cycle_should_raise_when_not_starting_at_zero(self):
        with pytest.raises(ValueError):
            Cycle(field_of_order(2), [[1, 0], [0, 0]])


class TestCheckBalanced:
    def test_check_balanced_should_accept_published_cycle(self):
        report = check_balanced(field_of_order(2), example1_cycle())
        assert report.balanced
        assert report.mu == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}

    def test_check_balanced_should_report_unequal_multiplicities(self):
        # 0 -> 1 -> 0 -> 1 -> 2 -> 0 over Z_3: label 1 leaves vertex 0 twice
        report = check_balanced(field_of_order(3), np.array([[0], [1], [0], [1], [2]]))
        assert not report.balanced
        assert report.violations

    def test_check_balanced_should_report_unvisited_vertices(self):
        report = check_balanced(field_of_order(3), np.array([[0, 0], [1, 0], [2, 0]]))
        assert not report.balanced
        assert any("vertices" in problem for problem in report.problems)
        assert any("generate" in problem for problem in report.problems)

    def test_check_balanced_should_report_nonzero_start(self):
        report = check_balanced(field_of_order(2), np.array([[1], [0]]))
        assert "first vertex is not zero" in report.problems

    def test_check_balanced_should_accept_doubled_cycle_with_mu_2(self):
        cycle = eulerian_cycle(2, 2, standard_generators(2, 2))
        report = check_balanced(cycle.field, np.concatenate([cycle.vertices, cycle.vertices]))
        assert report.balanced
        assert set(report.mu.values()) == {2}
