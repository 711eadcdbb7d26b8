import numpy as np
import pytest
from hypothesis import given, strategies as st

from boadd.control.pauli_rep import build_representation
from boadd.control.schedule import (
    corrupt_schedule,
    free_evolution_schedule,
    schedule_from_boa,
    symmetrize,
)
from boadd.control.sim import (
    AverageMode,
    HamiltonianTerm,
    LocalHamiltonian,
    average_hamiltonian,
    average_hamiltonian_quadrature,
    balanced_cycle_average,
    control_generator,
    decoupling_residual,
    random_local_hamiltonian,
    single_qudit_generator,
    slot_average,
    slot_average_quadrature,
)
from boadd.core.budget import BudgetExceededError
from boadd.core.linalg import is_hermitian, random_hermitian, spectral_norm
from boadd.core.multithreading import PyThreadPool
from boadd.design.boa import BoaArray
from boadd.design.cayley import eulerian_cycle, standard_generators

from common import (
    NEGATIVE_CONTROL_FLOOR,
    RESIDUAL_TOLERANCE,
    SEEDS,
    WEYL_QUBIT,
    WEYL_QUTRIT,
    X_ONLY_QUBIT,
    example1_schedule,
    example2_schedule,
    qutrit_schedule,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)

FIXTURES = [
    (example1_schedule, X_ONLY_QUBIT, True),
    (example2_schedule, WEYL_QUBIT, False),
    (qutrit_schedule, WEYL_QUTRIT, False),
]
QUBIT_FIXTURES = [(example1_schedule, X_ONLY_QUBIT, 7), (example2_schedule, WEYL_QUBIT, 5)]


class TestHamiltonians:
    def test_random_local_hamiltonian_should_be_reproducible_from_seed(self):
        first = random_local_hamiltonian(5, 2, 2, seed=3)
        second = random_local_hamiltonian(5, 2, 2, seed=3)
        assert len(first.terms) == 10
        assert all(np.array_equal(a.matrix, b.matrix) for a, b in zip(first.terms, second.terms))

    def test_random_local_hamiltonian_should_cap_term_count(self):
        hamiltonian = random_local_hamiltonian(12, 2, 2, seed=0)
        assert len(hamiltonian.terms) == 50
        assert len({term.support for term in hamiltonian.terms}) == 50

    def test_random_local_hamiltonian_should_be_diagonal_when_requested(self):
        hamiltonian = random_local_hamiltonian(3, 3, 2, seed=1, diagonal_only=True)
        for term in hamiltonian.terms:
            assert np.count_nonzero(term.matrix - np.diag(np.diag(term.matrix))) == 0

    @pytest.mark.parametrize("n, locality", [(3, 0), (3, 4)])
    def test_random_local_hamiltonian_should_raise_when_locality_invalid(self, n, locality):
        with pytest.raises(ValueError):
            random_local_hamiltonian(n, 2, locality, seed=0)

    def test_random_local_hamiltonian_should_raise_when_term_too_large(self):
        with pytest.raises(BudgetExceededError):
            random_local_hamiltonian(9, 3, 6, seed=0)

    @pytest.mark.parametrize(
        "support, matrix",
        [
            ((0, 2), np.diag([1.0, -1.0, 0.0])),
            ((1, 0), np.diag([1.0, -1.0, 1.0, -1.0])),
            ((0, 3), np.diag([1.0, -1.0, 1.0, -1.0])),
            ((0,), np.array([[0, 1], [0, 0]])),
            ((0,), np.eye(2)),
        ],
    )
    def test_local_hamiltonian_should_raise_when_term_invalid(self, support, matrix):
        with pytest.raises(ValueError):
            LocalHamiltonian(3, 2, [HamiltonianTerm(support, matrix)])

    def test_assemble_should_raise_when_over_budget(self):
        hamiltonian = random_local_hamiltonian(8, 2, 2, seed=0)
        with pytest.raises(BudgetExceededError):
            hamiltonian.assemble(max_dimension=64)


class TestGenerators:
    def test_single_qudit_generator_should_be_pauli_x_when_quarter_period(self):
        generator = single_qudit_generator(X_ONLY_QUBIT, 1, np.pi / 2)
        assert np.allclose(generator.hamiltonian, PAULI_X)

    @pytest.mark.parametrize("rep", [WEYL_QUBIT, WEYL_QUTRIT, X_ONLY_QUBIT])
    @pytest.mark.parametrize("delta", [0.5, 1.0, 3.0])
    def test_control_generator_should_reach_unitary_up_to_phase(self, rep, delta):
        for label in range(rep.q):
            generator = control_generator(rep, [label], delta)
            unitary = generator.unitary(delta)[0]
            target = rep.table[label]
            overlap = np.trace(target.conj().T @ unitary) / rep.d
            assert np.isclose(abs(overlap), 1.0)
            assert np.allclose(unitary, overlap * target)
            assert abs(np.trace(generator.hamiltonians[0])) < 1e-12

    def test_control_generator_should_raise_when_delta_not_positive(self):
        with pytest.raises(ValueError):
            control_generator(WEYL_QUBIT, [1], 0.0)


class TestSlotAverage:
    @pytest.mark.parametrize("rep", [WEYL_QUBIT, WEYL_QUTRIT])
    def test_slot_average_should_match_quadrature(self, rep):
        rng = np.random.default_rng(5)
        matrix = random_hermitian(rng, rep.d**2)
        for pulse in [(1, 0), (0, 2), (3, rep.q - 1)]:
            exact = slot_average(rep, matrix, pulse, 1.0)
            quadrature = slot_average_quadrature(rep, matrix, pulse, 1.0, nodes=16)
            assert np.allclose(exact, quadrature, atol=1e-12)

    def test_slot_average_should_keep_matrix_when_pulse_idle(self):
        matrix = random_hermitian(np.random.default_rng(0), 4)
        assert np.allclose(slot_average(WEYL_QUBIT, matrix, (0, 0), 1.0), matrix)

    def test_slot_average_quadrature_should_not_depend_on_direction(self):
        matrix = random_hermitian(np.random.default_rng(2), 4)
        forward = slot_average_quadrature(WEYL_QUBIT, matrix, (1, 2), 1.0, nodes=16)
        backward = slot_average_quadrature(WEYL_QUBIT, matrix, (1, 2), 1.0, 16, backwards=True)
        assert np.allclose(forward, backward, atol=1e-12)

    def test_slot_average_should_be_less_accurate_with_one_node(self):
        matrix = random_hermitian(np.random.default_rng(4), 4)
        exact = slot_average(WEYL_QUBIT, matrix, (1, 3), 1.0)
        coarse = slot_average_quadrature(WEYL_QUBIT, matrix, (1, 3), 1.0, nodes=1)
        fine = slot_average_quadrature(WEYL_QUBIT, matrix, (1, 3), 1.0, nodes=16)
        assert np.linalg.norm(coarse - exact) > np.linalg.norm(fine - exact)

    @given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 3), st.integers(0, 3))
    def test_slot_average_should_be_linear(self, a, b, first, second):
        rng = np.random.default_rng(11)
        m1, m2 = random_hermitian(rng, 4), random_hermitian(rng, 4)
        pulse = (first, second)
        combined = slot_average(WEYL_QUBIT, a * m1 + b * m2, pulse, 1.0)
        separate = a * slot_average(WEYL_QUBIT, m1, pulse, 1.0) + b * slot_average(
            WEYL_QUBIT, m2, pulse, 1.0
        )
        assert np.allclose(combined, separate, atol=1e-10)


class TestAverageHamiltonian:
    @pytest.mark.parametrize("make_schedule, rep, n", QUBIT_FIXTURES)
    def test_average_hamiltonian_should_be_hermitian(self, make_schedule, rep, n):
        hamiltonian = random_local_hamiltonian(n, 2, 2, seed=1)
        average = average_hamiltonian(hamiltonian, make_schedule(), rep)
        assert is_hermitian(average, 1e-10)

    @pytest.mark.parametrize("make_schedule, rep, n", QUBIT_FIXTURES)
    @pytest.mark.parametrize("a, b", [(1.0, 1.0), (0.5, -2.0)])
    def test_average_hamiltonian_should_be_linear(self, make_schedule, rep, n, a, b):
        schedule = make_schedule()
        first = random_local_hamiltonian(n, 2, 2, seed=2)
        second = random_local_hamiltonian(n, 2, 1, seed=3)
        combined = average_hamiltonian(a * first + b * second, schedule, rep)
        separate = a * average_hamiltonian(first, schedule, rep) + b * average_hamiltonian(
            second, schedule, rep
        )
        assert np.allclose(combined, separate, atol=1e-10)

    @pytest.mark.parametrize("make_schedule, rep, n", QUBIT_FIXTURES)
    @pytest.mark.parametrize("seed", range(3))
    def test_average_hamiltonian_should_agree_between_modes_when_qubits(
        self, make_schedule, rep, n, seed
    ):
        schedule = make_schedule()
        hamiltonian = random_local_hamiltonian(n, 2, 2, seed)
        full = average_hamiltonian(hamiltonian, schedule, rep, AverageMode.FULL)
        per_term = average_hamiltonian(hamiltonian, schedule, rep, AverageMode.PER_TERM)
        assert np.allclose(full, per_term, atol=1e-10)


class TestDecoupling:
    @pytest.mark.parametrize("seed", SEEDS)
    def test_residual_should_vanish_when_example2_weyl(self, seed):
        schedule = example2_schedule()
        hamiltonian = random_local_hamiltonian(5, 2, 2, seed)
        report = decoupling_residual(hamiltonian, schedule, WEYL_QUBIT, mode="full")
        assert report.residual <= RESIDUAL_TOLERANCE
        assert report.method == "eigenbasis_exact" and report.norm_basis == "full"
        assert (report.n, report.slots, report.terms) == (5, 64, 10)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_residual_should_vanish_when_example1_diagonal(self, seed):
        hamiltonian = random_local_hamiltonian(7, 2, 2, seed, diagonal_only=True)
        report = decoupling_residual(hamiltonian, example1_schedule(), X_ONLY_QUBIT, mode="full")
        assert report.residual <= RESIDUAL_TOLERANCE

    def test_residual_should_stay_when_x_only_and_generic_hamiltonian(self):
        hamiltonian = random_local_hamiltonian(7, 2, 2, seed=0)
        report = decoupling_residual(hamiltonian, example1_schedule(), X_ONLY_QUBIT)
        assert report.residual > 1e-3

    def test_residual_should_agree_between_modes_when_qutrits(self):
        schedule = qutrit_schedule()
        hamiltonian = random_local_hamiltonian(4, 3, 2, seed=0)
        full = average_hamiltonian(hamiltonian, schedule, WEYL_QUTRIT, AverageMode.FULL)
        per_term = average_hamiltonian(
            hamiltonian, schedule, WEYL_QUTRIT, "per-term", thread_pool=PyThreadPool(2)
        )
        assert np.allclose(full, per_term, atol=1e-10)

        report = decoupling_residual(hamiltonian, schedule, WEYL_QUTRIT, mode="per_term")
        assert report.residual <= RESIDUAL_TOLERANCE
        assert max(report.per_term) <= RESIDUAL_TOLERANCE

    @pytest.mark.parametrize("column", range(1, 24))
    @pytest.mark.parametrize("seed", SEEDS)
    def test_residual_should_detect_corrupted_schedule(self, column, seed):
        schedule = corrupt_schedule(example1_schedule(), column)
        hamiltonian = random_local_hamiltonian(7, 2, 2, seed, diagonal_only=True)
        report = decoupling_residual(hamiltonian, schedule, X_ONLY_QUBIT)
        assert report.residual >= NEGATIVE_CONTROL_FLOOR

    def test_residual_should_be_one_when_no_control(self):
        hamiltonian = random_local_hamiltonian(3, 2, 2, seed=0)
        schedule = free_evolution_schedule(3, WEYL_QUBIT)
        report = decoupling_residual(hamiltonian, schedule, WEYL_QUBIT)
        assert report.residual == pytest.approx(1.0)
        assert report.triangle_slack >= -1e-12

    @pytest.mark.parametrize("schedule_fn, rep, diagonal", FIXTURES)
    def test_residual_should_vanish_when_symmetrized(self, schedule_fn, rep, diagonal):
        schedule = symmetrize(schedule_fn())
        hamiltonian = random_local_hamiltonian(schedule.n, rep.d, 2, seed=1, diagonal_only=diagonal)
        report = decoupling_residual(hamiltonian, schedule, rep, mode="per_term")
        assert report.slots == 2 * schedule_fn().N
        assert report.residual <= RESIDUAL_TOLERANCE

    def test_residual_should_normalize_per_term_when_system_too_large(self):
        hamiltonian = random_local_hamiltonian(5, 2, 2, seed=0)
        report = decoupling_residual(
            hamiltonian, example2_schedule(), WEYL_QUBIT, mode="per_term", max_dimension=16
        )
        assert report.norm_basis == "per_term"
        assert report.residual <= RESIDUAL_TOLERANCE

    def test_residual_should_raise_when_full_mode_over_budget(self):
        hamiltonian = random_local_hamiltonian(5, 2, 2, seed=0)
        with pytest.raises(BudgetExceededError):
            decoupling_residual(
                hamiltonian, example2_schedule(), WEYL_QUBIT, mode="full", max_dimension=16
            )

    def test_residual_should_raise_when_hamiltonian_does_not_fit_schedule(self):
        hamiltonian = random_local_hamiltonian(4, 2, 2, seed=0)
        with pytest.raises(ValueError):
            decoupling_residual(hamiltonian, example2_schedule(), WEYL_QUBIT)

    def test_residual_should_raise_when_representation_does_not_fit_schedule(self):
        hamiltonian = random_local_hamiltonian(7, 2, 2, seed=0)
        with pytest.raises(ValueError):
            decoupling_residual(hamiltonian, example1_schedule(), WEYL_QUBIT)


class TestQuadratureOracle:
    @pytest.mark.parametrize("schedule_fn, rep, diagonal", FIXTURES)
    def test_average_hamiltonian_should_match_quadrature(self, schedule_fn, rep, diagonal):
        schedule = schedule_fn()
        hamiltonian = random_local_hamiltonian(schedule.n, rep.d, 2, seed=2, diagonal_only=diagonal)
        exact = average_hamiltonian(hamiltonian, schedule, rep, "per_term")
        quadrature = average_hamiltonian_quadrature(hamiltonian, schedule, rep, 16, "per_term")
        assert spectral_norm(exact - quadrature) <= 1e-9

    def test_average_hamiltonian_should_match_quadrature_when_symmetrized(self):
        schedule = symmetrize(example1_schedule())
        hamiltonian = random_local_hamiltonian(7, 2, 2, seed=4)
        exact = average_hamiltonian(hamiltonian, schedule, X_ONLY_QUBIT, "per_term")
        quadrature = average_hamiltonian_quadrature(
            hamiltonian, schedule, X_ONLY_QUBIT, 16, "per_term"
        )
        assert spectral_norm(exact - quadrature) <= 1e-9

    def test_average_hamiltonian_quadrature_should_raise_when_no_nodes(self):
        hamiltonian = random_local_hamiltonian(5, 2, 2, seed=0)
        with pytest.raises(ValueError):
            average_hamiltonian_quadrature(hamiltonian, example2_schedule(), WEYL_QUBIT, 0)


class TestBalancedCycleAverage:
    @pytest.mark.parametrize("rep", [WEYL_QUBIT, X_ONLY_QUBIT])
    def test_balanced_cycle_average_should_match_schedule_average_when_two_qudits(self, rep):
        cycle = eulerian_cycle(rep.q, 2, standard_generators(rep.q, 2))
        array = BoaArray(cycle.field, cycle.vertices.T, strength=2)
        schedule = schedule_from_boa(array, rep)
        hamiltonian = random_local_hamiltonian(2, 2, 2, seed=6)

        direct = balanced_cycle_average(hamiltonian.assemble(), cycle.vertices, rep)
        scheduled = average_hamiltonian(hamiltonian, schedule, rep)
        assert np.allclose(direct, scheduled, atol=1e-12)

        residual = decoupling_residual(hamiltonian, schedule, rep).residual
        norm = spectral_norm(hamiltonian.assemble())
        assert abs(spectral_norm(direct) / norm - residual) <= 1e-12

    def test_balanced_cycle_average_should_raise_when_cycle_unbalanced(self):
        vertices = np.array([[0, 0], [1, 0], [1, 1]])
        with pytest.raises(ValueError):
            balanced_cycle_average(np.eye(4), vertices, build_representation(2, "x_only"))
