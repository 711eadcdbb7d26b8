import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from boadd.codes import bch, builtin, hamming, io
from boadd.codes.linear import (
    LinearCode,
    code_report,
    dual_code,
    dual_distance,
    encode,
    min_distance,
    oa_from_code,
)
from boadd.core.budget import BudgetExceededError
from boadd.core.gf import field_create


def codeword_set(code: LinearCode) -> set[tuple[int, ...]]:
    return {tuple(word) for word in oa_from_code(code).T.tolist()}


class TestLinearCode:
    @pytest.mark.parametrize(
        "code, message, expected",
        [
            (builtin.example1(), [0, 0, 0], [0] * 7),
            (builtin.example1(), [1, 0, 0], [1, 0, 1, 0, 1, 0, 1]),
            (builtin.example2(), [0, 1], [0, 1, 3, 3, 1]),
        ],
    )
    def test_encode_should_multiply_generator_when_message_valid(self, code, message, expected):
        assert encode(code, message).tolist() == expected

    def test_encode_should_raise_when_message_has_wrong_length(self):
        with pytest.raises(LinearCode.DimensionError):
            encode(builtin.example1(), [1, 0])

    def test_linear_code_should_raise_when_generator_rank_deficient(self):
        with pytest.raises(ValueError):
            LinearCode(field_create(2, 1), np.array([[1, 1], [1, 1], [0, 0]]))

    def test_linear_code_should_raise_when_k_exceeds_n(self):
        with pytest.raises(LinearCode.DimensionError):
            LinearCode(field_create(2, 1), np.eye(2, 3, dtype=int))

    def test_dual_code_should_have_distance_3_when_example1(self):
        dual = dual_code(builtin.example1())
        assert (dual.n, dual.k) == (7, 4)
        assert min_distance(dual) == 3

    @pytest.mark.parametrize(
        "code", [builtin.example1(), builtin.example2(), hamming.hamming_dual_code(3, 4)]
    )
    def test_dual_code_should_be_orthogonal_and_involutive(self, code):
        dual = dual_code(code)
        assert code.k + dual.k == code.n
        assert np.all(code.field.matmul(code.generator.T, dual.generator) == 0)
        assert codeword_set(dual_code(dual)) == codeword_set(code)

    def test_dual_code_should_have_distance_6_when_example3(self):
        dual = dual_code(builtin.example3())
        assert (dual.n, dual.k) == (16, 7)
        assert min_distance(dual) >= 6

    @pytest.mark.parametrize(
        "code, expected",
        [
            (LinearCode(field_create(2, 1), np.ones((5, 1), dtype=int)), 5),
            (dual_code(hamming.hamming_dual_code(2, 7)), 3),
            (bch.bch_ext_code(2, 4, 6), 6),
        ],
    )
    def test_min_distance_should_match_known_values(self, code, expected):
        assert min_distance(code) == expected

    def test_min_distance_should_raise_when_over_budget(self):
        code = LinearCode(field_create(2, 1), np.eye(30, 25, dtype=int))
        with pytest.raises(BudgetExceededError):
            min_distance(code)

    @pytest.mark.parametrize(
        "code", [builtin.example1(), builtin.example2(), hamming.hamming_dual_code(4, 21)]
    )
    def test_dual_distance_should_agree_between_enumeration_and_row_search(self, code):
        dependent = None
        for weight in range(1, code.k + 2):
            if any(
                code.field.rank(code.generator[list(rows)]) < weight
                for rows in itertools.combinations(range(code.n), weight)
            ):
                dependent = weight
                break
        assert dual_distance(code) == dependent

    def test_code_report_should_derive_strength_from_dual_distance(self):
        report = code_report(builtin.example1())
        assert (report.distance, report.dual_distance, report.strength) == (4, 3, 2)

    @given(st.lists(st.integers(0, 3), min_size=2, max_size=2), st.integers(0, 3))
    def test_encode_should_be_linear(self, message, scalar):
        code = builtin.example2()
        field = code.field
        other = np.array([1, 2])
        combined = field.add(field.mul(scalar, np.array(message)), other)
        expected = field.add(field.mul(scalar, encode(code, message)), encode(code, other))
        assert np.array_equal(encode(code, combined), expected)


class TestHamming:
    @pytest.mark.parametrize(
        "q, n, k",
        [
            (4, 5, 2),
            (4, 21, 3),
            (4, 85, 4),
            (2, 7, 3),
            (9, 10, 2),
        ],
    )
    def test_hamming_dual_code_should_have_dual_distance_3(self, q, n, k):
        code = hamming.hamming_dual_code(q, n)
        assert (code.q, code.n, code.k) == (q, n, k)
        assert dual_distance(code) == 3

    @pytest.mark.parametrize("q, n", [(4, 6), (2, 8), (9, 11), (2, 1)])
    def test_hamming_dual_code_should_raise_when_length_inadmissible(self, q, n):
        with pytest.raises(ValueError):
            hamming.hamming_dual_code(q, n)

    def test_projective_points_should_be_normalized_and_sorted(self):
        points = hamming.projective_points(3, 2)
        assert points == [(0, 1), (1, 0), (1, 1), (1, 2)]


class TestBch:
    @pytest.mark.parametrize(
        "q, m, designed, k, distance",
        [
            (2, 4, 6, 7, 6),
            (2, 4, 2, 15, 2),
            (2, 3, 3, 4, 4),
        ],
    )
    def test_bch_ext_code_should_match_known_parameters(self, q, m, designed, k, distance):
        code = bch.bch_ext_code(q, m, designed)
        assert (code.n, code.k) == (q**m, k)
        assert min_distance(code) == distance

    @pytest.mark.parametrize("q, m, designed", [(2, 4, 6), (4, 2, 4), (3, 2, 4)])
    def test_bch_ext_code_should_have_zero_sum_codewords(self, q, m, designed):
        code = bch.bch_ext_code(q, m, designed)
        words = oa_from_code(code)
        sums = np.zeros(words.shape[1], dtype=np.int64)
        for row in words:
            sums = code.field.add(sums, row)
        assert np.all(sums == 0)
        assert min_distance(code) >= designed

    @pytest.mark.parametrize("q, m, designed", [(2, 4, 1), (2, 4, 16), (2, 0, 3)])
    def test_bch_ext_code_should_raise_when_designed_distance_out_of_range(self, q, m, designed):
        with pytest.raises(ValueError):
            bch.bch_ext_code(q, m, designed)

    @pytest.mark.parametrize(
        "q, m, designed, slack", [(2, 4, 6, 0), (2, 4, 2, 0), (2, 5, 4, 0)]
    )
    def test_check_dimension_bound_should_report_slack(self, q, m, designed, slack):
        check = bch.check_dimension_bound(bch.bch_ext_code(q, m, designed), designed, m, q)
        assert check.applicable and check.holds
        assert check.slack == slack

    def test_check_dimension_bound_should_hold_when_gf4(self):
        code = bch.bch_ext_code(4, 2, 4)
        check = bch.check_dimension_bound(code, 4, 2, 4)
        assert check.holds
        assert check.bound == 16 - 2 * 2 - 1
        assert code.k == check.bound + check.slack

    def test_check_dimension_bound_should_be_inapplicable_when_designed_too_large(self):
        check = bch.check_dimension_bound(bch.bch_ext_code(2, 3, 7), 7, 3, 2)
        assert not check.applicable
        assert str(check) == "bound not applicable"

    @pytest.mark.parametrize("q, m, designed", [(2, 4, 6), (4, 2, 4), (3, 2, 5), (2, 5, 4)])
    def test_bch_dual_dimension_should_match_constructed_code(self, q, m, designed):
        code = bch.bch_ext_code(q, m, designed)
        assert bch.bch_dual_dimension(q, m, designed) == code.n - code.k


class TestGeneratorFiles:
    def test_read_generator_should_restore_written_code(self, tmp_path):
        path = tmp_path / "example2.txt"
        io.write_generator(builtin.example2(), path)

        code = io.read_generator(path)
        assert code.label == "file:example2.txt"
        assert np.array_equal(code.generator, builtin.example2().generator)

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "2 3\n1\n0\n1\n",
            "2 3 1\n1\n0\n",
            "2 3 1\n1\nx\n1\n",
            "6 2 1\n1\n1\n",
            "2 2 1\n0\n0\n",
            "2 2 1\n1\n2\n",
        ],
    )
    def test_parse_generator_should_raise_when_file_invalid(self, text):
        with pytest.raises(io.GeneratorFileError):
            io.parse_generator(text)


class TestBuiltin:
    @pytest.mark.parametrize(
        "family, shape, q",
        [
            (builtin.Family.EXAMPLE1, (7, 3), 2),
            (builtin.Family.EXAMPLE2, (5, 2), 4),
            (builtin.Family.EXAMPLE3, (16, 9), 2),
        ],
    )
    def test_builtin_code_should_return_fixture(self, family, shape, q):
        code = builtin.builtin_code(family)
        assert code.generator.shape == shape
        assert code.q == q

    def test_builtin_code_should_raise_when_family_is_constructive(self):
        with pytest.raises(ValueError):
            builtin.builtin_code(builtin.Family.BCH)

    @pytest.mark.parametrize(
        "code, strength",
        [(builtin.example1(), 2), (builtin.example2(), 2), (builtin.example3(), 5)],
    )
    def test_builtin_codes_should_have_expected_strength(self, code, strength):
        assert dual_distance(code) - 1 == strength
