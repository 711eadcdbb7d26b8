import pytest

from boadd.cli.table import DATABASE_CELL, LEGEND, render_table, table_ks, table_rows
from boadd.codes.bch import bch_dual_dimension
from boadd.codes.hamming import hamming_dual_code
from boadd.design.boa import build_boa
from boadd.design.cayley import eulerian_cycle, standard_generators
from boadd.design.lengths import (
    bch_length,
    bch_ranges,
    boa_length,
    hamming_range,
    length_bound,
    table_length,
)


class TestLengths:
    @pytest.mark.parametrize(
        "d, lengths",
        [
            (2, [64, 384, 2048, 10240, 49152, 229376, 1048576]),
            (3, [324, 4374, 52488, 590490, 6377292, 66961566]),
        ],
    )
    def test_table_length_should_reproduce_table_headers(self, d, lengths):
        assert [table_length(d, k) for k in table_ks(d)] == lengths

    def test_boa_length_should_match_constructed_array(self):
        generators = standard_generators(4, 2)
        array = build_boa(hamming_dual_code(4, 5), eulerian_cycle(4, 2, generators))
        assert array.N == boa_length(4, 2, len(generators)) == table_length(2, 2)

    @pytest.mark.parametrize(
        "k, expected",
        [
            (2, (2, 5)),
            (3, (6, 21)),
            (4, (22, 85)),
        ],
    )
    def test_hamming_range_should_match_table_row_when_q4(self, k, expected):
        assert hamming_range(4, k) == expected

    def test_hamming_range_should_raise_when_k_below_2(self):
        with pytest.raises(ValueError):
            hamming_range(4, 1)

    def test_bch_length_should_pick_largest_code_within_dimension(self):
        assert bch_length(4, 5, 3) == 16
        assert bch_length(4, 4, 3) is None
        assert bch_dual_dimension(4, 2, 4) == 5

    def test_bch_ranges_should_be_consecutive(self):
        ranges = bch_ranges(4, range(2, 9), 3)
        present = [value for value in ranges.values() if value is not None]
        assert present
        for (_, stop), (start, _) in zip(present, present[1:]):
            assert start == stop + 1

    @pytest.mark.parametrize("d, n, locality", [(2, 16, 3), (2, 9, 3), (3, 81, 3)])
    def test_length_bound_should_equal_embedded_bch_length(self, d, n, locality):
        q = d * d
        m = 1
        while q**m < n:
            m += 1
        k = bch_dual_dimension(q, m, locality + 1)
        assert k == (locality - 1) * m + 1
        assert length_bound(d, n, locality) == table_length(d, k)

    def test_length_bound_should_grow_with_n(self):
        assert length_bound(2, 17, 3) > length_bound(2, 16, 3)


class TestTable:
    def test_render_table_should_contain_headers_and_legend(self):
        text = render_table(2, [2, 3])
        lines = text.splitlines()
        assert lines[0].split()[-1] == "1048576"
        assert lines[1].split()[:4] == ["2", "2-5", "6-21", "22-85"]
        assert lines[-1] == LEGEND

    def test_table_rows_should_mark_missing_bch_cells_as_database(self):
        rows = table_rows(2, [3], table_ks(2))
        assert rows[1][0] == "3"
        assert DATABASE_CELL in rows[1]
        assert "16-16" not in rows[1]

    @pytest.mark.parametrize("d, k_min, k_max", [(5, 2, 3), (2, 1, 3), (2, 3, 9), (3, 2, 8)])
    def test_table_ks_should_raise_when_range_unsupported(self, d, k_min, k_max):
        with pytest.raises(ValueError):
            table_ks(d, k_min, k_max)
