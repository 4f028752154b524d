import io
import itertools
from math import comb, factorial

import pytest

from shapewilf.core import YoungDiagram, pop_Pk, pop_Qk
from shapewilf.enumeration import (
    CENSUS_HEADER,
    census,
    read_census_csv,
    shapes_with_transversals,
    transversals,
    write_census_csv,
)
from shapewilf.errors import ShapeHasNoTransversals


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def brute_force_shapes(n):
    """Every weakly decreasing sequence with entries in 1..n that admits a permutation fit."""
    out = []
    for seq in itertools.product(range(1, n + 1), repeat=n):
        if any(a < b for a, b in zip(seq, seq[1:])):
            continue
        if any(all(c <= x for c, x in zip(p, seq)) for p in itertools.permutations(range(1, n + 1))):
            out.append(seq)
    return sorted(out)


def brute_force_transversals(lengths):
    n = len(lengths)
    return sorted(
        p for p in itertools.permutations(range(1, n + 1)) if all(c <= x for c, x in zip(p, lengths))
    )


class TestShapes:
    def test_n2(self):
        assert [s.row_lengths for s in shapes_with_transversals(2)] == [(2, 1), (2, 2)]

    def test_n3(self):
        assert [s.row_lengths for s in shapes_with_transversals(3)] == [
            (3, 2, 1), (3, 2, 2), (3, 3, 1), (3, 3, 2), (3, 3, 3)
        ]

    def test_n6(self):
        assert sum(1 for _ in shapes_with_transversals(6)) == 132

    @pytest.mark.parametrize("n", range(1, 8))
    def test_catalan(self, n):
        assert sum(1 for _ in shapes_with_transversals(n)) == catalan(n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_match_brute_force(self, n):
        assert [s.row_lengths for s in shapes_with_transversals(n)] == brute_force_shapes(n)


class TestTransversals:
    def test_332(self):
        assert len(list(transversals(YoungDiagram((3, 3, 2))))) == 4

    def test_square(self):
        assert len(list(transversals(YoungDiagram((3, 3, 3))))) == 6
        assert len(list(transversals(YoungDiagram((5,) * 5)))) == factorial(5)

    def test_forced(self):
        assert [T.cols for T in transversals(YoungDiagram((2, 1)))] == [(2, 1)]

    def test_no_transversals(self):
        with pytest.raises(ShapeHasNoTransversals):
            next(transversals(YoungDiagram((3, 3, 3, 1))))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_match_brute_force(self, n):
        for shape in shapes_with_transversals(n):
            got = [T.cols for T in transversals(shape)]
            assert got == brute_force_transversals(shape.row_lengths)


def census_text(n_max, pops, jobs=1):
    buf = io.StringIO()
    write_census_csv(census(n_max, pops, jobs=jobs), buf)
    return buf.getvalue()


class TestCensus:
    def test_n3_p3_q3(self):
        rows = list(census(3, [pop_Pk(3), pop_Qk(3)]))
        # 1 + 2 + 5 shapes, two rows each
        assert len(rows) == 16
        for p_row, q_row in zip(rows[::2], rows[1::2]):
            assert p_row.shape == q_row.shape
            assert (p_row.pop, q_row.pop) == ("P3", "Q3")
            assert p_row.count == q_row.count

    def test_single_square(self):
        rows = list(census(1, [pop_Qk(3)]))
        assert [(r.shape, r.count) for r in rows] == [((1,), 1)]

    def test_square4_q4(self):
        rows = {r.shape: r.count for r in census(4, [pop_Qk(4)])}
        assert rows[(4, 4, 4, 4)] == 18

    def test_count_bound(self):
        for row in census(5, [pop_Pk(3), pop_Qk(4)]):
            assert 0 <= row.count <= factorial(row.n)

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_equal_counts(self, k):
        rows = list(census(6, [pop_Pk(k), pop_Qk(k)]))
        for p_row, q_row in zip(rows[::2], rows[1::2]):
            assert p_row.count == q_row.count, p_row.shape

    def test_csv_format(self):
        text = census_text(2, [pop_Pk(3)])
        assert text == "n,shape,pop,count\n1,1,P3,1\n2,2|1,P3,1\n2,2|2,P3,2\n"

    def test_deterministic(self):
        pops = [pop_Pk(3), pop_Qk(3)]
        assert census_text(5, pops) == census_text(5, pops)

    def test_jobs_do_not_change_output(self):
        pops = [pop_Pk(4), pop_Qk(4)]
        assert census_text(5, pops, jobs=2) == census_text(5, pops, jobs=1)

    def test_csv_round_trip(self):
        rows = list(census(4, [pop_Pk(3), pop_Qk(3)]))
        buf = io.StringIO()
        write_census_csv(rows, buf)
        buf.seek(0)
        assert read_census_csv(buf) == rows

    def test_header(self):
        assert CENSUS_HEADER == ["n", "shape", "pop", "count"]

    def test_rejects(self):
        with pytest.raises(ValueError):
            list(census(0, [pop_Pk(3)]))
        with pytest.raises(ValueError):
            list(census(2, []))
