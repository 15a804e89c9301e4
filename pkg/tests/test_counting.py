"""Counting statistics: transforms, closed forms, tables, and the identities
tying them together.

Independent oracles used here: direct multiset enumeration for the binomial
counts, the weighted-composition formula for the Euler transform, explicit
power-series multiplication for the generating-function identity, and the
pentagonal recurrence (inside the library) against the transform route for
partitions.
"""

import math
import random
from itertools import combinations_with_replacement

import pytest

from fissiontrees import (
    DomainError,
    closed_form_column,
    count_dynkin,
    count_extended,
    count_extended_semisimple,
    count_multisets,
    count_star_equipped,
    count_star_graphs,
    count_supernova_graphs,
    count_table,
    count_trees,
    count_unit_trees,
    count_unit_trees_upto,
    euler_transform,
    partition_number,
    partition_sequence,
    simply_laced_breakdown,
    theta_sequence,
)
from fissiontrees.counting import render_csv, render_json, render_markdown


class TestEulerTransform:
    def test_point_mass_gives_all_ones(self):
        assert euler_transform([1, 0, 0, 0, 0]) == [1, 1, 1, 1, 1]

    def test_all_ones_gives_partitions(self):
        assert euler_transform([1] * 10) == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]

    def test_partitions_give_double_partitions(self):
        p = partition_sequence(10)
        assert euler_transform(p) == [1, 3, 6, 14, 27, 58, 111, 223, 424, 817]

    def test_exact_division_up_to_k40_n120(self):
        # Every division inside the transform must be exact along the whole
        # tower of 40 iterated transforms on 120 terms.
        row = [1] + [0] * 119
        for _ in range(40):
            row = euler_transform(row)
        assert row[0] == 1

    def test_composition_law_oracle(self):
        # b(i) must equal the sum over weighted compositions
        # 1*s_1 + 2*s_2 + ... = i of the product of multiset counts
        # count_multisets(a(k), s_k).
        def by_compositions(a, i):
            total = 0

            def rec(k, rem, acc):
                nonlocal total
                if k > len(a):
                    if rem == 0:
                        total += acc
                    return
                s = 0
                while s * k <= rem:
                    rec(k + 1, rem - s * k, acc * count_multisets(a[k - 1], s))
                    s += 1

            rec(1, i, 1)
            return total

        rng = random.Random(2024)
        for _ in range(12):
            a = [rng.randrange(0, 5) for _ in range(rng.randrange(3, 9))]
            b = euler_transform(a)
            for i in range(1, len(a) + 1):
                assert b[i - 1] == by_compositions(a, i), (a, i)


class TestPartitionsAndTheta:
    def test_prefix(self):
        assert partition_sequence(10) == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]

    def test_methods_agree_to_500(self):
        # partition_sequence cross-checks the pentagonal recurrence against
        # the Euler transform internally and raises on disagreement.
        seq = partition_sequence(500)
        assert seq[499] == partition_number(500)

    def test_theta_values(self):
        th = theta_sequence(8)
        assert th[0] == 1
        assert th[2] == 4  # 1 + 1 + 2, summed directly
        assert th[8] == 67

    def test_theta_is_partial_sums(self):
        th = theta_sequence(30)
        assert all(th[n] - th[n - 1] == partition_number(n) for n in range(1, 31))


class TestUnitTreeCounts:
    def test_cumulative_base_rows(self):
        assert [count_unit_trees_upto(0, n) for n in range(1, 6)] == [1, 0, 0, 0, 0]
        assert all(count_unit_trees_upto(1, n) == 1 for n in range(1, 11))
        assert count_unit_trees_upto(2, 6) == 11
        assert count_unit_trees_upto(3, 4) == 14

    def test_cumulative_equals_partitions_at_slope_2(self):
        p = partition_sequence(40)
        assert [count_unit_trees_upto(2, n) for n in range(1, 41)] == p

    def test_rows_non_decreasing_in_slope(self):
        for n in range(1, 13):
            values = [count_unit_trees_upto(k, n) for k in range(0, 9)]
            assert values == sorted(values)

    def test_exact_counts(self):
        assert count_unit_trees(3, 4) == 9
        assert count_unit_trees(4, 7) == 407
        assert count_unit_trees(10, 10) == 14544961

    def test_boundaries(self):
        assert count_unit_trees(0, 1) == 1
        assert count_unit_trees(0, 5) == 0
        assert count_unit_trees(7, 1) == 0

    def test_difference_identity(self):
        for k in range(1, 9):
            for n in range(1, 13):
                assert count_unit_trees(k, n) == (
                    count_unit_trees_upto(k, n) - count_unit_trees_upto(k - 1, n))

    def test_exact_counts_sum_to_cumulative(self):
        for k in range(0, 8):
            for n in range(1, 11):
                assert sum(count_unit_trees(r, n) for r in range(0, k + 1)) == \
                    count_unit_trees_upto(k, n)


class TestFullTreeCounts:
    def test_values(self):
        assert count_trees(0, 7) == 1
        assert count_trees(2, 4) == 9
        assert count_trees(10, 10) == 31910879

    def test_shift_identity(self):
        for k in range(1, 9):
            for n in range(1, 11):
                assert count_trees(k, n) == count_unit_trees(k + 1, n)


class TestStarCounts:
    def test_paper_instances(self):
        assert count_star_equipped(4) == 5
        assert count_star_graphs(4) == 2
        assert count_star_equipped(2) == 1
        assert count_star_graphs(10) == 26

    def test_domain(self):
        with pytest.raises(DomainError):
            count_star_equipped(1)
        with pytest.raises(DomainError):
            count_star_graphs(1)

    def test_theta_form_agrees_to_60(self):
        # count_star_equipped asserts internally that its two formulas agree.
        for n in range(2, 61):
            count_star_equipped(n)


class TestSupernovaCounts:
    def test_values(self):
        assert count_supernova_graphs(1, 4) == 6
        assert count_supernova_graphs(1, 6) == 36
        assert count_supernova_graphs(3, 10) == 47198

    def test_single_node_column_is_zero(self):
        assert all(count_supernova_graphs(k, 1) == 0 for k in range(1, 6))

    def test_correction_formula(self):
        for n in range(2, 30):
            assert count_supernova_graphs(1, n) == (
                count_trees(2, n) - count_star_equipped(n) + count_star_graphs(n))

    def test_bijective_range(self):
        for k in range(2, 6):
            for n in range(1, 12):
                assert count_supernova_graphs(k, n) == count_trees(k + 1, n)


class TestExtendedCounts:
    def test_values(self):
        assert count_extended(0, 4) == 14
        assert count_extended_semisimple(0, 4) == 5
        assert count_extended(1, 4) == 16

    def test_slope_zero_splits_by_semisimplicity(self):
        for n in range(1, 12):
            assert count_extended(0, n) == count_unit_trees_upto(3, n)
            assert count_extended_semisimple(0, n) == partition_number(n)

    def test_positive_slope(self):
        for k in range(1, 6):
            for n in range(1, 10):
                assert count_extended(k, n) == count_trees(k + 2, n)
                assert count_extended_semisimple(k, n) == count_unit_trees(k + 2, n)


class TestMultisetCounts:
    def test_values(self):
        assert count_multisets(5, 6) == math.comb(10, 6) == 210
        assert all(count_multisets(k, 0) == 1 for k in range(0, 8))
        assert count_multisets(3, 2) == 6
        assert count_multisets(0, 0) == 1
        assert count_multisets(0, 3) == 0

    def test_against_direct_enumeration(self):
        for k in range(0, 6):
            for n in range(0, 9):
                direct = sum(1 for _ in combinations_with_replacement(range(k), n))
                assert count_multisets(k, n) == direct, (k, n)

    def test_series_identity(self):
        # (1 - u^m)^a multiplied by sum_n count_multisets(a, n) u^(m n)
        # must be 1 up to the truncation degree.
        deg = 24
        for a in range(1, 7):
            for m in range(1, 5):
                finite = [0] * (deg + 1)
                for j in range(0, a + 1):
                    e = m * j
                    if e <= deg:
                        finite[e] = (-1) ** j * math.comb(a, j)
                series = [0] * (deg + 1)
                n = 0
                while m * n <= deg:
                    series[m * n] = count_multisets(a, n)
                    n += 1
                prod = [0] * (deg + 1)
                for i, x in enumerate(finite):
                    if x:
                        for j in range(0, deg + 1 - i):
                            prod[i + j] += x * series[j]
                assert prod == [1] + [0] * deg, (a, m)


class TestClosedForms:
    def test_values(self):
        assert closed_form_column(4, 3) == 9
        assert closed_form_column(5, 5) == 95
        assert closed_form_column(3, 10) == 10

    def test_columns_match_table(self):
        for column in (3, 4, 5, 6):
            for k in range(1, 11):
                assert closed_form_column(column, k) == count_unit_trees(k, column)

    def test_column_4_at_scale(self):
        for k in range(1, 51):
            assert count_unit_trees(k, 4) == k * k

    def test_unsupported_column(self):
        with pytest.raises(DomainError):
            closed_form_column(7, 2)


class TestDynkinAndBreakdown:
    def test_dynkin_counts(self):
        assert [count_dynkin(n) for n in range(2, 12)] == [1, 1, 2, 2, 3, 3, 3, 2, 2, 2]

    def test_breakdown_rows(self):
        assert simply_laced_breakdown(6) == type(simply_laced_breakdown(6))(5, 31, 36, 33)
        b10 = simply_laced_breakdown(10)
        assert (b10.starshaped, b10.other, b10.total, b10.non_dynkin) == (26, 683, 709, 707)
        b2 = simply_laced_breakdown(2)
        assert (b2.starshaped, b2.other, b2.total, b2.non_dynkin) == (1, 0, 1, 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            simply_laced_breakdown(1)


class TestTables:
    def test_unknown_stat(self):
        with pytest.raises(DomainError):
            count_table("zeta", 3, 3)

    def test_sigma_rows_start_at_1(self):
        t = count_table("sigma", 3, 10)
        assert t.k_min == 1 and len(t.rows) == 3
        assert t.cell(1, 10) == 709

    def test_markdown_layout(self):
        text = render_markdown(count_table("phi", 2, 4))
        lines = text.splitlines()
        assert lines[0].startswith("| k\\n |")
        assert len(lines) == 5

    def test_csv_header(self):
        text = render_csv(count_table("psi", 1, 3))
        assert text.splitlines()[0] == "k\\n,1,2,3"

    def test_json_uses_decimal_strings(self):
        import json
        obj = json.loads(render_json(count_table("phi", 10, 10)))
        assert obj["rows"][10][9] == "14544961"
        assert obj["kRange"] == [0, 10] and obj["nRange"] == [1, 10]
