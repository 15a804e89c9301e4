"""Tree core: canonical forms, views, level maps, shifts, tame/extended trees.

Exhaustive checks run over every enumerated tree up to the bound stated in
each test, so the structural claims are verified on the whole domain rather
than on sampled instances.
"""

import random

import pytest

from fissiontrees import (
    LEAFCOUNT,
    MULT,
    ExtendedTree,
    LevelPresentation,
    TameTree,
    TreeView,
    TreeError,
    PreconditionError,
    canonical_shape,
    count_trees,
    count_unit_trees,
    enum_exact,
    enum_tame,
    extended_collapse,
    extended_expand,
    from_level_maps,
    glue_forest,
    is_generic,
    leaf_count,
    mult_view,
    parse_tree,
    rank,
    shift_mult_to_unit,
    shift_unit_to_mult,
    slope,
    split_at_root,
    to_level_maps,
    tree_text,
    unit_view,
)
from fissiontrees.enumeration import enum_trees_up_to_slope
from fissiontrees.trees import leaf_weights


# The proper double partitions of 4, in canonical descending order.
NINE_SLOPE3_LEAVES4 = [
    "[[3],[1]]",
    "[[2,1],[1]]",
    "[[2],[2]]",
    "[[2],[1,1]]",
    "[[2],[1],[1]]",
    "[[1,1,1],[1]]",
    "[[1,1],[1,1]]",
    "[[1,1],[1],[1]]",
    "[[1],[1],[1],[1]]",
]


def all_views(n_max=8, unit_k_max=5, mult_k_max=4):
    for n in range(1, n_max + 1):
        for k in range(0, unit_k_max + 1):
            yield from enum_exact(k, n, LEAFCOUNT)
        for k in range(0, mult_k_max + 1):
            yield from enum_exact(k, n, MULT)


class TestCanonicalize:
    def test_two_element_reorder(self):
        assert canonical_shape([1, 2]) == (2, 1)

    def test_leaf_is_fixed(self):
        assert canonical_shape(5) == 5

    def test_nine_proper_double_partitions_of_4(self):
        got = [t.text() for t in enum_exact(3, 4, LEAFCOUNT)]
        assert got == NINE_SLOPE3_LEAVES4

    def test_prunes_single_child_top(self):
        assert canonical_shape([[3]]) == 3
        assert canonical_shape([[[1, 1]]]) == (1, 1)

    def test_idempotent_on_generated_trees(self):
        for k in range(1, 6):
            for n in range(1, 9):
                for shape in enum_trees_up_to_slope(k, n):
                    once = canonical_shape(shape)
                    assert canonical_shape(once) == once

    def test_shuffled_input_normalises(self):
        rng = random.Random(7)

        def shuffled(shape):
            if isinstance(shape, int):
                return shape
            kids = [shuffled(c) for c in shape]
            rng.shuffle(kids)
            return kids

        for t in enum_exact(4, 7, LEAFCOUNT):
            assert canonical_shape(shuffled(t.shape)) == t.shape

    @pytest.mark.parametrize("bad", [0, -2, [], [0], [1, [1]], "x", [1.5]])
    def test_malformed_input_rejected(self, bad):
        with pytest.raises(TreeError):
            canonical_shape(bad)


class TestGrammar:
    @pytest.mark.parametrize("text,canonical", [
        ("1", "1"),
        ("[1,2]", "[2,1]"),
        ("[[2],[1,1]]", "[[2],[1,1]]"),
        (" [ 1 , 12 ] ", "[12,1]"),
        ("[[1,1]]", "[1,1]"),
    ])
    def test_parse_and_serialize(self, text, canonical):
        assert tree_text(parse_tree(text)) == canonical

    def test_round_trip_over_enumeration(self):
        for t in all_views(n_max=6):
            assert parse_tree(t.text()) == t.shape

    @pytest.mark.parametrize("bad", ["", "[]", "[1,]", "[1", "1]", "a", "[1 1]", "[-1]", "1,2"])
    def test_parse_errors(self, bad):
        with pytest.raises(TreeError):
            parse_tree(bad)

    def test_json_view_round_trip(self):
        from fissiontrees.trees import view_from_json_obj
        for t in all_views(n_max=6):
            assert view_from_json_obj(t.to_json_obj()) == t


class TestSlopeRankLeafCount:
    def test_single_unit_leaf(self):
        assert slope(unit_view(1)) == 0

    def test_weighted_leaf_unit(self):
        assert slope(unit_view(4)) == 1

    def test_paper_slope3_example(self):
        assert slope(unit_view([[2], [1, 1]])) == 3

    def test_single_mult_leaf(self):
        assert slope(mult_view(7)) == 0

    def test_mult_partition_has_slope_1(self):
        assert slope(mult_view([2, 1, 1])) == 1

    def test_rank_and_leaf_count(self):
        t = unit_view([[2], [1, 1]])
        assert rank(t) == 4 and leaf_count(t) == 4
        m = mult_view([[2], [1, 1]])
        assert rank(m) == 4 and leaf_count(m) == 3
        assert rank(mult_view(11)) == 11 and leaf_count(mult_view(11)) == 1

    def test_view_is_validated(self):
        with pytest.raises(TreeError):
            TreeView((2, 1), "other")
        with pytest.raises(TreeError):
            TreeView((1, 2), LEAFCOUNT)  # not sorted


class TestGeneric:
    def test_one_branch_node(self):
        assert is_generic(unit_view([1, 1, 1]))
        assert is_generic(unit_view(5))

    def test_two_branch_nodes(self):
        assert not is_generic(unit_view([[1, 1], [1, 1]]))
        assert not is_generic(unit_view([3, 1]))

    def test_no_branch_node(self):
        assert not is_generic(unit_view(1))

    def test_exactly_one_generic_tree_per_slope_and_size(self):
        for k in range(1, 6):
            for n in range(2, 9):
                generics = [t for t in enum_exact(k, n, LEAFCOUNT) if is_generic(t)]
                assert len(generics) == 1, (k, n)


class TestLevelMaps:
    def test_trivial_presentation(self):
        assert from_level_maps(LevelPresentation((1,), ())) == unit_view(1)

    def test_fibre_reading(self):
        lp = LevelPresentation((4, 2, 1), ((0, 0, 1, 1), (0, 0)))
        tv = from_level_maps(lp)
        assert tv == unit_view([2, 2]) and slope(tv) == 2

    def test_four_level_presentation_lands_in_fig2(self):
        lp = LevelPresentation((4, 3, 2, 1), ((0, 0, 1, 2), (0, 0, 1), (0, 0)))
        tv = from_level_maps(lp)
        assert tv.text() == "[[2,1],[1]]"
        assert tv.text() in NINE_SLOPE3_LEAVES4

    def test_known_output_forms(self):
        lp = to_level_maps(unit_view([2, 2]))
        assert lp.sizes == (4, 2, 1)
        assert lp.parents == ((0, 0, 1, 1), (0, 0))
        lp = to_level_maps(mult_view([[2], [1, 1]]))
        assert lp.sizes == (3, 2, 1)
        assert lp.multiplicities == (2, 1, 1)

    def test_round_trip_both_views(self):
        for t in all_views():
            assert from_level_maps(to_level_maps(t)) == t

    def test_relabelling_invariance(self):
        rng = random.Random(11)
        for t in all_views(n_max=6):
            lp = to_level_maps(t)
            sizes, parents = lp.sizes, [list(p) for p in lp.parents]
            mults = list(lp.multiplicities) if lp.multiplicities else None
            # Permute the elements of each level and rewrite the maps.
            perms = [rng.sample(range(s), s) for s in sizes]
            new_parents = []
            for i, pmap in enumerate(parents):
                moved = [0] * len(pmap)
                for x, par in enumerate(pmap):
                    moved[perms[i][x]] = perms[i + 1][par]
                new_parents.append(tuple(moved))
            new_mults = None
            if mults is not None:
                new_mults = [0] * len(mults)
                for x, m in enumerate(mults):
                    new_mults[perms[0][x]] = m
                new_mults = tuple(new_mults)
            relabelled = LevelPresentation(sizes, tuple(new_parents), new_mults)
            assert from_level_maps(relabelled) == t

    def test_non_surjective_rejected(self):
        with pytest.raises(TreeError):
            LevelPresentation((2, 2, 1), ((0, 0), (0, 0)))

    def test_top_level_must_be_singleton(self):
        with pytest.raises(TreeError):
            LevelPresentation((3, 2), ((0, 0, 1),))

    def test_normalisation_below_top(self):
        with pytest.raises(TreeError):
            LevelPresentation((2, 1, 1), ((0, 0), (0,)))


class TestSplitGlue:
    def test_split_root_example(self):
        parts = split_at_root(unit_view([[2], [1, 1]]))
        assert [p.text() for p in parts] == ["2", "[1,1]"]
        assert all(slope(p) <= 2 for p in parts)

    def test_split_weighted_leaf(self):
        parts = split_at_root(unit_view(3))
        assert [p.text() for p in parts] == ["1", "1", "1"]

    def test_split_requires_positive_slope(self):
        with pytest.raises(PreconditionError):
            split_at_root(unit_view(1))
        with pytest.raises(PreconditionError):
            split_at_root(mult_view(9))

    def test_glue_singleton_prunes(self):
        glued = glue_forest([unit_view(3)], 2)
        assert glued == unit_view(3) and slope(glued) == 1

    def test_glue_slope_bound_enforced(self):
        with pytest.raises(PreconditionError):
            glue_forest([unit_view([2, 2])], 2)

    def test_round_trip_all_trees(self):
        for t in all_views():
            k = slope(t)
            if k < 1:
                continue
            assert glue_forest(split_at_root(t), k) == t

    def test_all_forests_of_low_slope_trees_glue_to_distinct_trees(self):
        # Multisets of slope <= 2 unit trees with total weight 4, glued at
        # level 3, must give each slope <= 3 tree exactly once: 14 of them.
        pool = []
        for w in range(1, 5):
            for k in range(0, 3):
                pool.extend((t, w) for t in enum_exact(k, w, LEAFCOUNT))
        results = []

        def forests(start, rem, acc):
            if rem == 0:
                results.append(glue_forest(list(acc), 3))
                return
            for i in range(start, len(pool)):
                t, w = pool[i]
                if w <= rem:
                    acc.append(t)
                    forests(i, rem - w, acc)
                    acc.pop()

        forests(0, 4, [])
        assert len(results) == len(set(results)) == 14


class TestShift:
    def test_shape_is_preserved(self):
        m = mult_view([2, 1, 1])
        u = shift_mult_to_unit(m)
        assert u.shape == m.shape and u.view == LEAFCOUNT
        assert slope(m) == 1 and slope(u) == 2

    def test_fig7_matches_fig2(self):
        mult_shapes = {t.shape for t in enum_exact(2, 4, MULT)}
        unit_shapes = {t.shape for t in enum_exact(3, 4, LEAFCOUNT)}
        assert len(mult_shapes) == 9
        assert mult_shapes == unit_shapes

    def test_bijection_counts(self):
        for k in range(1, 5):
            for n in range(1, 9):
                image = {shift_mult_to_unit(t) for t in enum_exact(k, n, MULT)}
                assert len(image) == count_trees(k, n) == count_unit_trees(k + 1, n)

    def test_mutually_inverse(self):
        for k in range(1, 5):
            for n in range(1, 9):
                for t in enum_exact(k, n, MULT):
                    assert shift_unit_to_mult(shift_mult_to_unit(t)) == t
                    assert rank(shift_mult_to_unit(t)) == rank(t)

    def test_domain_restrictions(self):
        with pytest.raises(PreconditionError):
            shift_mult_to_unit(mult_view(6))  # slope 0
        with pytest.raises(PreconditionError):
            shift_unit_to_mult(unit_view(6))  # slope 1
        with pytest.raises(PreconditionError):
            shift_mult_to_unit(unit_view([2, 1]))  # wrong view


class TestTameAndExtended:
    def test_tame_rank_and_semisimple(self):
        t = TameTree(canonical_shape([[2], [1, 1]]))
        assert t.rank == 4 and not t.semisimple
        assert TameTree(canonical_shape([[1, 1], [1]])).semisimple

    def test_tame_depth_bound(self):
        with pytest.raises(TreeError):
            TameTree(canonical_shape([[[2], [1]], [[1]]]))

    def test_rank_mismatch_rejected(self):
        base = mult_view([2, 1])
        good = (TameTree(2), TameTree(1))
        ExtendedTree(base, good)
        with pytest.raises(TreeError):
            ExtendedTree(base, (TameTree(1), TameTree(1)))
        with pytest.raises(TreeError):
            ExtendedTree(base, good[:1])

    def test_single_leaf_bases_cover_all_tame_trees(self):
        # One extended tree per tame tree of the same rank: 14 at rank 4.
        seen = set()
        for tame in enum_tame(4):
            e = ExtendedTree(mult_view(4), (tame,))
            seen.add(extended_collapse(e))
        assert len(seen) == 14

    def test_collapse_slope_shift(self):
        for k in range(0, 3):
            for n in range(1, 7):
                for t in enum_exact(k, n, MULT):
                    e = extended_expand(t)
                    if slope(t) >= 3:
                        assert e.slope == slope(t) - 2
                    else:
                        assert e.slope == 0
                    assert e.rank == rank(t)

    def test_round_trip_rank_up_to_6(self):
        for n in range(1, 7):
            for k in range(0, 5):
                for t in enum_exact(k, n, MULT):
                    assert extended_collapse(extended_expand(t)) == t

    def test_semisimple_matches_multiplicity_one(self):
        for n in range(1, 7):
            for k in range(0, 5):
                for t in enum_exact(k, n, MULT):
                    e = extended_expand(t)
                    assert e.semisimple == all(w == 1 for w in leaf_weights(t.shape))
