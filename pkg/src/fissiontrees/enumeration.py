"""Brute-force generation of all objects up to isomorphism.

These generators are the independent oracle for the closed-form counts: they
build every canonical object exactly once, by direct multiset construction,
and never consult the counting formulas for anything except the size guard.

A shape of depth d is a multiset of depth d-1 shapes; generating the parts
in non-increasing canonical order makes deduplication free and yields the
output already sorted in descending canonical order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from . import counting, graphs
from .errors import DomainError, ResourceLimitError
from .trees import (
    LEAFCOUNT,
    MULT,
    ExtendedTree,
    Shape,
    TameTree,
    TreeView,
    depth,
    extended_collapse,
    leaf_weights,
    prune,
    shape_slope,
    weight,
)

DEFAULT_LIMIT = 10_000_000


@lru_cache(maxsize=None)
def _lifted(d: int, n: int) -> tuple[Shape, ...]:
    """All depth-d shapes of weight n, descending, each exactly once."""
    if d == 1:
        return (n,)
    pool = sorted(
        (s for w in range(1, n + 1) for s in _lifted(d - 1, w)),
        reverse=True,
    )
    pool_weights = [weight(s) for s in pool]
    out: list[Shape] = []
    acc: list[Shape] = []

    def rec(start: int, rem: int) -> None:
        if rem == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(pool)):
            if pool_weights[i] > rem:
                continue
            acc.append(pool[i])
            rec(i, rem - pool_weights[i])
            acc.pop()

    rec(0, n)
    return tuple(out)


def _guard(k: int, n: int, limit: int) -> None:
    predicted = counting.count_unit_trees_upto(k, n)
    if predicted > limit:
        raise ResourceLimitError(
            f"enumeration would produce {predicted} objects, over the limit {limit}")


def enum_trees_up_to_slope(k: int, n: int, limit: int = DEFAULT_LIMIT) -> list[Shape]:
    """All depth-k shapes of weight n in canonical (descending) order.

    These are the slope <= k unit trees, each drawn at full depth k, so the
    list has count_unit_trees_upto(k, n) members.
    """
    if k < 1 or n < 1:
        raise DomainError("enum_trees_up_to_slope requires k >= 1, n >= 1")
    _guard(k, n, limit)
    return list(_lifted(k, n))


def enum_exact(k: int, n: int, view: str = LEAFCOUNT,
               limit: int = DEFAULT_LIMIT) -> list[TreeView]:
    """All canonical trees of slope exactly k, weight/rank n, in the given view."""
    if k < 0 or n < 1:
        raise DomainError("enum_exact requires k >= 0, n >= 1")
    d = max(k, 1) if view == LEAFCOUNT else k + 1
    _guard(d, n, limit)
    out = []
    for s in _lifted(d, n):
        if shape_slope(s, view) == k:
            out.append(TreeView(prune(s), view))
    return out


def enum_tame(n: int, limit: int = DEFAULT_LIMIT) -> list[TameTree]:
    """All tame trees of rank n: the multisets of non-empty partitions."""
    if n < 1:
        raise DomainError("enum_tame requires n >= 1")
    _guard(3, n, limit)
    return [TameTree(prune(s)) for s in _lifted(3, n)]


def enum_extended(k: int, n: int, limit: int = DEFAULT_LIMIT) -> list[ExtendedTree]:
    """All extended trees of slope k and rank n.

    Built by dressing each exact-slope-k multiplicity tree with every choice
    of tame parts of matching ranks, then deduplicating by the canonical
    shape of the collapsed (height-shifted) image, which is the isomorphism
    test for extended trees.
    """
    if k < 0 or n < 1:
        raise DomainError("enum_extended requires k >= 0, n >= 1")
    tame_by_rank = {w: enum_tame(w, limit) for w in range(1, n + 1)}
    seen: dict[Shape, ExtendedTree] = {}
    for base in enum_exact(k, n, MULT, limit):
        choices = [tame_by_rank[m] for m in leaf_weights(base.shape)]
        for parts in product(*choices):
            e = ExtendedTree(base, tuple(parts))
            key = extended_collapse(e).shape
            if key not in seen:
                seen[key] = e
    # Collapsed shapes of slope-0 extended trees have mixed depths, so the
    # plain value order does not apply across them; order by depth first.
    return [seen[key] for key in sorted(seen, key=lambda s: (depth(s), s), reverse=True)]


def enum_supernova(k: int, n: int, limit: int = DEFAULT_LIMIT) -> list[graphs.Multigraph]:
    """All supernova graphs with n nodes and maximal edge multiplicity k.

    Every such graph arises from an equipped fission graph of rank n with
    maximal edge multiplicity exactly k by growing each node's dimension d
    into a leg of length d - 1.  The map can collide (star-shaped cores for
    k = 1), so results are deduplicated up to isomorphism.  Returned graphs
    are in canonical form, sorted by canonical key.
    """
    if k < 1 or n < 2:
        raise DomainError("enum_supernova requires k >= 1, n >= 2")
    found: dict[tuple, graphs.Multigraph] = {}
    for t in enum_exact(k + 1, n, MULT, limit):
        equipped = graphs.equipped_fission_graph(t)
        legs = tuple(d - 1 for d in equipped.dims)
        core = graphs.Multigraph(equipped.n, equipped.mult)
        s = graphs.supernova(core, legs)
        key = graphs.canonical_key(s)
        if key not in found:
            found[key] = graphs.canonical_form(s)
    return [found[key] for key in sorted(found)]
