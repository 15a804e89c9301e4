"""Canonical tree values and the structural maps between their presentations.

A tree is stored as a nested tuple.  An ``int`` w >= 1 is a weighted leaf and
a tuple of subtrees is an inner node.  Every child of an inner node has the
same depth (a leaf has depth 1), and children are kept sorted in descending
order, so two inputs normalise to the same value exactly when they describe
isomorphic trees.  Values are immutable and safe to share between threads.

The same shape is read in two ways, selected by a view tag:

* ``LEAFCOUNT`` - a leaf ``w`` stands for w unit leaves hanging under a
  common parent.  The slope of a branching shape equals its depth, a single
  leaf has slope 0 (w == 1) or 1 (w >= 2), and the rank equals the number of
  unit leaves, i.e. the total weight.
* ``MULT`` - a leaf ``w`` is a single bottom node carrying multiplicity w.
  A branching shape of depth d has slope d - 1, a single leaf has slope 0,
  and the rank is again the total weight.

Reading the same canonical shape in both views realises the slope-shift
correspondence: the multiplicity trees of slope k and rank n are exactly the
unit trees of slope k + 1 with n leaves, for k >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence, Union

from .errors import PreconditionError, TreeError

Shape = Union[int, tuple]

LEAFCOUNT = "leafcount"
MULT = "mult"
VIEWS = (LEAFCOUNT, MULT)


# ---------------------------------------------------------------------------
# Shape primitives
# ---------------------------------------------------------------------------

def depth(shape: Shape) -> int:
    d = 1
    while not isinstance(shape, int):
        shape = shape[0]
        d += 1
    return d


def weight(shape: Shape) -> int:
    """Total weight: the sum of all leaf values."""
    if isinstance(shape, int):
        return shape
    return sum(weight(c) for c in shape)


def leaf_weights(shape: Shape) -> list[int]:
    """Leaf values in stored (canonical) traversal order."""
    if isinstance(shape, int):
        return [shape]
    out: list[int] = []
    for c in shape:
        out.extend(leaf_weights(c))
    return out


def _ordered(obj) -> Shape:
    """Validate and sort an arbitrary nested int/list/tuple, keeping depth."""
    if isinstance(obj, bool):
        raise TreeError("leaf weight must be an integer >= 1, got a bool")
    if isinstance(obj, int):
        if obj < 1:
            raise TreeError(f"leaf weight must be >= 1, got {obj}")
        return obj
    if isinstance(obj, (list, tuple)):
        kids = [_ordered(c) for c in obj]
        if not kids:
            raise TreeError("inner node must have at least one child")
        depths = {depth(k) for k in kids}
        if len(depths) != 1:
            raise TreeError(f"children must have equal depth, got depths {sorted(depths)}")
        # Equal-depth children are mutually comparable tuples/ints, so the
        # native descending sort is a total canonical order.
        return tuple(sorted(kids, reverse=True))
    raise TreeError(f"unsupported node of type {type(obj).__name__}")


def prune(shape: Shape) -> Shape:
    """Strip single-child wrappers from the top of a shape."""
    while not isinstance(shape, int) and len(shape) == 1:
        shape = shape[0]
    return shape


def canonical_shape(obj) -> Shape:
    """The canonical representative of the isomorphism class described by obj.

    Sorts every level into descending order and prunes single-child chains
    at the root (an unbranched top is drawing redundancy, not structure).
    Idempotent.  Raises TreeError for malformed input.
    """
    return prune(_ordered(obj))


def lift(shape: Shape, d: int) -> Shape:
    """Wrap a shape in single-child nodes until it has depth d."""
    have = depth(shape)
    if have > d:
        raise TreeError(f"cannot lift a depth-{have} shape to smaller depth {d}")
    for _ in range(d - have):
        shape = (shape,)
    return shape


# ---------------------------------------------------------------------------
# Text and JSON forms
# ---------------------------------------------------------------------------

def tree_text(shape: Shape) -> str:
    """Serialize to the bracket grammar: object := INT | '[' object (',' object)* ']'."""
    if isinstance(shape, int):
        return str(shape)
    return "[" + ",".join(tree_text(c) for c in shape) + "]"


def parse_tree(text: str) -> Shape:
    """Parse the bracket grammar and canonicalize.  Whitespace is ignored."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_obj():
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise TreeError("unexpected end of input")
        ch = text[pos]
        if ch == "[":
            pos += 1
            kids = [parse_obj()]
            skip_ws()
            while pos < n and text[pos] == ",":
                pos += 1
                kids.append(parse_obj())
                skip_ws()
            if pos >= n or text[pos] != "]":
                raise TreeError(f"expected ']' at position {pos}")
            pos += 1
            return kids
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            return int(text[start:pos])
        raise TreeError(f"unexpected character {ch!r} at position {pos}")

    obj = parse_obj()
    skip_ws()
    if pos != n:
        raise TreeError(f"trailing input at position {pos}")
    return canonical_shape(obj)


def shape_to_obj(shape: Shape):
    """Nested-list form with integer leaves, suitable for json.dumps."""
    if isinstance(shape, int):
        return shape
    return [shape_to_obj(c) for c in shape]


# ---------------------------------------------------------------------------
# Views
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeView:
    """A canonical shape together with the interpretation of its leaf values."""

    shape: Shape
    view: str

    def __post_init__(self):
        if self.view not in VIEWS:
            raise TreeError(f"unknown view {self.view!r}")
        if self.shape != canonical_shape(self.shape):
            raise TreeError("TreeView requires a canonical (sorted, pruned) shape")

    def text(self) -> str:
        return tree_text(self.shape)

    def to_json_obj(self) -> dict:
        return {"view": "mult" if self.view == MULT else "leafcount",
                "shape": shape_to_obj(self.shape)}


def unit_view(obj) -> TreeView:
    return TreeView(canonical_shape(obj), LEAFCOUNT)


def mult_view(obj) -> TreeView:
    return TreeView(canonical_shape(obj), MULT)


def view_from_json_obj(obj: dict) -> TreeView:
    try:
        view = obj["view"]
        shape = obj["shape"]
    except (KeyError, TypeError):
        raise TreeError("tree JSON must be an object with 'view' and 'shape'")
    if view not in ("leafcount", "mult"):
        raise TreeError(f"unknown view {view!r}")
    return TreeView(canonical_shape(shape), LEAFCOUNT if view == "leafcount" else MULT)


def shape_slope(shape: Shape, view: str) -> int:
    """Slope of a (possibly lifted) shape under the given view."""
    s = shape
    while not isinstance(s, int) and len(s) == 1:
        s = s[0]
    if isinstance(s, int):
        if view == MULT:
            return 0
        return 0 if s == 1 else 1
    d = depth(s)
    return d if view == LEAFCOUNT else d - 1


def slope(tv: TreeView) -> int:
    return shape_slope(tv.shape, tv.view)


def rank(tv: TreeView) -> int:
    return weight(tv.shape)


def leaf_count(tv: TreeView) -> int:
    """Number of leaves: unit leaves under LEAFCOUNT, bottom nodes under MULT."""
    if tv.view == LEAFCOUNT:
        return weight(tv.shape)
    return len(leaf_weights(tv.shape))


def is_generic(tv: TreeView) -> bool:
    """True when the full tree has exactly one branch node.

    Under LEAFCOUNT a leaf of weight >= 2 hides a branch node (one parent
    over that many unit leaves).  A single unit leaf has no branch node at
    all and is not generic.
    """
    unit = tv.view == LEAFCOUNT

    def branch_nodes(s: Shape) -> int:
        if isinstance(s, int):
            return 1 if (unit and s >= 2) else 0
        here = 1 if len(s) >= 2 else 0
        return here + sum(branch_nodes(c) for c in s)

    return branch_nodes(tv.shape) == 1


# ---------------------------------------------------------------------------
# Root surgery
# ---------------------------------------------------------------------------

def split_at_root(tv: TreeView) -> list[TreeView]:
    """Delete the root and return the resulting forest, canonically ordered.

    Requires slope >= 1.  Inverse of glue_forest at k = slope(tv).
    """
    k = slope(tv)
    if k < 1:
        raise PreconditionError("split_at_root requires slope >= 1")
    s = tv.shape
    if isinstance(s, int):
        # LEAFCOUNT leaf of weight m >= 2: the root is the common parent of
        # m unit leaves, so deletion leaves m one-leaf trees.
        return [TreeView(1, tv.view) for _ in range(s)]
    return [TreeView(prune(c), tv.view) for c in s]


def glue_forest(trees: Sequence[TreeView], k: int) -> TreeView:
    """Glue a forest under a new root at slope level k.

    Every member must have slope <= k - 1.  The result has slope <= k, with
    slope < k exactly when the forest has a single member (the unbranched
    top is pruned away).
    """
    trees = list(trees)
    if not trees:
        raise PreconditionError("glue_forest requires a non-empty forest")
    views = {t.view for t in trees}
    if len(views) != 1:
        raise PreconditionError("glue_forest requires members with a single view")
    view = views.pop()
    if k < 1:
        raise PreconditionError("glue_forest requires k >= 1")
    for t in trees:
        if slope(t) > k - 1:
            raise PreconditionError(
                f"member of slope {slope(t)} exceeds the bound {k - 1}")
    if view == LEAFCOUNT:
        if k == 1:
            # All members are single unit leaves; gluing merges them under
            # one parent, i.e. a single weighted leaf.
            return TreeView(len(trees) if len(trees) > 1 else 1, view)
        child_depth = k - 1
    else:
        child_depth = k
    kids = tuple(sorted((lift(t.shape, child_depth) for t in trees), reverse=True))
    return TreeView(prune(kids), view)


# ---------------------------------------------------------------------------
# Slope shift between the two views
# ---------------------------------------------------------------------------

def shift_mult_to_unit(tv: TreeView) -> TreeView:
    """Reread a multiplicity tree of slope k >= 1 as the unit tree of slope k + 1.

    The canonical shape is unchanged: bottom nodes with multiplicities become
    parents of that many unit leaves.  Rank is preserved.
    """
    if tv.view != MULT:
        raise PreconditionError("shift_mult_to_unit expects a MULT view")
    if slope(tv) < 1:
        raise PreconditionError(
            "single-leaf multiplicity trees (slope 0) have no unit partner")
    return TreeView(tv.shape, LEAFCOUNT)


def shift_unit_to_mult(tv: TreeView) -> TreeView:
    """Inverse of shift_mult_to_unit; requires unit slope >= 2."""
    if tv.view != LEAFCOUNT:
        raise PreconditionError("shift_unit_to_mult expects a LEAFCOUNT view")
    if slope(tv) < 2:
        raise PreconditionError("shift_unit_to_mult requires slope >= 2")
    return TreeView(tv.shape, MULT)


# ---------------------------------------------------------------------------
# Level presentation (sequences of surjections)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelPresentation:
    """Explicit finite levels J_1, ..., J_{k+1} with parent surjections.

    ``sizes[i]`` is |J_{i+1}|; ``parents[i][x]`` is the index in J_{i+2} of
    the parent of element x of J_{i+1}.  The top level has exactly one
    element, the level below it at least two (unless there are no maps at
    all), and every parent map is surjective.  ``multiplicities``, when
    present, assigns a positive weight to each element of J_1 and marks the
    presentation as a multiplicity tree.
    """

    sizes: tuple[int, ...]
    parents: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...] | None = None

    def __post_init__(self):
        sizes, parents = self.sizes, self.parents
        if not sizes or any(s < 1 for s in sizes):
            raise TreeError("sizes must be a non-empty tuple of positive integers")
        if sizes[-1] != 1:
            raise TreeError("the top level must have exactly one element")
        if len(sizes) >= 2 and sizes[-2] < 2:
            raise TreeError("the level below the top must have >= 2 elements")
        if len(parents) != len(sizes) - 1:
            raise TreeError("need exactly one parent map per adjacent level pair")
        for i, pmap in enumerate(parents):
            if len(pmap) != sizes[i]:
                raise TreeError(f"parent map {i} has wrong length")
            if any(not (0 <= p < sizes[i + 1]) for p in pmap):
                raise TreeError(f"parent map {i} has out-of-range values")
            if len(set(pmap)) != sizes[i + 1]:
                raise TreeError(f"parent map {i} is not surjective")
        if self.multiplicities is not None:
            if len(self.multiplicities) != sizes[0]:
                raise TreeError("multiplicities must cover the bottom level")
            if any(m < 1 for m in self.multiplicities):
                raise TreeError("multiplicities must be >= 1")


def from_level_maps(p: LevelPresentation) -> TreeView:
    """Read a level presentation into a canonical TreeView.

    Without multiplicities the result is a LEAFCOUNT tree whose leaf values
    are the fibre sizes of the bottom map; with multiplicities it is a MULT
    tree over all levels.
    """
    if p.multiplicities is not None:
        objs: list[Shape] = list(p.multiplicities)
        maps = p.parents
        view = MULT
    else:
        if len(p.sizes) == 1:
            return TreeView(1, LEAFCOUNT)
        fibres = [0] * p.sizes[1]
        for parent in p.parents[0]:
            fibres[parent] += 1
        objs = list(fibres)
        maps = p.parents[1:]
        view = LEAFCOUNT
    sizes = p.sizes if view == MULT else p.sizes[1:]
    for level, pmap in enumerate(maps):
        grouped: list[list[Shape]] = [[] for _ in range(sizes[level + 1])]
        for x, parent in enumerate(pmap):
            grouped[parent].append(objs[x])
        objs = [tuple(g) for g in grouped]
    return TreeView(canonical_shape(objs[0]), view)


def _shape_levels(shape: Shape) -> list[list[Shape]]:
    """Nodes of a shape grouped by depth, bottom level first, children kept
    grouped under their parent in stored order."""
    levels = [[shape]]
    while not isinstance(levels[-1][0], int):
        nxt: list[Shape] = []
        for node in levels[-1]:
            nxt.extend(node)
        levels.append(nxt)
    levels.reverse()
    return levels


def to_level_maps(tv: TreeView) -> LevelPresentation:
    """Write a canonical TreeView as a level presentation.

    Elements are indexed level by level following the canonical child order,
    so the output is deterministic and round-trips through from_level_maps.
    """
    s = tv.shape
    if tv.view == MULT:
        if isinstance(s, int):
            return LevelPresentation((1,), (), (s,))
        levels = _shape_levels(s)
        sizes = tuple(len(level) for level in levels)
        parents = tuple(_parent_map(levels[i + 1]) for i in range(len(levels) - 1))
        mults = tuple(leaf_weights(s))
        return LevelPresentation(sizes, parents, mults)
    if isinstance(s, int):
        if s == 1:
            return LevelPresentation((1,), ())
        return LevelPresentation((s, 1), (tuple([0] * s),))
    levels = _shape_levels(s)
    bottom = [w for node in levels[0] for w in [node]]
    expand = tuple(i for i, w in enumerate(bottom) for _ in range(w))
    sizes = (sum(bottom),) + tuple(len(level) for level in levels)
    parents = (expand,) + tuple(_parent_map(levels[i + 1]) for i in range(len(levels) - 1))
    return LevelPresentation(sizes, parents)


def _parent_map(level_above: list[Shape]) -> tuple[int, ...]:
    out: list[int] = []
    for idx, node in enumerate(level_above):
        out.extend([idx] * len(node))
    return tuple(out)


# ---------------------------------------------------------------------------
# Tame and extended trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TameTree:
    """A multiset of non-empty integer partitions, stored as a canonical
    shape of depth <= 3.  Leaf values are block sizes; the rank is their sum.
    """

    shape: Shape

    def __post_init__(self):
        if self.shape != canonical_shape(self.shape):
            raise TreeError("TameTree requires a canonical shape")
        if depth(self.shape) > 3:
            raise TreeError("TameTree shape must have depth <= 3")

    @property
    def rank(self) -> int:
        return weight(self.shape)

    @property
    def semisimple(self) -> bool:
        return all(w == 1 for w in leaf_weights(self.shape))


def tame_tree(obj) -> TameTree:
    return TameTree(canonical_shape(obj))


@dataclass(frozen=True)
class ExtendedTree:
    """A multiplicity tree with one tame tree attached per leaf.

    ``parts[i]`` belongs to the i-th leaf of ``base.shape`` in stored order
    and must have rank equal to that leaf's multiplicity.
    """

    base: TreeView
    parts: tuple[TameTree, ...]

    def __post_init__(self):
        if self.base.view != MULT:
            raise TreeError("ExtendedTree base must be a MULT view")
        mults = leaf_weights(self.base.shape)
        if len(self.parts) != len(mults):
            raise TreeError(
                f"need {len(mults)} tame parts, got {len(self.parts)}")
        for i, (m, part) in enumerate(zip(mults, self.parts)):
            if part.rank != m:
                raise TreeError(
                    f"tame part {i} has rank {part.rank}, leaf multiplicity is {m}")

    @property
    def rank(self) -> int:
        return rank(self.base)

    @property
    def slope(self) -> int:
        return slope(self.base)

    @property
    def semisimple(self) -> bool:
        return all(p.semisimple for p in self.parts)


def extended_collapse(e: ExtendedTree) -> TreeView:
    """Collapse an extended tree to a plain multiplicity tree (height shift
    by two): each leaf of the base is replaced by its tame part lifted to
    depth 3.  Slope-k extended trees land on slope k + 2 for k >= 1; slope-0
    ones land on slope <= 2.  Inverse of extended_expand.
    """
    parts = iter(e.parts)

    def build(s: Shape):
        if isinstance(s, int):
            return lift(next(parts).shape, 3)
        return [build(c) for c in s]

    return TreeView(canonical_shape(build(e.base.shape)), MULT)


def extended_expand(tv: TreeView) -> ExtendedTree:
    """Split a multiplicity tree into an extended tree.

    Trees of slope <= 2 become a single-leaf base carrying the whole shape
    as one tame part; deeper trees have their depth-3 fringes cut off into
    tame parts, leaving the base two levels shorter.
    """
    if tv.view != MULT:
        raise PreconditionError("extended_expand expects a MULT view")
    s = tv.shape
    if depth(s) <= 3:
        return ExtendedTree(TreeView(weight(s), MULT), (TameTree(s),))

    def build(node: Shape, d: int):
        # Returns (shape piece, tame parts aligned with its leaves).
        if d == 3:
            return weight(node), [TameTree(prune(node))]
        built = [build(c, d - 1) for c in node]
        # Sort children canonically; break weight ties by tame content so
        # the output is deterministic.
        built.sort(key=lambda pc: (pc[0], [tree_text(t.shape) for t in pc[1]]),
                   reverse=True)
        parts: list[TameTree] = []
        for _, sub in built:
            parts.extend(sub)
        return tuple(piece for piece, _ in built), parts

    base_shape, parts = build(s, depth(s))
    return ExtendedTree(TreeView(base_shape, MULT), tuple(parts))
