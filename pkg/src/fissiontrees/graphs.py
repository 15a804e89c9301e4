"""Multigraphs derived from trees: construction, inversion, canonical form.

A Multigraph is a symmetric matrix of edge multiplicities with zero diagonal
(no loops).  It may carry one of two optional per-vertex annotations: ``dims``
(positive dimensions, making an equipped graph) or ``legs`` (leg lengths for
the compact supernova presentation).

The bridge between trees and graphs is the matrix of nearest-common-ancestor
heights h over the leaves: the fission graph has edge multiplicities h - 2
and the Stokes quiver h - 1.  A symmetric matrix with entries >= 2 arises
this way exactly when, for any three leaves, the two largest of the three
pairwise values are equal; that condition drives the inverse construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import PreconditionError, ResourceLimitError, TreeError
from .trees import (
    LEAFCOUNT,
    MULT,
    Shape,
    TreeView,
    canonical_shape,
    depth,
    leaf_weights,
    slope,
)

DEFAULT_CANON_BOUND = 16


@dataclass(frozen=True)
class Multigraph:
    n: int
    mult: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...] | None = None
    legs: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise TreeError("vertex count must be >= 0")
        m = self.mult
        if len(m) != self.n or any(len(row) != self.n for row in m):
            raise TreeError("multiplicity matrix must be n x n")
        for i in range(self.n):
            if m[i][i] != 0:
                raise TreeError("diagonal must be zero (no edge loops)")
            for j in range(i + 1, self.n):
                if m[i][j] != m[j][i]:
                    raise TreeError("multiplicity matrix must be symmetric")
                if m[i][j] < 0:
                    raise TreeError("edge multiplicities must be >= 0")
        if self.dims is not None and self.legs is not None:
            raise TreeError("at most one of dims/legs may be present")
        if self.dims is not None:
            if len(self.dims) != self.n or any(d < 1 for d in self.dims):
                raise TreeError("dims must assign a positive integer per vertex")
        if self.legs is not None:
            if len(self.legs) != self.n or any(l < 0 for l in self.legs):
                raise TreeError("legs must assign an integer >= 0 per vertex")

    def degree(self, v: int) -> int:
        """Total degree counting multiplicity."""
        return sum(self.mult[v])

    def max_multiplicity(self) -> int:
        return max((m for row in self.mult for m in row), default=0)

    def edges(self) -> list[tuple[int, int, int]]:
        """(i, j, multiplicity) with i < j and multiplicity > 0, sorted."""
        return [(i, j, self.mult[i][j])
                for i in range(self.n) for j in range(i + 1, self.n)
                if self.mult[i][j] > 0]

    def is_simple(self) -> bool:
        return self.max_multiplicity() <= 1

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in range(self.n):
                if self.mult[v][u] > 0 and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n


def multigraph(n: int, edges: Iterable[tuple[int, int, int]] = (),
               dims: Sequence[int] | None = None,
               legs: Sequence[int] | None = None) -> Multigraph:
    """Build a Multigraph from an edge list of (i, j, multiplicity)."""
    m = [[0] * n for _ in range(n)]
    for i, j, k in edges:
        if i == j:
            raise TreeError("edge loops are not allowed")
        m[i][j] += k
        m[j][i] += k
    return Multigraph(n, tuple(tuple(row) for row in m),
                      tuple(dims) if dims is not None else None,
                      tuple(legs) if legs is not None else None)


# ---------------------------------------------------------------------------
# Heights and graph constructions
# ---------------------------------------------------------------------------

def _heights(shape: Shape, unit: bool) -> list[list[int]]:
    """Pairwise ancestor heights over the leaves of a canonical shape.

    With unit=True a leaf of weight m expands into m unit leaves sharing a
    parent (pairwise height 2); otherwise leaves are single nodes.  Two
    leaves split at an inner node of depth d meet at height d + 1 in the
    unit reading and d in the multiplicity reading.
    """
    if isinstance(shape, int):
        if unit:
            m = shape
            return [[0 if i == j else 2 for j in range(m)] for i in range(m)]
        return [[0]]
    blocks = [_heights(c, unit) for c in shape]
    cross = depth(shape) + 1 if unit else depth(shape)
    total = sum(len(b) for b in blocks)
    h = [[cross] * total for _ in range(total)]
    offset = 0
    for b in blocks:
        size = len(b)
        for i in range(size):
            for j in range(size):
                h[offset + i][offset + j] = b[i][j]
        offset += size
    return h


def nca_heights(tv: TreeView) -> tuple[tuple[int, ...], ...]:
    """Height matrix of nearest common ancestors over the unit leaves.

    Defined for LEAFCOUNT trees; the diagonal is 0 as a sentinel.  A
    single-leaf tree yields the empty 1 x 1 matrix.
    """
    if tv.view != LEAFCOUNT:
        raise PreconditionError("nca_heights expects a LEAFCOUNT view")
    return tuple(tuple(row) for row in _heights(tv.shape, unit=True))


def is_ultrametric(h: Sequence[Sequence[int]]) -> bool:
    """For every triple, the two largest pairwise values must be equal."""
    n = len(h)
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                a, b, c = sorted((h[i][j], h[i][l], h[j][l]))
                if b != c:
                    return False
    return True


def fission_graph(tv: TreeView) -> Multigraph:
    """Graph on the unit leaves with h - 2 edges between each pair.

    Requires slope >= 2, which makes the result connected; the maximal edge
    multiplicity equals slope - 1.
    """
    if tv.view != LEAFCOUNT:
        raise PreconditionError("fission_graph expects a LEAFCOUNT view")
    if slope(tv) < 2:
        raise PreconditionError("fission_graph requires slope >= 2")
    h = _heights(tv.shape, unit=True)
    n = len(h)
    return Multigraph(n, tuple(
        tuple(0 if i == j else h[i][j] - 2 for j in range(n)) for i in range(n)))


def stokes_quiver(tv: TreeView) -> Multigraph:
    """Graph on the unit leaves with h - 1 edges between each pair.

    Slope 1 is allowed (it yields the complete graph); a single leaf gives
    the one-vertex graph.
    """
    if tv.view != LEAFCOUNT:
        raise PreconditionError("stokes_quiver expects a LEAFCOUNT view")
    h = _heights(tv.shape, unit=True)
    n = len(h)
    return Multigraph(n, tuple(
        tuple(0 if i == j else h[i][j] - 1 for j in range(n)) for i in range(n)))


def equipped_fission_graph(tv: TreeView) -> Multigraph:
    """Fission graph of a multiplicity tree, nodes carrying the multiplicities.

    Vertices are the bottom nodes of the tree; the edge count between two of
    them is their ancestor height minus 2 and the vertex dimensions are the
    leaf multiplicities.  Requires slope >= 2 (max edge multiplicity is then
    exactly slope - 1 and the graph is connected).
    """
    if tv.view != MULT:
        raise PreconditionError("equipped_fission_graph expects a MULT view")
    if slope(tv) < 2:
        raise PreconditionError("equipped_fission_graph requires slope >= 2")
    h = _heights(tv.shape, unit=False)
    n = len(h)
    return Multigraph(n, tuple(
        tuple(0 if i == j else h[i][j] - 2 for j in range(n)) for i in range(n)),
        dims=tuple(leaf_weights(tv.shape)))


def complete_multipartite(parts: Sequence[int]) -> Multigraph:
    """Vertices split into parts; one edge exactly between distinct parts."""
    if not parts or any(p < 1 for p in parts):
        raise TreeError("parts must be a non-empty list of positive integers")
    block = []
    for idx, p in enumerate(parts):
        block.extend([idx] * p)
    n = len(block)
    return Multigraph(n, tuple(
        tuple(0 if block[i] == block[j] else 1 for j in range(n)) for i in range(n)))


def supernova(core: Multigraph, legs: Sequence[int]) -> Multigraph:
    """Glue a simple path of legs[i] new vertices onto each core vertex i.

    The result has core.n + sum(legs) vertices; leg edges are simple.
    """
    if core.dims is not None or core.legs is not None:
        raise PreconditionError("supernova core must carry no dims/legs")
    legs = list(legs)
    if len(legs) != core.n:
        raise PreconditionError("need one leg length per core vertex")
    if any(l < 0 for l in legs):
        raise TreeError("leg lengths must be >= 0")
    n = core.n + sum(legs)
    m = [[0] * n for _ in range(n)]
    for i in range(core.n):
        for j in range(core.n):
            m[i][j] = core.mult[i][j]
    nxt = core.n
    for i, l in enumerate(legs):
        prev = i
        for _ in range(l):
            m[prev][nxt] = m[nxt][prev] = 1
            prev = nxt
            nxt += 1
    return Multigraph(n, tuple(tuple(row) for row in m))


# ---------------------------------------------------------------------------
# Inversion: from graphs back to trees
# ---------------------------------------------------------------------------

def is_fission_graph(g: Multigraph) -> bool:
    """Whether g is the fission graph of some slope >= 2 tree."""
    if g.dims is not None or g.legs is not None:
        raise PreconditionError("is_fission_graph expects a plain graph")
    if g.n < 2 or not g.is_connected():
        return False
    h = [[0 if i == j else g.mult[i][j] + 2 for j in range(g.n)] for i in range(g.n)]
    return is_ultrametric(h)


def tree_from_graph(g: Multigraph) -> TreeView:
    """Reconstruct the unique tree whose fission graph is g.

    Sets h = mult + 2 and clusters the vertices at decreasing height
    thresholds; the ultrametric condition makes each threshold relation an
    equivalence.  Inverse of fission_graph on canonical trees.
    """
    if not is_fission_graph(g):
        raise TreeError("not a fission graph")
    h = [[0 if i == j else g.mult[i][j] + 2 for j in range(g.n)] for i in range(g.n)]
    top = max(h[i][j] for i in range(g.n) for j in range(i + 1, g.n))

    def cluster(vertices: list[int], d: int) -> Shape:
        if d == 1:
            return len(vertices)
        blocks: list[list[int]] = []
        for v in vertices:
            for b in blocks:
                if h[v][b[0]] <= d:
                    b.append(v)
                    break
            else:
                blocks.append([v])
        return tuple(cluster(b, d - 1) for b in blocks)

    return TreeView(canonical_shape(cluster(list(range(g.n)), top - 1)), LEAFCOUNT)


def extract_core(g: Multigraph) -> tuple[Multigraph, tuple[int, ...]]:
    """Peel the legs off a supernova graph whose core has an edge of
    multiplicity >= 2.

    Repeatedly removes any vertex of total degree 1 whose single edge is
    simple, accumulating leg lengths onto the attachment vertex.  No vertex
    of the core itself can be removed this way (every vertex of a fission
    graph with maximal multiplicity >= 2 has total degree >= 2), so the
    remainder is the unique core.  Raises if the remainder is not such a
    fission graph.
    """
    if g.dims is not None or g.legs is not None:
        raise PreconditionError("extract_core expects a plain graph")
    mult = [list(row) for row in g.mult]
    alive = [True] * g.n
    carried = [0] * g.n
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if not alive[v]:
                continue
            incident = [(u, mult[v][u]) for u in range(g.n)
                        if alive[u] and mult[v][u] > 0]
            if len(incident) == 1 and incident[0][1] == 1 and g.n - sum(
                    not a for a in alive) > 1:
                u = incident[0][0]
                carried[u] += carried[v] + 1
                mult[v][u] = mult[u][v] = 0
                alive[v] = False
                changed = True
    keep = [v for v in range(g.n) if alive[v]]
    idx = {v: i for i, v in enumerate(keep)}
    core = Multigraph(len(keep), tuple(
        tuple(mult[v][u] for u in keep) for v in keep))
    if core.max_multiplicity() < 2 or not is_fission_graph(core):
        raise TreeError("input is not a supernova graph over a multiplicity >= 2 core")
    return core, tuple(carried[v] for v in keep)


def is_star_shaped(g: Multigraph) -> bool:
    """Connected simple tree with at most one vertex of degree > 2.

    Multiple edges disqualify a graph, and so do cycles: star-shaped graphs
    are a center with simple paths glued on, which is a tree.
    """
    if not g.is_simple() or not g.is_connected():
        return False
    if len(g.edges()) != g.n - 1:
        return False
    return sum(1 for v in range(g.n) if g.degree(v) > 2) <= 1


def is_dynkin(g: Multigraph) -> bool:
    """Whether g is a finite ADE diagram: a path, or a star with leg
    lengths (1, 1, m) for D, or (1, 2, 2), (1, 2, 3), (1, 2, 4) for E."""
    if not is_star_shaped(g):
        return False
    centers = [v for v in range(g.n) if g.degree(v) > 2]
    if not centers:
        return True  # a path: type A
    c = centers[0]
    if g.degree(c) != 3:
        return False
    lengths = []
    for u in range(g.n):
        if g.mult[c][u] > 0:
            length = 1
            prev, cur = c, u
            while True:
                nxts = [w for w in range(g.n) if g.mult[cur][w] > 0 and w != prev]
                if not nxts:
                    break
                prev, cur = cur, nxts[0]
                length += 1
            lengths.append(length)
    a, b, d = sorted(lengths)
    if a == 1 and b == 1:
        return True  # type D
    return (a, b) == (1, 2) and d in (2, 3, 4)  # types E6, E7, E8


# ---------------------------------------------------------------------------
# Canonical labeling
# ---------------------------------------------------------------------------

def _refine(g: Multigraph) -> list[int]:
    """Iterated neighbourhood refinement; returns a cell index per vertex,
    cells numbered in an isomorphism-invariant order."""
    attr = g.dims if g.dims is not None else g.legs
    sig = [(attr[v] if attr is not None else 0,) for v in range(g.n)]
    while True:
        new = []
        for v in range(g.n):
            nbrs = sorted((g.mult[v][u], sig[u]) for u in range(g.n)
                          if g.mult[v][u] > 0)
            new.append((sig[v], tuple(nbrs)))
        ranking = {s: i for i, s in enumerate(sorted(set(new)))}
        ranked = [(ranking[s],) for s in new]
        if ranked == sig:
            return [s[0] for s in sig]
        sig = ranked


@lru_cache(maxsize=None)
def _canonical(g: Multigraph, max_n: int) -> tuple[tuple, tuple[int, ...]]:
    """Shared exact search: returns (canonical key, minimizing permutation).

    Vertices are assigned to positions cell by cell (cells ordered by their
    isomorphism-invariant refinement signature); within that constraint the
    search minimizes the sequence of adjacency-row prefixes, pruned against
    the best sequence found so far.
    """
    if g.n > max_n:
        raise ResourceLimitError(
            f"canonical labeling bounded at {max_n} vertices, got {g.n}")
    if g.n == 0:
        return (0, (), ()), ()
    cells = _refine(g)
    attr = g.dims if g.dims is not None else g.legs
    slot_cell = sorted(cells)

    # Vertices whose transposition is an automorphism are interchangeable;
    # exploring one representative per class at each search node suffices
    # and collapses the search on highly symmetric graphs.
    class_id = list(range(g.n))
    for u in range(g.n):
        if class_id[u] != u:
            continue
        for v in range(u + 1, g.n):
            if class_id[v] == v and cells[u] == cells[v] and all(
                    g.mult[u][x] == g.mult[v][x]
                    for x in range(g.n) if x != u and x != v):
                class_id[v] = u

    best: list[tuple[int, ...]] | None = None
    best_perm: list[int] = []
    perm: list[int] = []
    used = [False] * g.n

    def rec(p: int, rows: list[tuple[int, ...]]) -> None:
        nonlocal best, best_perm
        if p == g.n:
            if best is None or rows < best:
                best = list(rows)
                best_perm = list(perm)
            return
        tried: set[int] = set()
        for v in range(g.n):
            if used[v] or cells[v] != slot_cell[p] or class_id[v] in tried:
                continue
            tried.add(class_id[v])
            row = tuple(g.mult[v][perm[q]] for q in range(p))
            if best is not None and rows + [row] > best[:p + 1]:
                continue
            used[v] = True
            perm.append(v)
            rows.append(row)
            rec(p + 1, rows)
            rows.pop()
            perm.pop()
            used[v] = False

    rec(0, [])
    assert best is not None
    flat = tuple(x for row in best for x in row)
    attrs = tuple(slot_cell) if attr is None else tuple(attr[v] for v in best_perm)
    return (g.n, flat, attrs), tuple(best_perm)


def canonical_key(g: Multigraph, max_n: int = DEFAULT_CANON_BOUND) -> tuple:
    """A hashable value equal for two graphs exactly when they are isomorphic
    (respecting dims/legs annotations)."""
    return _canonical(g, max_n)[0]


def canonical_form(g: Multigraph, max_n: int = DEFAULT_CANON_BOUND) -> Multigraph:
    """Relabel g into its canonical form (same key as canonical_key)."""
    _, perm = _canonical(g, max_n)
    m = tuple(tuple(g.mult[perm[i]][perm[j]] for j in range(g.n)) for i in range(g.n))
    dims = tuple(g.dims[v] for v in perm) if g.dims is not None else None
    legs = tuple(g.legs[v] for v in perm) if g.legs is not None else None
    return Multigraph(g.n, m, dims, legs)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def to_dot(g: Multigraph) -> str:
    """Undirected DOT text; an edge of multiplicity m appears m times."""
    lines = ["graph {"]
    for v in range(g.n):
        lines.append(f"  v{v};")
    for i, j, m in g.edges():
        for _ in range(m):
            lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json_obj(g: Multigraph) -> dict:
    obj: dict = {"n": g.n, "edges": [[i, j, m] for i, j, m in g.edges()]}
    if g.dims is not None:
        obj["dims"] = list(g.dims)
    if g.legs is not None:
        obj["legs"] = list(g.legs)
    return obj


def graph_to_json(g: Multigraph) -> str:
    return json.dumps(graph_to_json_obj(g)) + "\n"


def graph_from_json_obj(obj) -> Multigraph:
    if not isinstance(obj, dict) or "n" not in obj:
        raise TreeError("graph JSON must be an object with 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise TreeError("graph JSON field 'n' must be a non-negative integer")
    return multigraph(n, [tuple(e) for e in obj.get("edges", [])],
                      dims=obj.get("dims"), legs=obj.get("legs"))


def graph_from_json(text: str) -> Multigraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeError(f"invalid graph JSON: {exc}") from exc
    return graph_from_json_obj(obj)
