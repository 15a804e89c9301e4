"""Exact count statistics for trees and their derived graphs.

Everything is computed with Python integers, so the results are exact at any
size.  The central tool is the Euler transform, which turns the count of
connected objects by weight into the count of finite multisets of those
objects by total weight.  Iterating it from the single weight-1 object grades
the trees by slope; the statistics below are differences and shifts of the
resulting rows.

Sequences are 1-indexed (index 1 is weight/rank 1) except for
``theta_sequence``, whose value at 0 is needed by the supernova counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DomainError


# ---------------------------------------------------------------------------
# Transforms and base sequences
# ---------------------------------------------------------------------------

def euler_transform(a: Sequence[int]) -> list[int]:
    """Euler transform of a 1-indexed integer sequence.

    With c_i = sum over divisors d of i of d * a_d, the output satisfies
    b_i = (c_i + sum_{d<i} c_d * b_{i-d}) / i.  Every division is exact; a
    nonzero remainder would mean an arithmetic bug, not bad input.
    """
    n = len(a)
    c = [0] * (n + 1)
    for d in range(1, n + 1):
        ad = a[d - 1]
        if ad:
            for i in range(d, n + 1, d):
                c[i] += d * ad
    b = [0] * (n + 1)
    for i in range(1, n + 1):
        total = c[i] + sum(c[d] * b[i - d] for d in range(1, i))
        q, r = divmod(total, i)
        if r:
            raise ArithmeticError(f"euler transform: inexact division at index {i}")
        b[i] = q
    return b[1:]


def _partitions_by_recurrence(n_max: int) -> list[int]:
    """p(0..n_max) via the pentagonal-number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sign = -1 if j % 2 == 0 else 1
            total += sign * p[n - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            j += 1
        p[n] = total
    return p


@lru_cache(maxsize=None)
def _partitions_with_zero(n_max: int) -> tuple[int, ...]:
    """p(0..n_max), cross-checked between two independent methods."""
    rec = _partitions_by_recurrence(n_max)
    if n_max >= 1:
        via_euler = euler_transform([1] * n_max)
        if via_euler != rec[1:]:
            raise ArithmeticError("partition sequence: methods disagree")
    return tuple(rec)


def partition_sequence(n_max: int) -> list[int]:
    """p(1..n_max), the number of integer partitions of each n."""
    if n_max < 1:
        raise DomainError("partition_sequence requires n_max >= 1")
    return list(_partitions_with_zero(n_max)[1:])


def partition_number(n: int) -> int:
    """p(n) for n >= 0, with p(0) = 1."""
    if n < 0:
        raise DomainError("partition_number requires n >= 0")
    return _partitions_with_zero(n)[n]


def theta_sequence(n_max: int) -> list[int]:
    """Partial sums theta(n) = p(0) + ... + p(n), returned for n = 0..n_max."""
    if n_max < 0:
        raise DomainError("theta_sequence requires n_max >= 0")
    p = _partitions_with_zero(n_max)
    out = []
    acc = 0
    for v in p:
        acc += v
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Slope-graded tree counts
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _upto_row(k: int, n_max: int) -> tuple[int, ...]:
    """Row of counts of trees with slope <= k, for weights 1..n_max."""
    if k == 0:
        return tuple([1] + [0] * (n_max - 1))
    return tuple(euler_transform(_upto_row(k - 1, n_max)))


def count_unit_trees_upto(k: int, n: int) -> int:
    """Multiplicity-one trees of slope <= k with n leaves (cumulative count)."""
    if k < 0 or n < 1:
        raise DomainError("count_unit_trees_upto requires k >= 0, n >= 1")
    return _upto_row(k, n)[n - 1]


def count_unit_trees(k: int, n: int) -> int:
    """Multiplicity-one trees of slope exactly k with n leaves.

    This is the 'phi' statistic of the count command.
    """
    if k < 0 or n < 1:
        raise DomainError("count_unit_trees requires k >= 0, n >= 1")
    if k == 0:
        return 1 if n == 1 else 0
    return _upto_row(k, n)[n - 1] - _upto_row(k - 1, n)[n - 1]


def count_trees(k: int, n: int) -> int:
    """Trees of slope k and rank n with arbitrary leaf multiplicities ('psi').

    There is exactly one slope-0 tree of each rank (a single weighted leaf);
    for k >= 1 the slope shift identifies these trees with the
    multiplicity-one trees of slope k + 1.
    """
    if k < 0 or n < 1:
        raise DomainError("count_trees requires k >= 0, n >= 1")
    if k == 0:
        return 1
    return count_unit_trees(k + 1, n)


def count_star_equipped(n: int) -> int:
    """Equipped star-shaped graphs of rank n (simply-laced core cases).

    Two formulas must agree: floor(n/2) + p(2) + ... + p(n-1) + 2 - n and
    theta(n-1) - ceil(n/2).
    """
    if n < 2:
        raise DomainError("count_star_equipped requires n >= 2")
    p = _partitions_with_zero(n - 1)
    direct = n // 2 + sum(p[2:n]) + 2 - n
    via_theta = theta_sequence(n - 1)[n - 1] - (-(-n // 2))
    if direct != via_theta:
        raise ArithmeticError("star-equipped count: formulas disagree")
    return direct


def count_star_graphs(n: int) -> int:
    """Star-shaped graphs with n nodes: p(n-1) - floor((n-1)/2)."""
    if n < 2:
        raise DomainError("count_star_graphs requires n >= 2")
    return _partitions_with_zero(n - 1)[n - 1] - (n - 1) // 2


def count_supernova_graphs(k: int, n: int) -> int:
    """Supernova graphs with n nodes and maximal edge multiplicity k ('sigma').

    For k >= 2 the equipped-graph-to-supernova map is a bijection, giving
    count_trees(k + 1, n).  For k = 1 star-shaped cores collide and the
    count is corrected to count_trees(2, n) + 1 - theta(n - 2).  A one-node
    graph has no edge of multiplicity k >= 1, so the n = 1 column is zero.
    """
    if k < 1 or n < 1:
        raise DomainError("count_supernova_graphs requires k >= 1, n >= 1")
    if n == 1:
        return 0
    if k >= 2:
        return count_trees(k + 1, n)
    return count_trees(2, n) + 1 - theta_sequence(n - 2)[n - 2]


def count_extended(k: int, n: int) -> int:
    """Extended trees of slope k and rank n ('ext')."""
    if k < 0 or n < 1:
        raise DomainError("count_extended requires k >= 0, n >= 1")
    if k == 0:
        return count_unit_trees_upto(3, n)
    return count_trees(k + 2, n)


def count_extended_semisimple(k: int, n: int) -> int:
    """Semisimple extended trees of slope k and rank n ('ext-ss')."""
    if k < 0 or n < 1:
        raise DomainError("count_extended_semisimple requires k >= 0, n >= 1")
    if k == 0:
        return _partitions_with_zero(n)[n]
    return count_unit_trees(k + 2, n)


def count_multisets(k: int, n: int) -> int:
    """Multisets of size n drawn from a k-element set: C(n + k - 1, n)."""
    if k < 0 or n < 0:
        raise DomainError("count_multisets requires k >= 0, n >= 0")
    if k == 0:
        return 1 if n == 0 else 0
    return math.comb(n + k - 1, n)


# Columns 5 and 6 are numerically verified observations, not proved formulas.
EXPERIMENTAL_COLUMNS = frozenset({5, 6})


def closed_form_column(column: int, k: int) -> int:
    """Closed-form value of count_unit_trees(k, column) for columns 3..6."""
    if k < 1:
        raise DomainError("closed_form_column requires k >= 1")
    if column == 3:
        return k
    if column == 4:
        return k * k
    if column == 5:
        num = k * (5 * k * k - 3 * k + 4)
        q, r = divmod(num, 6)
    elif column == 6:
        num = k * (2 * k ** 3 - 2 * k * k + 4 * k - 1)
        q, r = divmod(num, 3)
    else:
        raise DomainError(f"no closed form for column {column}")
    if r:
        raise ArithmeticError(f"closed form column {column}: inexact division")
    return q


def count_dynkin(n: int) -> int:
    """Finite ADE diagrams with n nodes: A_n always, D_n for n >= 4,
    E_6/E_7/E_8 for n = 6, 7, 8."""
    if n < 2:
        raise DomainError("count_dynkin requires n >= 2")
    count = 1
    if n >= 4:
        count += 1
    if n in (6, 7, 8):
        count += 1
    return count


@dataclass(frozen=True)
class SimplyLacedBreakdown:
    starshaped: int
    other: int
    total: int
    non_dynkin: int


def simply_laced_breakdown(n: int) -> SimplyLacedBreakdown:
    """Breakdown of the simple (max multiplicity 1) supernova graphs with n
    nodes: star-shaped ones, the rest, the total, and the total minus the
    finite ADE diagrams."""
    if n < 2:
        raise DomainError("simply_laced_breakdown requires n >= 2")
    total = count_supernova_graphs(1, n)
    star = count_star_graphs(n)
    return SimplyLacedBreakdown(star, total - star, total, total - count_dynkin(n))


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

STATS = ("Phi", "phi", "psi", "sigma", "ext", "ext-ss")

_STAT_CELL = {
    "Phi": count_unit_trees_upto,
    "phi": count_unit_trees,
    "psi": count_trees,
    "sigma": count_supernova_graphs,
    "ext": count_extended,
    "ext-ss": count_extended_semisimple,
}


@dataclass(frozen=True)
class CountTable:
    """A (k, n) grid of exact counts for one statistic."""

    stat: str
    k_min: int
    k_max: int
    n_min: int
    n_max: int
    rows: tuple[tuple[int, ...], ...]

    def cell(self, k: int, n: int) -> int:
        return self.rows[k - self.k_min][n - self.n_min]


def count_table(stat: str, k_max: int, n_max: int) -> CountTable:
    if stat not in STATS:
        raise DomainError(f"unknown statistic {stat!r}; choose from {', '.join(STATS)}")
    if k_max < 1 or n_max < 1:
        raise DomainError("table bounds must be >= 1")
    k_min = 1 if stat == "sigma" else 0
    cell = _STAT_CELL[stat]
    rows = tuple(tuple(cell(k, n) for n in range(1, n_max + 1))
                 for k in range(k_min, k_max + 1))
    return CountTable(stat, k_min, k_max, 1, n_max, rows)


def render_markdown(table: CountTable) -> str:
    header = ["k\\n"] + [str(n) for n in range(table.n_min, table.n_max + 1)]
    body = [[str(table.k_min + i)] + [str(v) for v in row]
            for i, row in enumerate(table.rows)]
    widths = [max(len(r[c]) for r in [header] + body) for c in range(len(header))]
    lines = ["| " + " | ".join(cell.rjust(w) for cell, w in zip(header, widths)) + " |"]
    lines.append("| " + " | ".join("-" * w for w in widths) + " |")
    for row in body:
        lines.append("| " + " | ".join(cell.rjust(w) for cell, w in zip(row, widths)) + " |")
    return "\n".join(lines) + "\n"


def render_csv(table: CountTable) -> str:
    lines = ["k\\n," + ",".join(str(n) for n in range(table.n_min, table.n_max + 1))]
    for i, row in enumerate(table.rows):
        lines.append(str(table.k_min + i) + "," + ",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def render_json(table: CountTable) -> str:
    # Cells exceed 2**53 quickly, so they are serialized as decimal strings.
    obj = {
        "stat": table.stat,
        "kRange": [table.k_min, table.k_max],
        "nRange": [table.n_min, table.n_max],
        "rows": [[str(v) for v in row] for row in table.rows],
    }
    return json.dumps(obj, indent=2) + "\n"


RENDERERS = {"md": render_markdown, "csv": render_csv, "json": render_json}
