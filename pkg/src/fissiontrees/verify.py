"""Verification suites: computed statistics against reference data and the
enumeration oracle.

The reference grids below are the published tables this package must
reproduce; every check is exact integer equality, never approximate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import counting, enumeration, graphs
from .trees import LEAFCOUNT, MULT

# Multiplicity-one trees by (slope 0..10, leaves 1..10).
REFERENCE_UNIT_TABLE = (
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 1, 2, 4, 6, 10, 14, 21, 29, 41),
    (0, 1, 3, 9, 20, 47, 96, 201, 394, 775),
    (0, 1, 4, 16, 48, 148, 407, 1121, 2933, 7612),
    (0, 1, 5, 25, 95, 365, 1271, 4383, 14479, 47198),
    (0, 1, 6, 36, 166, 766, 3237, 13466, 53933, 212645),
    (0, 1, 7, 49, 266, 1435, 7140, 34853, 164324, 761829),
    (0, 1, 8, 64, 400, 2472, 14162, 79430, 431242, 2301016),
    (0, 1, 9, 81, 573, 3993, 25893, 164157, 1009029, 6094011),
    (0, 1, 10, 100, 790, 6130, 44392, 314011, 2156113, 14544961),
)

# All trees (arbitrary multiplicities) by (slope 0..10, rank 1..10).
REFERENCE_FULL_TABLE = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 1, 2, 4, 6, 10, 14, 21, 29, 41),
    (0, 1, 3, 9, 20, 47, 96, 201, 394, 775),
    (0, 1, 4, 16, 48, 148, 407, 1121, 2933, 7612),
    (0, 1, 5, 25, 95, 365, 1271, 4383, 14479, 47198),
    (0, 1, 6, 36, 166, 766, 3237, 13466, 53933, 212645),
    (0, 1, 7, 49, 266, 1435, 7140, 34853, 164324, 761829),
    (0, 1, 8, 64, 400, 2472, 14162, 79430, 431242, 2301016),
    (0, 1, 9, 81, 573, 3993, 25893, 164157, 1009029, 6094011),
    (0, 1, 10, 100, 790, 6130, 44392, 314011, 2156113, 14544961),
    (0, 1, 11, 121, 1056, 9031, 72248, 564201, 4280870, 31910879),
)

# Supernova graphs by (max edge multiplicity 1..3, nodes 1..10).
REFERENCE_SUPERNOVA_TABLE = (
    (0, 1, 2, 6, 14, 36, 78, 172, 350, 709),
    (0, 1, 4, 16, 48, 148, 407, 1121, 2933, 7612),
    (0, 1, 5, 25, 95, 365, 1271, 4383, 14479, 47198),
)

# Simple supernova graphs by node count 2..10:
# (star-shaped, other, total, total non-Dynkin).
REFERENCE_SIMPLY_LACED_TABLE = (
    (1, 0, 1, 0),
    (1, 1, 2, 1),
    (2, 4, 6, 4),
    (3, 11, 14, 12),
    (5, 31, 36, 33),
    (8, 70, 78, 75),
    (12, 160, 172, 169),
    (18, 332, 350, 348),
    (26, 683, 709, 707),
)

REFERENCE_PARTITION_PREFIX = (1, 2, 3, 5, 7, 11, 15, 22, 30, 42)
REFERENCE_DOUBLE_PARTITION_PREFIX = (1, 3, 6, 14, 27, 58, 111, 223, 424, 817)

SUITES = ("tables", "oracle", "closed-form", "figures", "all")


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, expected, actual) -> None:
        self.checks.append(Check(name, expected, actual))

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.ok)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def lines(self) -> list[str]:
        out = [f"suite: {self.suite}"]
        for c in self.checks:
            if c.ok:
                out.append(f"  [PASS] {c.name}")
            else:
                out.append(f"  [FAIL] {c.name}: expected {c.expected}, got {c.actual}")
        out.append(f"summary: {self.passed} passed, {self.failed} failed")
        return out


def _tables(report: VerifyReport) -> None:
    unit = counting.count_table("phi", 10, 10)
    report.add("unit-tree table (slope 0..10, leaves 1..10)",
               REFERENCE_UNIT_TABLE, unit.rows)
    full = counting.count_table("psi", 10, 10)
    report.add("full tree table (slope 0..10, rank 1..10)",
               REFERENCE_FULL_TABLE, full.rows)
    nova = counting.count_table("sigma", 3, 10)
    report.add("supernova table (mult 1..3, nodes 1..10)",
               REFERENCE_SUPERNOVA_TABLE, nova.rows)
    laced = tuple(
        (lambda b: (b.starshaped, b.other, b.total, b.non_dynkin))(
            counting.simply_laced_breakdown(n))
        for n in range(2, 11))
    report.add("simply-laced breakdown (nodes 2..10)",
               REFERENCE_SIMPLY_LACED_TABLE, laced)
    report.add("partition prefix", REFERENCE_PARTITION_PREFIX,
               tuple(counting.partition_sequence(10)))
    report.add("double partition prefix", REFERENCE_DOUBLE_PARTITION_PREFIX,
               tuple(counting.count_unit_trees_upto(3, n) for n in range(1, 11)))


def _oracle(report: VerifyReport, k_max: int, n_max: int) -> None:
    for k in range(0, k_max + 1):
        for n in range(1, n_max + 1):
            report.add(f"unit enumeration (slope {k}, leaves {n})",
                       counting.count_unit_trees(k, n),
                       len(enumeration.enum_exact(k, n, LEAFCOUNT)))
    for k in range(0, min(k_max, 4) + 1):
        for n in range(1, n_max + 1):
            report.add(f"full enumeration (slope {k}, rank {n})",
                       counting.count_trees(k, n),
                       len(enumeration.enum_exact(k, n, MULT)))


def _closed_form(report: VerifyReport, k_max: int) -> None:
    for column in (3, 4, 5, 6):
        tag = " (experimental)" if column in counting.EXPERIMENTAL_COLUMNS else ""
        report.add(f"column {column} closed form, slopes 1..{k_max}{tag}",
                   tuple(counting.count_unit_trees(k, column) for k in range(1, k_max + 1)),
                   tuple(counting.closed_form_column(column, k) for k in range(1, k_max + 1)))
    report.add("column 4 closed form at scale (slopes 1..50)",
               tuple(counting.count_unit_trees(k, 4) for k in range(1, 51)),
               tuple(k * k for k in range(1, 51)))


def _figures(report: VerifyReport) -> None:
    report.add("slope-3 trees with 2,3,4 leaves", (1, 3, 9),
               tuple(len(enumeration.enum_exact(3, n, LEAFCOUNT)) for n in (2, 3, 4)))
    gs = [graphs.fission_graph(t) for t in enumeration.enum_exact(3, 4, LEAFCOUNT)]
    report.add("derived graphs: pairwise non-isomorphic", 9,
               len({graphs.canonical_key(g) for g in gs}))
    report.add("derived graphs: max edge multiplicity", {2},
               {g.max_multiplicity() for g in gs})
    nonstar = 0
    for n in range(2, 7):
        for t in enumeration.enum_exact(2, n, LEAFCOUNT):
            if not graphs.is_star_shaped(graphs.fission_graph(t)):
                nonstar += 1
    report.add("non-star simple graphs with <= 6 nodes", 18, nonstar)
    report.add("rank-4 equipped graphs give distinct supernovas", 6,
               len(enumeration.enum_supernova(1, 4)))
    report.add("non-Dynkin simple supernovas with 3,4,5 nodes", (1, 4, 12),
               tuple(sum(1 for g in enumeration.enum_supernova(1, n)
                         if not graphs.is_dynkin(g)) for n in (3, 4, 5)))


def run_suite(suite: str, k_max: int | None = None, n_max: int | None = None) -> VerifyReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = VerifyReport(suite)
    if suite in ("tables", "all"):
        _tables(report)
    if suite in ("oracle", "all"):
        _oracle(report, k_max if k_max is not None else 5,
                n_max if n_max is not None else 8)
    if suite in ("closed-form", "all"):
        _closed_form(report, min(k_max, 10) if k_max is not None else 10)
    if suite in ("figures", "all"):
        _figures(report)
    return report
