"""OEIS cross-check client: b-file download, local cache, bundled snapshots.

A b-file is the plain-text term listing offered for every OEIS sequence at
``https://oeis.org/<id>/b<digits>.txt``: one ``index value`` pair per line,
``#`` comments allowed.  The client caches fetched files verbatim and ships
snapshots for the sequences the verification suites depend on, so offline
runs are fully hermetic.

Comparisons trust the b-file's own index column (offsets vary from sequence
to sequence) and use exact integer equality.
"""

from __future__ import annotations

import os
import re
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from . import counting
from .errors import DomainError

ID_PATTERN = re.compile(r"^A\d{6}$")

CACHE_ENV_VAR = "FISSION_CACHE_DIR"

# Sequences with a bundled snapshot under fissiontrees/data/.
BUNDLED = ("A000041", "A000070", "A001970")

# Maps a sequence id to the local statistic evaluated at the b-file index.
LOCAL_STATISTICS: dict[str, Callable[[int], int]] = {
    # Partition numbers, index 0 allowed.
    "A000041": counting.partition_number,
    # Partial sums of partition numbers.
    "A000070": lambda n: counting.theta_sequence(n)[n],
    # Multisets of partitions by total weight (trees of slope <= 3).
    "A001970": lambda n: counting.count_unit_trees_upto(3, n),
    # Exact-slope counts with 5 leaves, as a function of the slope.
    "A203552": lambda k: counting.count_unit_trees(k, 5) if k >= 1 else 0,
}


@dataclass(frozen=True)
class OeisRef:
    id: str
    offset: int
    terms: tuple[int, ...]

    def __post_init__(self):
        if not ID_PATTERN.match(self.id):
            raise DomainError(f"bad sequence id {self.id!r}")
        if not self.terms:
            raise DomainError("a loaded sequence must have at least one term")


@dataclass(frozen=True)
class Comparison:
    id: str
    source: str            # "cache" | "network" | "bundled"
    compared: int
    first_mismatch: int | None   # b-file index of the first differing term
    expected: int | None = None  # local value at that index
    actual: int | None = None    # fetched value at that index

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None


def bfile_name(seq_id: str) -> str:
    return f"b{seq_id[1:]}.txt"


def bfile_url(seq_id: str) -> str:
    return f"https://oeis.org/{seq_id}/{bfile_name(seq_id)}"


def parse_bfile(text: str, seq_id: str) -> OeisRef:
    pairs: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise DomainError(f"{seq_id}: malformed b-file line {lineno}: {line!r}")
        pairs.append((int(fields[0]), int(fields[1])))
    if not pairs:
        raise DomainError(f"{seq_id}: empty b-file")
    return OeisRef(seq_id, pairs[0][0], tuple(v for _, v in pairs))


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fission-trees"


def _http_get(url: str) -> str:
    with urllib.request.urlopen(url, timeout=30) as resp:
        return resp.read().decode("utf-8")


class OeisClient:
    """Loads b-files with the precedence cache > network > bundled snapshot.

    In offline mode the network step is skipped.  Every load appends a trace
    line describing the source used, so cache behaviour is observable.
    """

    def __init__(self, cache_dir: Path | str | None = None, offline: bool = False,
                 fetcher: Callable[[str], str] | None = None):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self.offline = offline
        self.fetcher = fetcher or _http_get
        self.trace: list[str] = []
        self.network_calls = 0

    def load(self, seq_id: str) -> tuple[OeisRef, str]:
        if not ID_PATTERN.match(seq_id):
            raise DomainError(f"bad sequence id {seq_id!r} (expected 'A' + 6 digits)")
        cache_file = self.cache_dir / bfile_name(seq_id)
        if cache_file.exists():
            self.trace.append(f"{seq_id}: cache hit ({cache_file})")
            return parse_bfile(cache_file.read_text(), seq_id), "cache"
        if not self.offline:
            self.network_calls += 1
            self.trace.append(f"{seq_id}: fetching {bfile_url(seq_id)}")
            try:
                text = self.fetcher(bfile_url(seq_id))
            except OSError as exc:
                raise OSError(
                    f"{seq_id}: no cached data and the fetch failed: {exc}") from exc
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            cache_file.write_text(text)
            self.trace.append(f"{seq_id}: cached to {cache_file}")
            return parse_bfile(text, seq_id), "network"
        if seq_id in BUNDLED:
            text = resources.files("fissiontrees").joinpath(
                "data", bfile_name(seq_id)).read_text()
            self.trace.append(f"{seq_id}: bundled snapshot")
            return parse_bfile(text, seq_id), "bundled"
        raise OSError(
            f"{seq_id}: no cached data (offline, no cache entry, no bundled snapshot)")

    def compare(self, seq_id: str, n_terms: int) -> Comparison:
        """Compare the first n_terms of the fetched sequence against the
        corresponding local statistic, honouring the b-file index column."""
        if n_terms < 1:
            raise DomainError("need at least one term to compare")
        if seq_id not in LOCAL_STATISTICS:
            raise DomainError(
                f"{seq_id}: no local statistic is mapped to this sequence "
                f"(known: {', '.join(sorted(LOCAL_STATISTICS))})")
        ref, source = self.load(seq_id)
        stat = LOCAL_STATISTICS[seq_id]
        count = min(n_terms, len(ref.terms))
        for i in range(count):
            index = ref.offset + i
            expected = stat(index)
            actual = ref.terms[i]
            if expected != actual:
                return Comparison(seq_id, source, count, index, expected, actual)
        return Comparison(seq_id, source, count, None)
