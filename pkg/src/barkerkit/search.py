"""Barker sequence search.

The pruned search fixes entries in pairs from the outside in
(a_1, a_n, a_2, a_{n-1}, ...).  Once the outer t pairs are set, the high lag
C_{n-t} only involves already-fixed entries, so it can be checked right
away; most branches die within a few pairs.  ``prune=False`` is a plain
walk over all 2^n patterns and serves as the oracle for the pruned path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from ._parallel import prefix_bits, run_tasks
from .seqcore import MAX_LENGTH, BinarySequence, alternate, negate, reverse

PRUNED_MAX_N = 32
PLAIN_MAX_N = 24
KNOWN_BARKER_LENGTHS = frozenset({2, 3, 4, 5, 7, 11, 13})
CONSTRAINTS = ("equal_odd_correlations",)


class BudgetError(ValueError):
    """The requested search or verification exceeds the configured budget."""


def known_barker_lengths() -> frozenset[int]:
    return KNOWN_BARKER_LENGTHS


@dataclass(frozen=True)
class SearchConfig:
    n: int
    prune: bool = True
    canonicalize: bool = False
    max_results: Optional[int] = None
    workers: int = 1
    max_n: Optional[int] = None
    constraint: Optional[str] = None

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        if self.max_results is not None and self.max_results < 0:
            raise ValueError("max_results must be non-negative")
        if self.constraint is not None and self.constraint not in CONSTRAINTS:
            raise ValueError(f"unknown constraint {self.constraint!r}")
        limit = self.limit
        if self.n < 2:
            raise BudgetError(f"n must be at least 2, got {self.n}")
        if self.n > limit:
            kind = "pruned" if self.prune else "plain"
            raise BudgetError(f"n={self.n} exceeds the {kind} search budget of n <= {limit}")

    @property
    def limit(self) -> int:
        default = PRUNED_MAX_N if self.prune else PLAIN_MAX_N
        return min(self.max_n if self.max_n is not None else default, MAX_LENGTH)


@dataclass(frozen=True)
class SearchResult:
    n: int
    sequences: tuple[BinarySequence, ...]
    nodes_visited: int
    pruned: int
    elapsed: float = field(default=0.0, compare=False)
    canonical: bool = False
    constraint: Optional[str] = None

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "canonical": self.canonical,
            "constraint": self.constraint,
            "count": len(self.sequences),
            "sequences": [s.render() for s in self.sequences],
            "nodes_visited": self.nodes_visited,
            "pruned": self.pruned,
        }
        if include_timing:
            d["elapsed"] = round(self.elapsed, 6)
        return d


# -- bit-level helpers ------------------------------------------------------

def _is_barker_bits(x: int, n: int) -> bool:
    for k in range(1, n):
        mism = ((x ^ (x >> k)) & ((1 << (n - k)) - 1)).bit_count()
        c = n - k - 2 * mism
        if c > 1 or c < -1:
            return False
    return True


def _acf_bits(x: int, n: int) -> list[int]:
    return [n] + [n - k - 2 * ((x ^ (x >> k)) & ((1 << (n - k)) - 1)).bit_count() for k in range(1, n)]


def _passes_constraint(x: int, n: int, constraint: Optional[str]) -> bool:
    if constraint is None:
        return True
    c = _acf_bits(x, n)
    return len({c[k] for k in range(1, n // 2, 2)}) <= 1


# -- pruned depth-first search ----------------------------------------------

def _expand(n: int, t: int, x: int, stop_depth: Optional[int], constraint: Optional[str],
            leaves: list[int], frontier: list[tuple[int, int]], stats: list[int]) -> None:
    """Extend a state with ``t`` outer pairs fixed.

    Leaves that pass every check go to ``leaves``; states reaching
    ``stop_depth`` pairs go to ``frontier``.  ``stats`` is [visited, pruned].
    """
    half = n // 2
    if t == half:
        if n % 2:
            mid = half
            for bit in (0, 1):
                y = x | (bit << mid)
                stats[0] += 1
                if _is_barker_bits(y, n) and _passes_constraint(y, n, constraint):
                    leaves.append(y)
                else:
                    stats[1] += 1
        else:
            # lags >= n/2 were checked on the way down
            if _is_barker_bits(x, n) and _passes_constraint(x, n, constraint):
                leaves.append(x)
        return
    if stop_depth is not None and t == stop_depth:
        frontier.append((t, x))
        return
    k = t + 1
    low = k - 1
    high = n - k
    lag = n - k
    kmask = (1 << k) - 1
    for lb in (0, 1):
        for hb in (0, 1):
            y = x | (lb << low) | (hb << high)
            stats[0] += 1
            # C_{n-k} = sum_{j<=k} a_j a_{j+n-k}: only outer entries are involved
            c = k - 2 * ((y ^ (y >> lag)) & kmask).bit_count()
            if c > 1 or c < -1 or (c - k) % 2:
                stats[1] += 1
                continue
            _expand(n, k, y, stop_depth, constraint, leaves, frontier, stats)


def _pruned_task(args: tuple[int, int, int, Optional[str]]) -> tuple[list[int], int, int]:
    n, t, x, constraint = args
    leaves: list[int] = []
    stats = [0, 0]
    _expand(n, t, x, None, constraint, leaves, [], stats)
    return leaves, stats[0], stats[1]


def _plain_task(args: tuple[int, int, int, Optional[str]]) -> tuple[list[int], int, int]:
    n, lo, hi, constraint = args
    found = [x for x in range(lo, hi) if _is_barker_bits(x, n) and _passes_constraint(x, n, constraint)]
    return found, hi - lo, 0


def _run_pruned(n: int, workers: int, constraint: Optional[str]) -> tuple[list[int], int, int]:
    split = min(prefix_bits(workers), n // 2)
    leaves: list[int] = []
    frontier: list[tuple[int, int]] = []
    stats = [0, 0]
    _expand(n, 0, 0, split if split else None, constraint, leaves, frontier, stats)
    tasks = [(n, t, x, constraint) for t, x in frontier]
    for found, visited, pruned in run_tasks(_pruned_task, tasks, workers):
        leaves.extend(found)
        stats[0] += visited
        stats[1] += pruned
    return leaves, stats[0], stats[1]


def _run_plain(n: int, workers: int, constraint: Optional[str]) -> tuple[list[int], int, int]:
    # partition on the top bits of the pattern, i.e. fixed-length prefixes
    parts = 1 << min(2 * prefix_bits(workers), n)
    size = (1 << n) // parts
    tasks = [(n, i * size, (i + 1) * size, constraint) for i in range(parts)]
    leaves: list[int] = []
    visited = 0
    for found, v, _ in run_tasks(_plain_task, tasks, workers):
        leaves.extend(found)
        visited += v
    return leaves, visited, 0


# -- symmetry canonicalization ----------------------------------------------

GENERATORS = (negate, reverse, alternate)


def orbit(a: BinarySequence) -> frozenset[BinarySequence]:
    """Closure of ``{a}`` under negate, reverse and alternate."""
    seen = {a}
    todo = [a]
    while todo:
        s = todo.pop()
        for g in GENERATORS:
            t = g(s)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return frozenset(seen)


def canonical_form(a: BinarySequence) -> BinarySequence:
    return min(orbit(a), key=lambda s: s.bits)


# -- public entry points ----------------------------------------------------

def search_barker(config: SearchConfig) -> SearchResult:
    start = time.perf_counter()
    n = config.n
    runner = _run_pruned if config.prune else _run_plain
    patterns, visited, pruned = runner(n, config.workers, config.constraint)
    seqs = sorted({BinarySequence.from_pattern(n, x) for x in patterns}, key=lambda s: s.bits)
    if config.canonicalize:
        seqs = sorted({canonical_form(s) for s in seqs}, key=lambda s: s.bits)
    if config.max_results is not None:
        seqs = seqs[: config.max_results]
    return SearchResult(
        n=n,
        sequences=tuple(seqs),
        nodes_visited=visited,
        pruned=pruned,
        elapsed=time.perf_counter() - start,
        canonical=config.canonicalize,
        constraint=config.constraint,
    )


def search_constrained(n: int, constraint: str = "equal_odd_correlations", *,
                       workers: int = 1, prune: bool = True, max_n: Optional[int] = None) -> SearchResult:
    """Barker sequences of even length n with C_1 = C_3 = ... = C_{n/2-1}."""
    if n % 2 or n < 4:
        raise ValueError(f"search_constrained needs even n >= 4, got {n}")
    return search_barker(SearchConfig(n, prune=prune, workers=workers, max_n=max_n, constraint=constraint))
