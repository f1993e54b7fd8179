"""Backtracking search for small arrays, schemes, and partitions.

The searcher fills rows top-down, cell by cell, under a canonical form that
touches every isomorphism class at least once: the first row is all zeros
(per-column symbol relabeling), rows are lexicographically nondecreasing
(row permutation), and columns of equal level are lexicographically
nondecreasing as vectors (column permutation).  Pruning uses exact partial
tuple counters for every k-column subset plus a running distance floor
against completed rows.  Depth-first order with ascending symbols makes the
first result, and therefore every verdict, deterministic.

A search that exhausts the canonical space proves nonexistence; running out
of node budget is reported distinctly.  Returned arrays are always re-checked
by the exact oracles; the searcher never self-certifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod

import numpy as np

from .algebra import AdditiveGroup, DifferenceScheme, cyclic_group, is_difference_scheme
from .arrays import MixedArray, min_distance, verify_strength
from .errors import ParameterError, VerificationError

__all__ = [
    "SearchSpec",
    "SearchResult",
    "NonexistenceResult",
    "search_moa",
    "search_scheme",
    "search_partition",
    "exhaustive_nonexistence",
]


@dataclass(frozen=True)
class SearchSpec:
    """What to search for: run count, level profile, strength, distance floor."""

    runs: int
    levels: tuple[int, ...]
    strength: int
    min_distance: int | None = None
    node_budget: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(int(d) for d in self.levels))
        if self.runs < 1:
            raise ParameterError("need at least one run")
        if any(d < 2 for d in self.levels):
            raise ParameterError("levels must all be >= 2")
        if not 0 <= self.strength <= len(self.levels):
            raise ParameterError("strength out of range")

    def divisibility_obstruction(self) -> tuple[int, ...] | None:
        """First k-subset whose level product does not divide the run count."""
        for subset in combinations(range(len(self.levels)), self.strength):
            if self.runs % prod(self.levels[j] for j in subset):
                return subset
        return None


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "exhausted" | "budget" | "infeasible"
    array: MixedArray | None = None
    nodes: int = 0
    reason: str | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


@dataclass(frozen=True)
class NonexistenceResult:
    status: str  # "proved" | "counterexample" | "inconclusive"
    counterexample: MixedArray | None = None
    nodes: int = 0
    reason: str | None = None


class _Budget:
    __slots__ = ("nodes", "limit", "hit")

    def __init__(self, limit: int | None):
        self.nodes = 0
        self.limit = limit
        self.hit = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            self.hit = True
            return False
        return True


def _prepare_counters(levels: tuple[int, ...], runs: int, sizes: list[int]):
    """Tuple counters for every subset of each size, grouped by last column."""
    n = len(levels)
    lams: list[int] = []
    counters: list[np.ndarray] = []
    by_last: list[list[tuple[tuple[int, ...], int, list[int]]]] = [[] for _ in range(n)]
    si = 0
    for size in sizes:
        for subset in combinations(range(n), size):
            dims = [levels[j] for j in subset]
            d_prod = prod(dims)
            lams.append(runs // d_prod)
            counters.append([0] * d_prod)
            radix: list[int] = []
            m = 1
            for d in reversed(dims):
                radix.append(m)
                m *= d
            by_last[subset[-1]].append((subset, si, list(reversed(radix))))
            si += 1
    return by_last, counters, lams


class _ArraySearcher:
    """Row-by-row canonical search shared by the MOA search."""

    def __init__(self, spec: SearchSpec):
        self.spec = spec
        self.n = len(spec.levels)
        self.levels = spec.levels
        self.r = spec.runs
        self.w = spec.min_distance
        self.cells = [[0] * self.n] + [[-1] * self.n for _ in range(self.r - 1)]
        if spec.strength >= 1:
            self.by_last, self.counters, self.lams = _prepare_counters(
                spec.levels, spec.runs, [spec.strength]
            )
            for lst in self.by_last:
                for _subset, si, _radix in lst:
                    self.counters[si][0] += 1  # the forced all-zero first row
        else:
            self.by_last = [[] for _ in range(self.n)]
            self.counters, self.lams = [], []
        self.budget = _Budget(spec.node_budget)

    def run(self) -> bool:
        if self.r == 1:
            return True
        return self._fill_row(1)

    def _fill_row(self, i: int) -> bool:
        if i == self.r:
            return True
        pd = [0] * i
        return self._place(i, 0, pd)

    def _starved(self, rows_done: int) -> bool:
        # a tuple whose deficit exceeds the rows still to come can never
        # reach its exact count
        left = self.r - rows_done
        for counter, lam in zip(self.counters, self.lams):
            floor = lam - left
            if floor > 0:
                for c in counter:
                    if c < floor:
                        return True
        return False

    def _place(self, i: int, j: int, pd: list[int]) -> bool:
        if j == self.n:
            if self._starved(i + 1):
                return False
            return self._fill_row(i + 1)
        cells, levels = self.cells, self.levels
        row, prev = cells[i], cells[i - 1]
        lo = prev[j] if all(row[c] == prev[c] for c in range(j)) else 0
        if j and levels[j] == levels[j - 1]:
            # equal-level columns must be lexicographically nondecreasing
            if all(cells[p][j - 1] == cells[p][j] for p in range(i)):
                lo = max(lo, row[j - 1])
        w, counters, lams = self.w, self.counters, self.lams
        touched = self.by_last[j]
        remaining = self.n - j - 1
        for v in range(lo, levels[j]):
            if not self.budget.tick():
                return False
            row[j] = v
            ok = True
            bumped: list[tuple[int, int]] = []
            for subset, si, radix in touched:
                code = 0
                for c, m in zip(subset, radix):
                    code += row[c] * m
                if counters[si][code] >= lams[si]:
                    ok = False
                    break
                counters[si][code] += 1
                bumped.append((si, code))
            if ok and w is not None:
                for p in range(i):
                    if cells[p][j] != v:
                        pd[p] += 1
                for p in range(i):
                    if pd[p] + remaining < w:
                        ok = False
                        break
                if ok:
                    ok = self._place(i, j + 1, pd)
                if not ok:
                    for p in range(i):
                        if cells[p][j] != v:
                            pd[p] -= 1
            elif ok:
                ok = self._place(i, j + 1, pd)
            if ok:
                return True
            for si, code in bumped:
                counters[si][code] -= 1
            if self.budget.hit:
                row[j] = -1
                return False
        row[j] = -1
        return False


def search_moa(spec: SearchSpec) -> SearchResult:
    """Search for an MOA matching the given SearchSpec, under canonical symmetry breaking."""
    obstruction = spec.divisibility_obstruction()
    if obstruction is not None:
        return SearchResult(
            "infeasible",
            reason=f"run count {spec.runs} not divisible by the level product of "
            f"columns {obstruction}",
        )
    if spec.min_distance is not None and spec.min_distance > len(spec.levels):
        if spec.runs > 1:
            return SearchResult(
                "infeasible",
                reason=f"distance floor {spec.min_distance} exceeds "
                f"{len(spec.levels)} columns",
            )
    searcher = _ArraySearcher(spec)
    if searcher.run():
        array = MixedArray(spec.levels, np.array(searcher.cells, dtype=np.int64))
        _certify(array, spec)
        return SearchResult("found", array, nodes=searcher.budget.nodes)
    if searcher.budget.hit:
        return SearchResult("budget", nodes=searcher.budget.nodes)
    return SearchResult("exhausted", nodes=searcher.budget.nodes)


def _certify(array: MixedArray, spec: SearchSpec) -> None:
    report = verify_strength(array, spec.strength)
    if not report.holds:
        raise VerificationError("search produced an array failing the strength oracle")
    if spec.min_distance is not None and array.runs > 1:
        if min_distance(array) < spec.min_distance:
            raise VerificationError("search produced an array below the distance floor")


def search_scheme(
    rows: int,
    cols: int,
    order: int,
    strength: int,
    group: AdditiveGroup | None = None,
    node_budget: int | None = None,
) -> DifferenceScheme | SearchResult:
    """Search for a difference scheme D_t(rows, cols, order).

    Canonical form: first row and first column all zero (row and column
    shifts leave the expansion invariant as a row multiset), rows and columns
    lexicographically nondecreasing.  Counters track shift-normalized
    difference tuples: for every t-subset of columns, each (t-1)-tuple of
    differences against the subset's last column must occur exactly
    rows / order^(t-1) times (and rows / order for pairs).
    """
    group = group or cyclic_group(order)
    if group.order != order:
        raise ParameterError("group order mismatch")
    if strength < 2:
        raise ParameterError("scheme strength must be >= 2")
    if rows % order ** (strength - 1):
        return SearchResult(
            "infeasible", reason=f"{rows} rows not divisible by {order}^{strength - 1}"
        )
    if cols < strength:
        return SearchResult("infeasible", reason="fewer columns than the strength")
    neg = [group.neg(x) for x in range(order)]
    table = [list(map(int, row)) for row in group.table]

    sizes = [2] if strength == 2 else [2, strength]
    lams: list[int] = []
    counters: list[np.ndarray] = []
    by_last: list[list[tuple[tuple[int, ...], int, list[int]]]] = [[] for _ in range(cols)]
    si = 0
    for size in sizes:
        for subset in combinations(range(cols), size):
            lams.append(rows // order ** (size - 1))
            counters.append([0] * order ** (size - 1))
            radix = [order**p for p in range(size - 2, -1, -1)]
            by_last[subset[-1]].append((subset, si, radix))
            si += 1

    cells = [[0] * cols] + [[-1] * cols for _ in range(rows - 1)]
    for lst in by_last:
        for _subset, si_, _radix in lst:
            counters[si_][0] += 1
    budget = _Budget(node_budget)

    def starved(rows_done: int) -> bool:
        left = rows - rows_done
        for counter, lam in zip(counters, lams):
            floor = lam - left
            if floor > 0:
                for c in counter:
                    if c < floor:
                        return True
        return False

    def place(i: int, j: int) -> bool:
        if j == cols:
            if starved(i + 1):
                return False
            return fill_row(i + 1)
        row, prev = cells[i], cells[i - 1]
        if j == 0:
            choices: range | list[int] = [0]
        else:
            lo = prev[j] if all(row[c] == prev[c] for c in range(j)) else 0
            if all(cells[p][j - 1] == cells[p][j] for p in range(i)):
                lo = max(lo, row[j - 1])
            choices = range(lo, order)
        for v in choices:
            if not budget.tick():
                return False
            row[j] = v
            ok = True
            bumped: list[tuple[int, int]] = []
            nv = neg[v]
            for subset, si_, radix in by_last[j]:
                code = 0
                for c, m in zip(subset[:-1], radix):
                    code += table[row[c]][nv] * m
                if counters[si_][code] >= lams[si_]:
                    ok = False
                    break
                counters[si_][code] += 1
                bumped.append((si_, code))
            if ok:
                ok = place(i, j + 1)
            if ok:
                return True
            for si_, code in bumped:
                counters[si_][code] -= 1
            if budget.hit:
                row[j] = -1
                return False
        row[j] = -1
        return False

    def fill_row(i: int) -> bool:
        if i == rows:
            return True
        return place(i, 0)

    if not fill_row(1):
        if budget.hit:
            return SearchResult("budget", nodes=budget.nodes)
        return SearchResult("exhausted", nodes=budget.nodes)
    matrix = np.array(cells, dtype=np.int64)
    report = is_difference_scheme(matrix, order, strength, group)
    if not report.holds:
        raise VerificationError("scheme search result failed the expansion oracle")
    return DifferenceScheme(matrix, order, strength, group, verify=False)


def search_partition(array: MixedArray, block_count: int):
    """Find an orthogonal partition of strength 1 with the given block count.

    Rows are assigned in order; a row may open at most one new block, which
    removes block-permutation symmetry.  The first partition in that
    deterministic order is returned, or None.
    """
    from .constructions import OrthogonalPartition

    r, n = array.cells.shape
    if r % block_count:
        raise ParameterError(f"{r} rows not divisible into {block_count} blocks")
    size = r // block_count
    for j, d in enumerate(array.levels):
        if size % d:
            raise ParameterError(
                f"block size {size} not divisible by level {d} of column {j}"
            )
    quota = [size // d for d in array.levels]
    counts = [
        [np.zeros(d, dtype=np.int64) for d in array.levels] for _ in range(block_count)
    ]
    fill = [0] * block_count
    assign = [-1] * r
    rows = array.cells

    def feasible(b: int, i: int) -> bool:
        if fill[b] == size:
            return False
        return all(counts[b][j][rows[i, j]] < quota[j] for j in range(n))

    def place(i: int, opened: int) -> bool:
        if i == r:
            return True
        for b in range(min(opened + 1, block_count)):
            if feasible(b, i):
                assign[i] = b
                fill[b] += 1
                for j in range(n):
                    counts[b][j][rows[i, j]] += 1
                if place(i + 1, max(opened, b + 1)):
                    return True
                fill[b] -= 1
                for j in range(n):
                    counts[b][j][rows[i, j]] -= 1
                assign[i] = -1
        return False

    if not place(0, 0):
        return None
    blocks = [tuple(i for i in range(r) if assign[i] == b) for b in range(block_count)]
    return OrthogonalPartition(array, tuple(blocks))


def exhaustive_nonexistence(spec: SearchSpec) -> NonexistenceResult:
    """Bounded exhaustive confirmation that no array matches the SearchSpec.

    Uses the five-column counting verdict as a fast pre-filter when it
    applies, then runs the canonical search to exhaustion or budget.
    Verdicts are never asserted beyond what the run actually established.
    """
    if spec.node_budget is None:
        raise ParameterError("nonexistence confirmation requires a node budget")
    if spec.min_distance is not None and len(spec.levels) == 5 and spec.strength == 2:
        from .constructions import five_column_feasibility

        verdict = five_column_feasibility(spec.levels)
        if verdict.impossible and spec.min_distance >= 3:
            return NonexistenceResult("proved", reason=verdict.reason)
    result = search_moa(spec)
    if result.status == "found":
        return NonexistenceResult("counterexample", result.array, result.nodes)
    if result.status in ("exhausted", "infeasible"):
        return NonexistenceResult("proved", nodes=result.nodes, reason=result.reason)
    return NonexistenceResult(
        "inconclusive", nodes=result.nodes, reason=f"node budget {spec.node_budget} reached"
    )
