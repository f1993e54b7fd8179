"""States induced by arrays and exact uniformity verification.

An r x N array over levels (d_1, ..., d_N) induces the pure state that
superposes one product ket per row with uniform amplitude 1/sqrt(r).  For a
party subset S, the reduced density matrix has exact rational entries

    rho_S(a, b) = (1/r) * #{ordered row pairs (x, y) :
                            x|_S = a, y|_S = b, x|_{S^c} = y|_{S^c}},

so it can be computed by grouping rows on the complement projection; the
ambient Hilbert space is never materialized.  The state is k-uniform when
every k-party reduction equals (1/D_S) * I exactly, which holds iff the
array has strength k and minimal distance >= k + 1 (diagonal uniformity is
the strength condition, vanishing off-diagonals the irredundancy condition);
that equivalence is cross-checked in the test suite, not assumed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, prod

import numpy as np

from .arrays import MixedArray, subset_codes
from .errors import ParameterError

__all__ = [
    "SparseState",
    "DensityMatrix",
    "UniformityReport",
    "emit_state",
    "render_ket",
    "reduced_density",
    "verify_k_uniform",
    "is_ame",
]

_DENSITY_DIMENSION_CAP = 1 << 14


@dataclass(frozen=True)
class SparseState:
    """A uniform superposition of product kets, one per array row."""

    levels: tuple[int, ...]
    kets: tuple[tuple[int, ...], ...]

    @property
    def terms(self) -> int:
        return len(self.kets)

    @property
    def has_duplicate_kets(self) -> bool:
        return len(set(self.kets)) != len(self.kets)

    def amplitude(self) -> str:
        return f"1/sqrt({self.terms})"

    def to_array(self) -> MixedArray:
        return MixedArray.from_rows(self.levels, self.kets)


@dataclass(frozen=True)
class DensityMatrix:
    """Exact-rational reduced density matrix on a party subset."""

    subset: tuple[int, ...]
    dims: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def dimension(self) -> int:
        return prod(self.dims)

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.dimension)), Fraction(0))

    def is_symmetric(self) -> bool:
        d = self.dimension
        return all(
            self.entries[i][j] == self.entries[j][i] for i in range(d) for j in range(i)
        )

    def is_maximally_mixed(self) -> bool:
        d = self.dimension
        target = Fraction(1, d)
        return all(
            self.entries[i][j] == (target if i == j else 0)
            for i in range(d)
            for j in range(d)
        )


@dataclass(frozen=True)
class UniformityReport:
    k: int
    holds: bool
    witness_subset: tuple[int, ...] | None
    subsets_checked: int
    subsets_total: int


def emit_state(array: MixedArray) -> SparseState:
    """One product ket per row, in row order."""
    return SparseState(array.levels, tuple(array.row_tuples()))


def render_ket(state: SparseState) -> str:
    return " + ".join(
        "|" + " ".join(str(s) for s in ket) + "⟩" for ket in state.kets
    )


def reduced_density(array: MixedArray, subset) -> DensityMatrix:
    """Exact reduction to the given parties by complement-projection grouping."""
    subset = tuple(int(j) for j in subset)
    n = array.ncols
    if not subset:
        raise ParameterError("subset must be nonempty")
    if len(set(subset)) != len(subset):
        raise ParameterError("subset has repeated parties")
    if any(not 0 <= j < n for j in subset):
        raise ParameterError(f"subset out of range 0..{n - 1}")
    if len(subset) == n:
        raise ParameterError("subset must be a proper subset of the parties")
    dims = tuple(array.levels[j] for j in subset)
    dim = prod(dims)
    if dim > _DENSITY_DIMENSION_CAP:
        raise ParameterError(
            f"reduction dimension {dim} exceeds the materialization cap; "
            "use verify_k_uniform for the matrix-free check"
        )
    comp = [j for j in range(n) if j not in subset]
    groups: dict[tuple[int, ...], list[int]] = {}
    codes = subset_codes(array.cells, array.levels, subset)
    for i, key in enumerate(map(tuple, array.cells[:, comp].tolist())):
        groups.setdefault(key, []).append(int(codes[i]))
    r = array.runs
    rho = [[Fraction(0)] * dim for _ in range(dim)]
    for members in groups.values():
        for a in members:
            for b in members:
                rho[a][b] += Fraction(1, r)
    return DensityMatrix(subset, dims, tuple(tuple(row) for row in rho))


def _uniform_on_subset(array: MixedArray, subset: tuple[int, ...]) -> bool:
    """Exact test rho_S == (1/D_S) I without building the matrix.

    Grouping rows by their complement projection, the reduction is maximally
    mixed iff every group is constant on S (off-diagonals vanish) and, for
    every value a of the S-projection, sum over groups with value a of
    |group|^2 equals r / D_S (diagonal uniformity).
    """
    cells = array.cells
    r, n = cells.shape
    comp = [j for j in range(n) if j not in subset]
    d_s = prod(array.levels[j] for j in subset)
    if r % d_s:
        return False
    target = r // d_s
    s_codes = subset_codes(cells, array.levels, subset)
    comp_bits = sum(float(np.log2(array.levels[j])) for j in comp)
    if comp_bits < 62:
        comp_ids = subset_codes(cells, array.levels, comp)
    else:
        # complement too wide for one int64 code: group by unique rows
        _, comp_ids = np.unique(cells[:, comp], axis=0, return_inverse=True)
        comp_ids = comp_ids.reshape(-1)
    order = np.argsort(comp_ids, kind="stable")
    sorted_ids = comp_ids[order]
    if r > 1 and bool((np.diff(sorted_ids) != 0).all()):
        # all complement projections distinct: plain counts decide the diagonal
        return bool((np.bincount(s_codes, minlength=d_s) == target).all())
    sorted_s = s_codes[order]
    boundaries = np.flatnonzero(np.diff(sorted_ids)) + 1
    starts = np.concatenate([[0], boundaries])
    ends = np.concatenate([boundaries, [r]])
    diag = np.zeros(d_s, dtype=np.int64)
    for lo, hi in zip(starts, ends):
        block = sorted_s[lo:hi]
        if hi - lo > 1 and (block != block[0]).any():
            return False  # off-diagonal mass
        diag[block[0]] += (hi - lo) ** 2
    return bool((diag == target).all())


def verify_k_uniform(array: MixedArray, k: int) -> UniformityReport:
    """True iff every |S| = k reduction equals (1/D_S) I exactly.

    Subsets are enumerated in lexicographic order and the first failing
    subset is the witness.
    """
    n = array.ncols
    if not 1 <= k < n:
        raise ParameterError(f"uniformity strength must satisfy 1 <= k < {n}, got {k}")
    total = comb(n, k)
    checked = 0
    for subset in combinations(range(n), k):
        checked += 1
        if not _uniform_on_subset(array, subset):
            return UniformityReport(k, False, subset, checked, total)
    return UniformityReport(k, True, None, checked, total)


def is_ame(array: MixedArray) -> bool:
    """Absolutely maximally entangled: uniform at k = floor(N / 2)."""
    n = array.ncols
    if n < 2:
        raise ParameterError("need at least two parties")
    return verify_k_uniform(array, n // 2).holds
