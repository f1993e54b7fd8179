"""Juxtaposition, replacement, and family constructions for irredundant arrays.

Three mechanisms generate everything here:

* juxtaposing a strength-2 host with a square difference scheme,
  C = [A (+) 0_d, D (+) (d)], whose minimal distance is exactly
  min(r, MD(A) + r - r/d);
* juxtaposing two strength-3 arrays along orthogonal partitions of
  strength 1, which yields a strength-3 mixed array with a case-wise
  minimal-distance lower bound;
* expansive replacement, substituting each symbol of a d-level column by
  the matching row of a d-row array. This preserves strength, and it
  preserves irredundancy when the undisturbed columns carry minimal
  distance >= k + 1 and every replaced distance-bearing column keeps all
  sub-columns of an array with distinct rows.

Every family builder ends with a mandatory oracle re-verification (exact
strength check plus minimal distance); certificates distinguish predicted
values from oracle-verified ones, and nothing is ever emitted as verified
without the re-check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace
from itertools import combinations
from math import gcd, lcm, prod

import numpy as np

from .algebra import (
    DifferenceScheme,
    column_vector,
    cyclic_group,
    expand,
    finite_field,
    hadamard01,
    juxtapose_scheme_raw,
    prime_power_decomposition,
    product_construction,
    partition_stack,
)
from .arrays import (
    MixedArray,
    concat_columns,
    delete_columns,
    min_distance,
    select_columns,
    verify_strength,
)
from .errors import ConstructionError, ParameterError, VerificationError

__all__ = [
    "OrthogonalPartition",
    "ColumnReplacement",
    "ReplacementPlan",
    "ConstructionCertificate",
    "certify",
    "juxtapose_scheme",
    "juxtapose_partitions",
    "partition_from_scheme",
    "expansive_replace",
    "bush_oa",
    "bush_oa_even",
    "trivial_moa",
    "five_column_feasibility",
    "FeasibilityVerdict",
    "two_uniform_3m2n",
    "two_uniform_dm2n",
    "three_uniform_3m2n",
    "three_uniform_dm2n",
    "k_uniform_product",
    "two_uniform_from_scheme",
    "two_uniform_prime_power",
]


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class OrthogonalPartition:
    """A partition of an array's rows into equal blocks of strength 1."""

    parent: MixedArray
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        r = self.parent.runs
        flat = [i for b in blocks for i in b]
        if sorted(flat) != list(range(r)):
            raise ParameterError("blocks do not partition the row set")
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1:
            raise ParameterError("blocks are not of equal size")
        size = sizes.pop()
        cells = self.parent.cells
        for bi, block in enumerate(blocks):
            for j, d in enumerate(self.parent.levels):
                if size % d:
                    raise VerificationError(
                        f"block size {size} not divisible by level {d}"
                    )
                counts = np.bincount(cells[list(block), j], minlength=d)
                if (counts != size // d).any():
                    raise VerificationError(
                        f"block {bi} fails the strength-1 check on column {j}"
                    )

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_arrays(self) -> list[MixedArray]:
        return [
            MixedArray(self.parent.levels, self.parent.cells[list(b), :])
            for b in self.blocks
        ]


def partition_from_scheme(scheme: DifferenceScheme) -> OrthogonalPartition:
    """The canonical partition of D (+) (d): one block per scheme row.

    The scheme is re-checked at its declared strength first, so a corrupted
    matrix is rejected here rather than poisoning downstream builds.
    """
    from .algebra import is_difference_scheme

    report = is_difference_scheme(scheme.cells, scheme.order, scheme.strength, scheme.group)
    if not report.holds:
        raise VerificationError("matrix fails its declared difference-scheme strength")
    parent = expand(scheme)
    d = scheme.order
    blocks = tuple(
        tuple(range(i * d, (i + 1) * d)) for i in range(scheme.rows)
    )
    return OrthogonalPartition(parent, blocks)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class ConstructionCertificate:
    """Claimed parameters plus their verification status.

    ``predicted_md`` carries a construction-level value; ``md_exact`` says
    whether that value is an equality or only a lower bound.  ``verified``
    flips to True only after the exact oracles re-check the output.
    """

    construction: str
    runs: int
    profile: str
    strength: int
    predicted_md: int | None = None
    md_formula: str | None = None
    md_exact: bool = False
    verified: bool = False
    measured_md: int | None = None
    seeds: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "schema": "oakit-certificate-v1",
            "construction": self.construction,
            "runs": self.runs,
            "profile": self.profile,
            "strength": self.strength,
            "predicted_min_distance": self.predicted_md,
            "min_distance_formula": self.md_formula,
            "min_distance_is_exact": self.md_exact,
            "verified": self.verified,
            "measured_min_distance": self.measured_md,
            "irredundant": None
            if self.measured_md is None
            else bool(self.measured_md >= self.strength + 1),
            "seeds": list(self.seeds),
            "notes": list(self.notes),
        }


def certify(
    array: MixedArray, certificate: ConstructionCertificate
) -> ConstructionCertificate:
    """Mandatory oracle re-check: exact strength plus measured distance."""
    report = verify_strength(array, certificate.strength)
    if not report.holds:
        raise VerificationError(
            f"{certificate.construction}: strength {certificate.strength} oracle "
            f"failed with witness {report.witness}"
        )
    md = min_distance(array)
    if certificate.predicted_md is not None:
        if certificate.md_exact and md != certificate.predicted_md:
            raise VerificationError(
                f"{certificate.construction}: predicted minimal distance "
                f"{certificate.predicted_md} but measured {md}"
            )
        if not certificate.md_exact and md < certificate.predicted_md:
            raise VerificationError(
                f"{certificate.construction}: minimal distance bound "
                f"{certificate.predicted_md} but measured {md}"
            )
    if md < certificate.strength + 1:
        raise VerificationError(
            f"{certificate.construction}: output is not irredundant at "
            f"k={certificate.strength} (minimal distance {md})"
        )
    return dc_replace(certificate, verified=True, measured_md=md)


# ---------------------------------------------------------------------------
# scheme juxtaposition


def juxtapose_scheme(
    host: MixedArray, scheme: DifferenceScheme
) -> tuple[MixedArray, ConstructionCertificate]:
    """C = [A (+) 0_d, D (+) (d)] for a strength-2 host and square scheme.

    The output is a strength-2 mixed array on N + r columns and d*r runs with
    minimal distance exactly min(r, MD(A) + r - r/d).
    """
    r = host.runs
    if scheme.rows != r:
        raise ParameterError(f"host has {r} rows but scheme has {scheme.rows}")
    if scheme.cols != scheme.rows:
        raise ParameterError("scheme must be square")
    host_report = verify_strength(host, 2)
    if not host_report.holds:
        raise ParameterError(
            f"host fails the strength-2 precondition: witness {host_report.witness}"
        )
    d = scheme.order
    out = juxtapose_scheme_raw(host, scheme)
    md_host = min_distance(host)
    predicted = min(r, md_host + r - r // d)
    cert = ConstructionCertificate(
        construction="juxtapose_scheme",
        runs=out.runs,
        profile=out.profile(),
        strength=2,
        predicted_md=predicted,
        md_formula=f"min(r, MD(host) + r - r/d) = min({r}, {md_host} + {r} - {r // d})",
        md_exact=True,
    )
    return out, cert


# ---------------------------------------------------------------------------
# partition juxtaposition


def _uniform_level(a: MixedArray) -> int:
    levels = set(a.levels)
    if len(levels) != 1:
        raise ParameterError("expected a single-level array")
    return levels.pop()


def juxtapose_partitions(
    a: MixedArray,
    pa: OrthogonalPartition,
    b: MixedArray,
    pb: OrthogonalPartition,
) -> tuple[MixedArray, ConstructionCertificate]:
    """Combine two strength-3 arrays along strength-1 orthogonal partitions.

    With u <= v blocks, h = lcm(u, v), the output stacks h/u copies of
    (A blocks, each row repeated d'') against h/v copies of (B blocks, each
    block tiled d') and juxtaposes columns: a strength-3 mixed array on
    d'd''h runs.  Its minimal distance is bounded below by
    min(w1 + w2, N', N'') when u = v, min(N', w2) when u | v with u < v,
    and min(w1, w2) otherwise.
    """
    if pa.parent != a or pb.parent != b:
        raise ParameterError("partitions must partition their own arrays")
    d1 = _uniform_level(a)
    d2 = _uniform_level(b)
    u, v = pa.block_count, pb.block_count
    if a.runs != d1 * u or b.runs != d2 * v:
        raise ParameterError("block counts must satisfy r = d * blocks")
    if u > v:
        raise ParameterError(f"need u <= v, got u={u} > v={v}")
    for arr, name in ((a, "first"), (b, "second")):
        report = verify_strength(arr, 3)
        if not report.holds:
            raise ParameterError(f"{name} array fails the strength-3 precondition")
    h = lcm(u, v)
    left = partition_stack(pa.block_arrays(), d2, "repeat")
    left = MixedArray(left.levels, np.tile(left.cells, (h // u, 1)))
    right = partition_stack(pb.block_arrays(), d1, "tile")
    right = MixedArray(right.levels, np.tile(right.cells, (h // v, 1)))
    out = concat_columns(left, right)
    w1, w2 = min_distance(a), min_distance(b)
    n1, n2 = a.ncols, b.ncols
    if u == v:
        bound, case = min(w1 + w2, n1, n2), "u = v"
    elif v % u == 0:
        bound, case = min(n1, w2), "u | v, u < v"
    else:
        bound, case = min(w1, w2), "u, v incomparable"
    cert = ConstructionCertificate(
        construction="juxtapose_partitions",
        runs=out.runs,
        profile=out.profile(),
        strength=3,
        predicted_md=bound,
        md_formula=f"case {case}: bound {bound} from w1={w1}, w2={w2}, N'={n1}, N''={n2}",
        md_exact=False,
    )
    return out, cert


# ---------------------------------------------------------------------------
# expansive replacement


@dataclass(frozen=True)
class ColumnReplacement:
    """Replace one column's symbols by rows of ``replacement`` (identity map).

    ``keep`` selects which sub-columns of the replacement survive (None keeps
    all).  ``distance_bearing`` marks columns whose distance contribution the
    irredundancy argument relies on; replaced distance-bearing columns must
    keep every sub-column and have replacement arrays with distinct rows.
    """

    column: int
    replacement: MixedArray
    keep: tuple[int, ...] | None = None
    distance_bearing: bool = True


@dataclass(frozen=True)
class ReplacementPlan:
    items: tuple[ColumnReplacement, ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise ParameterError("empty replacement plan")
        cols = [item.column for item in self.items]
        if len(set(cols)) != len(cols):
            raise ParameterError("plan replaces a column twice")


def expansive_replace(
    a: MixedArray, plan: ReplacementPlan, strength: int
) -> tuple[MixedArray, ConstructionCertificate]:
    """Substitute symbols of chosen columns by rows of replacement arrays.

    Row i of each replacement array stands for symbol i, so its run count
    must equal the replaced column's level.  Strength is preserved; the
    certificate claims irredundancy only when the distance conditions hold
    on the maximal distance-bearing column set, otherwise it records that a
    re-verification is required (and `certify` performs it).
    """
    n = a.ncols
    by_col = {}
    for item in plan.items:
        j = item.column
        if not 0 <= j < n:
            raise ParameterError(f"column {j} out of range")
        if item.replacement.runs != a.levels[j]:
            raise ParameterError(
                f"replacement for column {j} has {item.replacement.runs} rows "
                f"but the column has {a.levels[j]} levels"
            )
        keep = item.keep
        if keep is not None:
            keep = tuple(int(c) for c in keep)
            if any(not 0 <= c < item.replacement.ncols for c in keep):
                raise ParameterError(f"keep indices out of range for column {j}")
        by_col[j] = dc_replace(item, keep=keep)

    pieces: list[np.ndarray] = []
    levels: list[int] = []
    kept_anything = False
    for j in range(n):
        if j not in by_col:
            pieces.append(a.cells[:, [j]])
            levels.append(a.levels[j])
            kept_anything = True
            continue
        item = by_col[j]
        keep = item.keep if item.keep is not None else tuple(range(item.replacement.ncols))
        if not keep:
            continue
        sub = item.replacement.cells[a.cells[:, j]][:, list(keep)]
        pieces.append(sub)
        levels.extend(item.replacement.levels[c] for c in keep)
        kept_anything = True
    if not kept_anything:
        raise ParameterError("plan keeps no columns at all")
    out = MixedArray(tuple(levels), np.hstack(pieces))

    # Irredundancy by the replacement distance conditions: take the maximal
    # candidate set of distance-bearing columns (unreplaced, or replaced
    # keeping every sub-column of an array with distinct rows) and test the
    # host's minimal distance on it.
    bearing = []
    for j in range(n):
        if j not in by_col:
            bearing.append(j)
            continue
        item = by_col[j]
        keeps_all = item.keep is None or tuple(sorted(item.keep)) == tuple(
            range(item.replacement.ncols)
        )
        if (
            item.distance_bearing
            and keeps_all
            and item.replacement.runs > 1
            and min_distance(item.replacement) >= 1
        ):
            bearing.append(j)
    notes: tuple[str, ...]
    predicted = None
    if bearing:
        host_md = min_distance(select_columns(a, bearing))
        if host_md >= strength + 1:
            predicted = strength + 1
            notes = (
                f"irredundant at k={strength}: distance-bearing columns {bearing} "
                f"carry host distance {host_md} >= k+1",
            )
        else:
            notes = (
                f"distance conditions unmet (host distance {host_md} on columns "
                f"{bearing}); re-verify",
            )
    else:
        notes = ("no distance-bearing columns; re-verify",)
    cert = ConstructionCertificate(
        construction="expansive_replace",
        runs=out.runs,
        profile=out.profile(),
        strength=strength,
        predicted_md=predicted,
        md_formula=None if predicted is None else "k + 1 via replacement distance conditions",
        md_exact=False,
        notes=notes,
    )
    return out, cert


def _single_replacement(
    a: MixedArray, column: int, replacement: MixedArray, strength: int
) -> tuple[MixedArray, ConstructionCertificate]:
    plan = ReplacementPlan((ColumnReplacement(column, replacement),))
    return expansive_replace(a, plan, strength)


# ---------------------------------------------------------------------------
# polynomial-evaluation arrays


def bush_oa(q: int, k: int, columns: int | None = None) -> MixedArray:
    """OA(q^k, q+1, q, k) by evaluating degree-<k polynomials over GF(q).

    Row m encodes the polynomial whose coefficient of x^j is the j-th base-q
    digit of m; the first q columns evaluate it at each field element and the
    last column carries the degree-(k-1) coefficient.  The full array has
    minimal distance q + 2 - k, so with q >= 2k - 1 (enforced) it is
    irredundant at k; ``columns`` truncates to the first so-many columns.
    """
    if prime_power_decomposition(q) is None:
        raise ParameterError(f"{q} is not a prime power")
    if k < 1:
        raise ParameterError("strength must be >= 1")
    if q + 1 < 2 * k:
        raise ParameterError(
            f"need q >= 2k - 1 for the irredundancy guarantee, got q={q}, k={k}"
        )
    gf = finite_field(q)
    runs = q**k
    cells = np.zeros((runs, q + 1), dtype=np.int64)
    powers = [[gf.pow(e, j) for j in range(k)] for e in range(q)]
    for m in range(runs):
        coeffs = []
        t = m
        for _ in range(k):
            coeffs.append(t % q)
            t //= q
        for e in range(q):
            acc = 0
            pw = powers[e]
            for j, c in enumerate(coeffs):
                if c:
                    acc = gf.add(acc, gf.mul(c, pw[j]))
            cells[m, e] = acc
        cells[m, q] = coeffs[k - 1]
    array = MixedArray((q,) * (q + 1), cells)
    if columns is not None:
        if not 1 <= columns <= q + 1:
            raise ParameterError(f"columns must be in 1..{q + 1}")
        array = select_columns(array, range(columns))
    return array


def bush_oa_even(q: int) -> MixedArray:
    """Strength-3 array OA(q^3, q+2, q, 3) for even prime powers q.

    Columns evaluate each degree-<3 polynomial at the q field elements and
    append its two top coefficients; over characteristic 2 any three of
    these functionals are independent, giving minimal distance q (= k + 1
    at q = 4).  Verified by the exact oracles on construction.
    """
    pm = prime_power_decomposition(q)
    if pm is None or pm[0] != 2:
        raise ParameterError(f"{q} must be an even prime power")
    gf = finite_field(q)
    runs = q**3
    cells = np.zeros((runs, q + 2), dtype=np.int64)
    for m in range(runs):
        c0, c1, c2 = m % q, (m // q) % q, m // (q * q)
        for e in range(q):
            acc = gf.add(c0, gf.mul(c1, e))
            acc = gf.add(acc, gf.mul(c2, gf.mul(e, e)))
            cells[m, e] = acc
        cells[m, q] = c1
        cells[m, q + 1] = c2
    array = MixedArray((q,) * (q + 2), cells)
    report = verify_strength(array, 3)
    if not report.holds:
        raise ConstructionError("even-characteristic strength-3 construction failed")
    if min_distance(array) != q:
        raise ConstructionError("even-characteristic construction missed its distance")
    return array


def trivial_moa(levels, groups=None) -> MixedArray:
    """Full factorial over the given levels (first column most significant).

    ``groups`` optionally merges consecutive column groups into single
    columns by mixed-radix pairing, e.g. (7,4,2) with groups [(0,1),(2,)]
    becomes the 56-run array over levels (28, 2).  Strength equals the
    column count.
    """
    levels = tuple(int(d) for d in levels)
    if not levels or any(d < 2 for d in levels):
        raise ParameterError("levels must be a nonempty list of integers >= 2")
    runs = prod(levels)
    cells = np.zeros((runs, len(levels)), dtype=np.int64)
    reps = runs
    for j, d in enumerate(levels):
        reps //= d
        cells[:, j] = np.tile(np.repeat(np.arange(d), reps), runs // (reps * d))
    array = MixedArray(levels, cells)
    if groups is None:
        return array
    expected = list(range(len(levels)))
    flat = [j for g in groups for j in g]
    if flat != expected:
        raise ParameterError("groups must partition the columns in order")
    pieces = []
    glevels = []
    for g in groups:
        dims = [levels[j] for j in g]
        code = np.zeros(runs, dtype=np.int64)
        for j in g:
            code = code * levels[j] + cells[:, j]
        pieces.append(code[:, None])
        glevels.append(prod(dims))
    return MixedArray(tuple(glevels), np.hstack(pieces))


# ---------------------------------------------------------------------------
# five-column feasibility


@dataclass(frozen=True)
class FeasibilityVerdict:
    impossible: bool
    reason: str

    @property
    def status(self) -> str:
        return "Impossible" if self.impossible else "NotRuledOut"


def five_column_feasibility(levels) -> FeasibilityVerdict:
    """Counting verdict for irredundant strength-2 arrays on five columns.

    Strength 2 forces the run count to be a common multiple of every pair of
    levels, while irredundancy at k = 2 caps it by the level product of every
    three-column subarray (rows there must be distinct).  When the smallest
    admissible multiple exceeds some cap, no such array exists.  Requires the
    hypothesis: levels not all equal, distinct values pairwise coprime.
    """
    levels = tuple(int(d) for d in levels)
    if len(levels) != 5:
        raise ParameterError(f"need exactly five levels, got {len(levels)}")
    if any(d < 2 for d in levels):
        raise ParameterError("levels must all be >= 2")
    if len(set(levels)) == 1:
        return FeasibilityVerdict(False, "hypothesis unmet: all levels equal")
    for x, y in combinations(sorted(set(levels)), 2):
        if gcd(x, y) != 1:
            return FeasibilityVerdict(
                False, f"hypothesis unmet: distinct levels {x} and {y} share a factor"
            )
    run_multiple = 1
    for i, j in combinations(range(5), 2):
        run_multiple = lcm(run_multiple, levels[i] * levels[j])
    best_cap = None
    best_pair = None
    for i, j in combinations(range(5), 2):
        cap = prod(levels[c] for c in range(5) if c not in (i, j))
        if best_cap is None or cap < best_cap:
            best_cap, best_pair = cap, (i, j)
    assert best_cap is not None and best_pair is not None
    if run_multiple > best_cap:
        return FeasibilityVerdict(
            True,
            f"runs must be a multiple of {run_multiple}, but deleting columns "
            f"{best_pair} leaves at most {best_cap} distinct rows",
        )
    return FeasibilityVerdict(
        False,
        f"counting admits runs = {run_multiple} (subarray caps are >= {best_cap})",
    )


# ---------------------------------------------------------------------------
# family builders


def _delete_and_verify(
    array: MixedArray, indices, k: int, construction: str, seeds, notes=()
) -> tuple[MixedArray, ConstructionCertificate]:
    out = delete_columns(array, indices) if indices else array
    cert = ConstructionCertificate(
        construction=construction,
        runs=out.runs,
        profile=out.profile(),
        strength=k,
        seeds=tuple(seeds),
        notes=tuple(notes),
    )
    return out, certify(out, cert)


def _two_uniform_chain(
    host: MixedArray,
    host_two_level: int,
    n: int,
    construction: str,
    seeds: tuple[str, ...],
) -> tuple[MixedArray, ConstructionCertificate]:
    """Iterate [A (+) 0_2, H (+) (2)] until n binary columns are reachable.

    At each stage the host gains r two-level scheme columns.  Deletion first
    spends the guaranteed budget on the trailing columns and otherwise drops
    the host's inherited two-level columns before trimming the scheme block;
    the result is re-verified regardless of which strategy ran.
    """
    stage_host = host
    inherited = host_two_level
    while True:
        r = stage_host.runs
        scheme = hadamard01(r).as_scheme()
        stage, _ = juxtapose_scheme(stage_host, scheme)
        total_two = inherited + r
        low = r // 2 + 3
        if n > total_two:
            stage_host = stage
            inherited = total_two
            continue
        if n < low:
            raise ParameterError(
                f"{n} two-level columns unreachable at this stage (needs >= {low})"
            )
        three_part = stage.ncols - total_two  # non-binary host columns, kept
        j = total_two - n
        budget = min_distance(stage) - 3
        if j <= budget:
            drop = list(range(stage.ncols - j, stage.ncols))
            notes = (f"any-within-budget deletion of the last {j} binary columns",)
        elif n >= r:
            # full scheme block kept: cross-row pairs keep scheme distance r/2
            drop = list(range(three_part + inherited - j, three_part + inherited))
            notes = (f"deleted the last {j} inherited binary columns, scheme intact",)
        else:
            # host-part-first: drop every inherited binary column, then trim
            # the scheme block from the end
            from_scheme = j - inherited
            drop = list(range(three_part, three_part + inherited))
            drop += list(range(stage.ncols - from_scheme, stage.ncols))
            notes = (
                f"host-part-first deletion: {inherited} inherited binary columns "
                f"plus the last {from_scheme} scheme columns",
            )
        return _delete_and_verify(stage, drop, 2, construction, seeds, notes)


def two_uniform_3m2n(
    m: int,
    n: int,
    host: MixedArray | None = None,
    host_seed_name: str | None = None,
) -> tuple[MixedArray, ConstructionCertificate]:
    """Irredundant strength-2 array over 3^m 2^n.

    m = 1 covers every n >= 8 (n = 8 through the verified scheme-trim route);
    m in {2, 3} uses a searched 36-run host and covers n >= 21.  A caller-
    provided strength-2 host MOA(r, 3^m 2^b, 2) overrides the built-ins.
    """
    from .catalog import seed_array  # deferred: catalog builds on this module

    if m < 1:
        raise ParameterError("need m >= 1")
    if host is None:
        if m == 1:
            if n == 8:
                return two_uniform_from_scheme(
                    12, 12, 2, replacement=seed_array("moa-12-3x2^4"), scheme_keep=4
                )
            host = seed_array("moa-12-3x2^4")
            host_seed_name = "moa-12-3x2^4"
        elif m == 2:
            host = seed_array("moa-36-3^2x2^2")
            host_seed_name = "moa-36-3^2x2^2"
        elif m == 3:
            host = seed_array("moa-108-3^3x2^2")
            host_seed_name = "moa-108-3^3x2^2"
        else:
            raise ParameterError(
                f"no built-in host for m = {m}; pass a strength-2 host array"
            )
    three_cols = sum(1 for d in host.levels if d == 3)
    if three_cols < m or any(d not in (2, 3) for d in host.levels):
        raise ParameterError("host must be an array over levels 3 and 2")
    if three_cols > m:
        extra = [j for j, d in enumerate(host.levels) if d == 3][m:]
        host = delete_columns(host, extra)
    two_cols = host.ncols - m
    seeds = (host_seed_name or "caller-host",)
    return _two_uniform_chain(host, two_cols, n, f"two_uniform_3m2n(m={m}, n={n})", seeds)


def two_uniform_dm2n(
    d: int,
    m: int,
    n: int,
    host: MixedArray | None = None,
    host_seed_name: str | None = None,
) -> tuple[MixedArray, ConstructionCertificate]:
    """Irredundant strength-2 array over d^m 2^n for d > 3.

    Built-in host exists for d = 4 (the verified 8-run array over 4^1 2^4),
    covering every n >= 7; other d require a caller host, as the known
    tabulated hosts are not printed anywhere reachable.
    """
    if d <= 3:
        raise ParameterError("use the 3^m 2^n builder for d <= 3")
    if host is None:
        if d == 4 and m == 1:
            host, _ = two_uniform_from_scheme(4, 4, 2)
            host_seed_name = "scheme-juxtaposition 4^1x2^4"
        else:
            raise ParameterError(
                f"no built-in host for d = {d}, m = {m}; pass a strength-2 host"
            )
    d_cols = sum(1 for lv in host.levels if lv == d)
    if d_cols < m or any(lv not in (2, d) for lv in host.levels):
        raise ParameterError(f"host must be an array over levels {d} and 2")
    if d_cols > m:
        extra = [j for j, lv in enumerate(host.levels) if lv == d][m:]
        host = delete_columns(host, extra)
    seeds = (host_seed_name or "caller-host",)
    return _two_uniform_chain(
        host, host.ncols - m, n, f"two_uniform_dm2n(d={d}, m={m}, n={n})", seeds
    )


def _three_uniform_pipeline(
    left_scheme: DifferenceScheme,
    keep_left: int,
    d1: int,
    n: int,
    base_order: int,
    construction: str,
    seeds: tuple[str, ...],
) -> tuple[MixedArray, ConstructionCertificate]:
    """Shared strength-3 pipeline: trim schemes, expand, partition, juxtapose.

    ``base_order`` is the smallest usable Hadamard order; doublings cover
    n in [order/2 + 4, order].  A value of n that falls in the gap just above
    an order is built from the next doubling by re-verified extra deletion.
    """
    order = base_order
    while n > order:
        order *= 2
    guaranteed_low = order // 2 + 4
    extra = max(0, guaranteed_low - n)
    n_build = max(n, guaranteed_low)
    if n_build > order:
        raise ParameterError(f"n = {n} unreachable from scheme order {order}")

    left = left_scheme
    if keep_left < left.cols:
        left = left.select_columns(range(keep_left))
    a = expand(left)
    pa = OrthogonalPartition(
        a, tuple(tuple(range(i * d1, (i + 1) * d1)) for i in range(left.rows))
    )
    hm = hadamard01(order)
    # column selections of a Hadamard scheme inherit its strength; the
    # juxtaposition re-checks strength 3 of the expansion by oracle anyway
    right = DifferenceScheme(hm.cells[:, :n_build], 2, 3, cyclic_group(2), verify=False)
    b = expand(right)
    pb = OrthogonalPartition(
        b, tuple(tuple(range(i * 2, (i + 1) * 2)) for i in range(order))
    )
    out, cert = juxtapose_partitions(a, pa, b, pb)
    notes = [f"binary scheme of order {order} trimmed to {n_build} columns"]
    if extra:
        out = delete_columns(out, range(out.ncols - extra, out.ncols))
        notes.append(
            f"re-verified deletion of {extra} further binary columns beyond the guarantee"
        )
        cert = dc_replace(cert, predicted_md=4, md_formula="beyond-guarantee deletion", md_exact=False)
    cert = dc_replace(
        cert,
        construction=construction,
        runs=out.runs,
        profile=out.profile(),
        seeds=seeds,
        notes=tuple(notes),
    )
    return out, certify(out, cert)


def three_uniform_3m2n(m: int, n: int) -> tuple[MixedArray, ConstructionCertificate]:
    """Irredundant strength-3 array over 3^m 2^n (m in {4, 5}, n >= 22).

    Left factor: the searched strength-3 scheme on 18 rows and 5 ternary
    columns, expanded to a 54-run array and trimmed to m columns; right
    factor: a binary Hadamard scheme of order 36 * 2^h trimmed to n columns.
    """
    from .catalog import seed_scheme

    if m not in (4, 5):
        raise ParameterError("m must be 4 or 5")
    if n < 22:
        raise ParameterError("n >= 22 is the constructive range from extracted sources")
    scheme18 = seed_scheme("scheme-18x5-over-3")
    return _three_uniform_pipeline(
        scheme18,
        m,
        3,
        n,
        36,
        f"three_uniform_3m2n(m={m}, n={n})",
        ("scheme-18x5-over-3", "hadamard"),
    )


def three_uniform_dm2n(d: int, m: int, n: int) -> tuple[MixedArray, ConstructionCertificate]:
    """Irredundant strength-3 array over d^m 2^n for odd prime powers d > 4.

    Left factor: the verified strength-3 scheme on d^2 rows and d columns
    (entry a*c + b*c^2 over GF(d)); right factor: binary Hadamard schemes of
    order 4d^2 * 2^h.  Constructive range: 4 <= m <= d and
    n in [2 d^2 2^h + 4, 4 d^2 2^h].
    """
    from .algebra import ds_poly3

    pm = prime_power_decomposition(d)
    if pm is None or pm[0] == 2 or d <= 4:
        raise ParameterError("d must be an odd prime power greater than 4")
    if not 4 <= m <= d:
        raise ParameterError(f"m must be in 4..{d}")
    if n < 2 * d * d + 4:
        raise ParameterError(f"n must be at least {2 * d * d + 4}")
    scheme = ds_poly3(d)
    return _three_uniform_pipeline(
        scheme,
        m,
        d,
        n,
        4 * d * d,
        f"three_uniform_dm2n(d={d}, m={m}, n={n})",
        (f"poly-scheme-d{d}", "hadamard"),
    )


def k_uniform_product(
    k: int, factors, plan=None
) -> tuple[MixedArray, ConstructionCertificate]:
    """Irredundant strength-k array over d = prod(factors) levels on 2k columns.

    Each factor q (a distinct prime power >= 2k - 1) contributes its
    polynomial-evaluation array truncated to 2k columns; the symbol-pairing
    product combines them in ascending-factor order.  ``plan`` optionally
    replaces columns by full factorials over given sub-levels (their product
    must equal d), splitting parties while keeping k-uniformity.
    """
    factors = sorted(int(q) for q in factors)
    if len(set(factors)) != len(factors):
        raise ParameterError("factors must be distinct")
    for x, y in combinations(factors, 2):
        if gcd(x, y) != 1:
            raise ParameterError("factors must be coprime prime powers")
    arrays = [bush_oa(q, k, columns=2 * k) for q in factors]
    out = arrays[0]
    for nxt in arrays[1:]:
        out = product_construction(out, nxt)
    d = prod(factors)
    seeds = tuple(f"polynomial-evaluation q={q} k={k}" for q in factors)
    if plan:
        items = []
        for column, sub_levels in plan:
            rep = trivial_moa(sub_levels)
            if rep.runs != d:
                raise ParameterError(
                    f"replacement levels {sub_levels} do not multiply to {d}"
                )
            items.append(ColumnReplacement(int(column), rep))
        out, cert = expansive_replace(out, ReplacementPlan(tuple(items)), k)
        cert = dc_replace(
            cert,
            construction=f"k_uniform_product(k={k}, factors={factors})",
            seeds=seeds,
        )
    else:
        cert = ConstructionCertificate(
            construction=f"k_uniform_product(k={k}, factors={factors})",
            runs=out.runs,
            profile=out.profile(),
            strength=k,
            predicted_md=k + 1,
            md_formula="min over factors of (q + 2 - k) - (q + 1 - 2k) = k + 1",
            md_exact=True,
            seeds=seeds,
        )
    return out, certify(out, cert)


def two_uniform_from_scheme(
    index_levels: int,
    scheme_columns: int,
    d: int,
    replacement: MixedArray | None = None,
    scheme_keep: int | None = None,
    scheme: DifferenceScheme | None = None,
) -> tuple[MixedArray, ConstructionCertificate]:
    """[(N) (+) 0_d, D(N, M, d) (+) (d)] with optional index-column replacement.

    N = ``index_levels``: the first column enumerates the scheme rows and the
    remaining M = ``scheme_columns`` columns expand the scheme, giving a
    strength-2 array on d*N runs over N^1 d^M.  Replacing the index column by
    an N-row strength-2 array B trades it for B's columns.  ``scheme_keep``
    trims the scheme block to that many columns, choosing the
    lexicographically first subset for which the finished array passes the
    exact checks.
    """
    n = index_levels
    if scheme is None:
        if d != 2:
            raise ParameterError("built-in schemes exist only for d = 2; pass one")
        hm = hadamard01(n)
        if scheme_columns > n:
            raise ParameterError(f"at most {n} scheme columns available")
        scheme = DifferenceScheme(
            hm.cells[:, :scheme_columns], 2, 2, cyclic_group(2), verify=False
        )
    else:
        if scheme.rows != n:
            raise ParameterError("scheme row count must equal the index levels")
        if scheme_columns != scheme.cols:
            scheme = scheme.select_columns(range(scheme_columns))
    if replacement is not None:
        rep_report = verify_strength(replacement, min(2, replacement.ncols))
        if replacement.runs != n or not rep_report.holds:
            raise ParameterError("replacement must be a strength-2 array with N rows")

    def build(keep_cols) -> MixedArray:
        sub = scheme.select_columns(keep_cols)
        host = juxtapose_scheme_raw(column_vector(n), sub)
        if replacement is None:
            return host
        out, _ = _single_replacement(host, 0, replacement, 2)
        return out

    seeds = (f"hadamard-{n}" if d == 2 else f"scheme-{n}x{scheme_columns}-over-{d}",)
    name = f"two_uniform_from_scheme(N={n}, M={scheme_columns}, d={d})"
    if scheme_keep is None or scheme_keep == scheme.cols:
        out = build(range(scheme.cols))
        cert = ConstructionCertificate(
            construction=name,
            runs=out.runs,
            profile=out.profile(),
            strength=2,
            seeds=seeds,
        )
        return out, certify(out, cert)
    if not 1 <= scheme_keep < scheme.cols:
        raise ParameterError("scheme_keep out of range")
    for keep_cols in combinations(range(scheme.cols), scheme_keep):
        candidate = build(keep_cols)
        if not verify_strength(candidate, 2).holds:
            continue
        if min_distance(candidate) < 3:
            continue
        cert = ConstructionCertificate(
            construction=name,
            runs=candidate.runs,
            profile=candidate.profile(),
            strength=2,
            seeds=seeds,
            notes=(
                f"scheme block trimmed to columns {keep_cols} (first verified subset)",
            ),
        )
        return candidate, certify(candidate, cert)
    raise ConstructionError(
        f"no {scheme_keep}-column scheme subset passes verification"
    )


def two_uniform_prime_power(
    d: int, n: int, replacement: MixedArray | None = None
) -> tuple[MixedArray, ConstructionCertificate]:
    """The scheme family at N = d^n for prime powers d, via the linear scheme.

    Expands D(d^n, d^n, d) behind an index column; the scheme block alone has
    minimal distance d^n - d^(n-1), so for all but the smallest orders the
    result is irredundant at 2 outright, and an N-row replacement array with
    distinct rows may substitute the index column.
    """
    from .algebra import ds_linear

    scheme = ds_linear(d, n)
    size = d**n
    host = juxtapose_scheme_raw(column_vector(size), scheme)
    if replacement is not None:
        if min_distance(replacement) < 1:
            raise ParameterError("replacement rows must be distinct")
        out, _ = _single_replacement(host, 0, replacement, 2)
    else:
        out = host
    cert = ConstructionCertificate(
        construction=f"two_uniform_prime_power(d={d}, n={n})",
        runs=out.runs,
        profile=out.profile(),
        strength=2,
        seeds=(f"linear-scheme d={d} n={n}",),
    )
    return out, certify(out, cert)
