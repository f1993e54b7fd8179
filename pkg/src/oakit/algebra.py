"""Group and field arithmetic, Hadamard matrices, difference schemes.

Difference schemes live over a finite abelian group of order d written on
the symbols {0, ..., d-1}: either the cyclic group Z_d or, for prime powers
q = p^m, the additive group of GF(q) under the canonical base-p integer
encoding.  A matrix D over such a group is a difference scheme of strength t
exactly when its expansion D (+) (d), every row shifted by every group
element, is an orthogonal array of strength t; that operational predicate
is the only acceptance test for schemes, so generation without verification
never happens here.

Hadamard matrices are kept in 0/1 form (x = (1 - h)/2 for a +-1 matrix h),
normalized so the first row and column are all zero; any two distinct rows
then disagree in exactly n/2 places.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .arrays import MixedArray, concat_columns, verify_strength
from .errors import ConstructionError, ParameterError, VerificationError

__all__ = [
    "CyclicGroup",
    "AdditiveGroup",
    "additive_group",
    "cyclic_group",
    "gf_additive_group",
    "FiniteField",
    "finite_field",
    "gf_add",
    "gf_mul",
    "gf_inv",
    "is_prime",
    "prime_power_decomposition",
    "HadamardMatrix01",
    "hadamard01",
    "DifferenceScheme",
    "is_difference_scheme",
    "ds_linear",
    "ds_poly3",
    "kronecker_sum",
    "expand",
    "expand_scheme",
    "juxtapose_scheme_raw",
    "repeat_rows_each",
    "tile_rows",
    "partition_stack",
    "product_construction",
    "column_vector",
]


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class AdditiveGroup:
    """A finite abelian group on symbols 0..order-1, given by its table."""

    order: int
    tag: str  # "mod" (cyclic) or "gf" (elementary abelian)
    table: np.ndarray = field(repr=False)

    def add(self, a, b):
        return self.table[a, b]

    def neg(self, a: int) -> int:
        row = self.table[a]
        return int(np.flatnonzero(row == 0)[0])

    def sub(self, a, b):
        if np.isscalar(a) and np.isscalar(b):
            return self.table[a, self.neg(int(b))]
        negs = np.array([self.neg(x) for x in range(self.order)])
        return self.table[a, negs[b]]

    def check_axioms(self) -> None:
        """Exhaustive associativity/identity/inverse check (use for order <= 64)."""
        d = self.order
        t = self.table
        if not np.array_equal(t[0], np.arange(d)) or not np.array_equal(t[:, 0], np.arange(d)):
            raise VerificationError("0 is not the identity")
        for a in range(d):
            if 0 not in t[a]:
                raise VerificationError(f"{a} has no inverse")
        # associativity: t[t[a,b],c] == t[a,t[b,c]]
        left = t[t, :]  # shape (d, d, d): left[a, b, c]
        right = t[:, t].transpose(0, 1, 2)
        if not np.array_equal(left, right):
            raise VerificationError("operation is not associative")


def cyclic_group(d: int) -> AdditiveGroup:
    if d < 2:
        raise ParameterError(f"group order must be >= 2, got {d}")
    idx = np.arange(d)
    return AdditiveGroup(d, "mod", (idx[:, None] + idx[None, :]) % d)


#: alias kept for the common case: the group (Z_d, +)
CyclicGroup = cyclic_group


def gf_additive_group(q: int) -> AdditiveGroup:
    """Additive group of GF(q) on base-p integer labels (carry-free addition)."""
    p, m = _require_prime_power(q)
    if m == 1:
        return cyclic_group(q)
    idx = np.arange(q)
    digits_a = idx[:, None]
    table = np.zeros((q, q), dtype=np.int64)
    pk = 1
    for _ in range(m):
        da = (idx[:, None] // pk) % p
        db = (idx[None, :] // pk) % p
        table += ((da + db) % p) * pk
        pk *= p
    _ = digits_a
    return AdditiveGroup(q, "gf", table)


def additive_group(d: int, tag: str = "mod") -> AdditiveGroup:
    if tag == "mod":
        return cyclic_group(d)
    if tag == "gf":
        return gf_additive_group(d)
    raise ParameterError(f"unknown group tag {tag!r}")


# ---------------------------------------------------------------------------
# primality and finite fields


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q = p^m and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            return (p, m) if n == 1 else None
    return (q, 1)


def _require_prime_power(q: int) -> tuple[int, int]:
    pm = prime_power_decomposition(q)
    if pm is None:
        raise ParameterError(f"{q} is not a prime power")
    return pm


class FiniteField:
    """GF(p^m) with elements encoded as integers 0..q-1 in base p.

    The modulus is the lexicographically smallest monic irreducible
    polynomial of degree m over GF(p) (smallest when read as the integer
    p^m + c_{m-1} p^{m-1} + ... + c_0), which makes element labels
    reproducible across builds.  For m = 1 arithmetic is plain mod p.
    """

    def __init__(self, q: int):
        if q > 1 << 16:
            raise ParameterError(f"field order {q} exceeds 2^16")
        p, m = _require_prime_power(q)
        self.p, self.m, self.q = p, m, q
        self.modulus = self._smallest_irreducible() if m > 1 else (0, 1)
        self._mul_table: np.ndarray | None = None
        self._inv_table: list[int] | None = None
        if q <= 1024:
            self._build_tables()

    # -- encoding ----------------------------------------------------------
    def _vec(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out  # coefficient of x^i at index i

    def _enc(self, vec: Sequence[int]) -> int:
        a = 0
        for c in reversed(vec):
            a = a * self.p + (c % self.p)
        return a

    # -- modulus selection --------------------------------------------------
    def _poly_mod_reduce(self, coeffs: list[int], modulus: list[int]) -> list[int]:
        # both little-endian; modulus monic of degree m
        p, m = self.p, len(modulus) - 1
        coeffs = coeffs[:]
        for i in range(len(coeffs) - 1, m - 1, -1):
            c = coeffs[i] % p
            if c:
                for j in range(m + 1):
                    coeffs[i - m + j] = (coeffs[i - m + j] - c * modulus[j]) % p
        return [c % p for c in coeffs[:m]]

    def _is_irreducible(self, modulus: list[int]) -> bool:
        # no roots, and x^(p^m) == x mod f while x^(p^d) != x for proper d | m
        p, m = self.p, len(modulus) - 1

        def poly_pow_x(e: int) -> list[int]:
            # compute x^e mod f by square and multiply on exponent bits
            result = [1] + [0] * (m - 1)
            base = ([0, 1] + [0] * (m - 1))[: max(2, m)]
            base = self._poly_mod_reduce(base + [0], modulus) if m == 1 else base[:m]
            e_bits = bin(e)[2:]
            for bit in e_bits:
                result = self._poly_mul_mod(result, result, modulus)
                if bit == "1":
                    result = self._poly_mul_mod(result, base, modulus)
            return result

        x_poly = [0, 1] + [0] * (m - 2) if m >= 2 else [0]
        if poly_pow_x(p**m) != x_poly:
            return False
        for d in range(1, m):
            if m % d == 0 and is_prime(m // d) is False and d != 1:
                continue
            if m % d == 0:
                if poly_pow_x(p**d) == x_poly:
                    return False
        return True

    def _poly_mul_mod(self, a: list[int], b: list[int], modulus: list[int]) -> list[int]:
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        return self._poly_mod_reduce(out, modulus)

    def _smallest_irreducible(self) -> tuple[int, ...]:
        p, m = self.p, self.m
        for tail in range(p**m):
            coeffs = []
            t = tail
            for _ in range(m):
                coeffs.append(t % p)
                t //= p
            modulus = coeffs + [1]  # monic, little-endian
            if self._is_irreducible(modulus):
                return tuple(modulus)
        raise ConstructionError(f"no irreducible polynomial found for GF({p}^{m})")

    # -- arithmetic ----------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._enc([(x + y) % self.p for x, y in zip(self._vec(a), self._vec(b))])

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        return self._enc([(x - y) % self.p for x, y in zip(self._vec(a), self._vec(b))])

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        return self._mul_raw(a, b)

    def _mul_raw(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        prod_ = self._poly_mul_mod(self._vec(a), self._vec(b), list(self.modulus))
        return self._enc(prod_)

    def pow(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ParameterError("0 has no inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def _build_tables(self) -> None:
        q = self.q
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                v = self._mul_raw(a, b)
                table[a, b] = v
                table[b, a] = v
        self._mul_table = table
        inv = [0] * q
        for a in range(1, q):
            inv[int(np.flatnonzero(table[a] == 1)[0])] = a
        self._inv_table = inv

    def elements(self) -> range:
        return range(self.q)

    def quadratic_character(self, a: int) -> int:
        """+1 for nonzero squares, -1 for non-squares, 0 for 0."""
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1


_FIELD_CACHE: dict[int, FiniteField] = {}


def finite_field(q: int) -> FiniteField:
    if q not in _FIELD_CACHE:
        _FIELD_CACHE[q] = FiniteField(q)
    return _FIELD_CACHE[q]


def gf_add(q: int, a: int, b: int) -> int:
    return finite_field(q).add(a, b)


def gf_mul(q: int, a: int, b: int) -> int:
    return finite_field(q).mul(a, b)


def gf_inv(q: int, a: int) -> int:
    return finite_field(q).inv(a)


# ---------------------------------------------------------------------------
# Hadamard matrices (0/1 form)


@dataclass(frozen=True, eq=False)
class HadamardMatrix01:
    """0/1 Hadamard matrix, normalized: first row and column all zero."""

    order: int
    cells: np.ndarray

    def __post_init__(self) -> None:
        cells = np.ascontiguousarray(self.cells, dtype=np.int64)
        n = self.order
        if cells.shape != (n, n):
            raise ParameterError(f"expected {n}x{n} matrix")
        if n > 1:
            if cells[0].any() or cells[:, 0].any():
                raise VerificationError("matrix is not normalized")
            for i in range(n - 1):
                d = np.count_nonzero(cells[i + 1 :] != cells[i], axis=1)
                if (d != n // 2).any():
                    raise VerificationError(
                        f"rows at Hamming distance != {n // 2}: not Hadamard"
                    )
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    def as_scheme(self, strength: int = 2) -> "DifferenceScheme":
        return DifferenceScheme(self.cells, 2, strength, cyclic_group(2), verify=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HadamardMatrix01):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.cells, other.cells)

    __hash__ = None  # type: ignore[assignment]


def _normalize_pm1(h: np.ndarray) -> np.ndarray:
    h = h.copy()
    h[:, h[0] == -1] *= -1
    h[h[:, 0] == -1] *= -1
    return h


def _pm1_to_01(h: np.ndarray) -> np.ndarray:
    return ((1 - h) // 2).astype(np.int64)


def _sylvester(m: int) -> np.ndarray:
    h = np.array([[1]], dtype=np.int64)
    block = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(m):
        h = np.kron(h, block)
    return h


def _jacobsthal(q: int) -> np.ndarray:
    gf = finite_field(q)
    chars = np.array([gf.quadratic_character(a) for a in range(q)], dtype=np.int64)
    sub = np.array([[gf.sub(a, b) for b in range(q)] for a in range(q)])
    return chars[sub]


def _paley1(q: int) -> np.ndarray:
    # q = prime power, q % 4 == 3; returns +-1 Hadamard of order q + 1
    n = q + 1
    s = np.zeros((n, n), dtype=np.int64)
    s[0, 1:] = 1
    s[1:, 0] = -1
    s[1:, 1:] = _jacobsthal(q)
    return s + np.eye(n, dtype=np.int64)


def _paley2(q: int) -> np.ndarray:
    # q = prime power, q % 4 == 1; returns +-1 Hadamard of order 2(q + 1)
    n = q + 1
    c = np.zeros((n, n), dtype=np.int64)
    c[0, 1:] = 1
    c[1:, 0] = 1
    c[1:, 1:] = _jacobsthal(q)
    on = np.array([[1, 1], [1, -1]], dtype=np.int64)
    off = np.array([[1, -1], [-1, -1]], dtype=np.int64)
    return np.kron(c, on) + np.kron(np.eye(n, dtype=np.int64), off)


def _paley1_order(n: int) -> int | None:
    q = n - 1
    pm = prime_power_decomposition(q)
    return q if pm is not None and q % 4 == 3 else None


def _paley2_order(n: int) -> int | None:
    if n % 2:
        return None
    q = n // 2 - 1
    pm = prime_power_decomposition(q)
    return q if pm is not None and q % 4 == 1 else None


def _xor_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    na, nb = a.shape[0], b.shape[0]
    return np.bitwise_xor(a[:, None, :, None], b[None, :, None, :]).reshape(
        na * nb, na * nb
    )


def hadamard01(order: int, method: str | Sequence[int] | None = None) -> HadamardMatrix01:
    """Generate a normalized 0/1 Hadamard matrix of the given order.

    ``method`` may be "sylvester", "paley1", "paley2", a list of orders to
    combine by Kronecker composition, or None to pick automatically in that
    precedence.  Raises when no implemented generator covers the order.
    """
    n = order
    if n < 1:
        raise ParameterError(f"order must be >= 1, got {n}")
    if isinstance(method, (list, tuple)):
        if prod(method) != n:
            raise ParameterError(f"factors {method} do not multiply to {n}")
        cells = np.zeros((1, 1), dtype=np.int64)
        for f in method:
            cells = _xor_kron(cells, hadamard01(f).cells)
        return HadamardMatrix01(n, cells)
    if method == "sylvester" or (method is None and (n & (n - 1)) == 0):
        if n & (n - 1):
            raise ParameterError(f"{n} is not a power of two")
        return HadamardMatrix01(n, _pm1_to_01(_normalize_pm1(_sylvester(n.bit_length() - 1))))
    if method == "paley1" or (method is None and _paley1_order(n) is not None):
        q = _paley1_order(n)
        if q is None:
            raise ParameterError(f"no prime power q = 3 mod 4 with q + 1 = {n}")
        return HadamardMatrix01(n, _pm1_to_01(_normalize_pm1(_paley1(q))))
    if method == "paley2" or (method is None and _paley2_order(n) is not None):
        q = _paley2_order(n)
        if q is None:
            raise ParameterError(f"no prime power q = 1 mod 4 with 2(q + 1) = {n}")
        return HadamardMatrix01(n, _pm1_to_01(_normalize_pm1(_paley2(q))))
    if method in (None, "kronecker"):
        for a in range(2, n):
            if n % a:
                continue
            if _basic_order(a):
                try:
                    return hadamard01(n, method=[a, n // a])
                except ParameterError:
                    continue
        raise ParameterError(
            f"no generator for Hadamard order {n}; applicable methods: sylvester "
            "(2^m), paley1 (q+1, q = 3 mod 4), paley2 (2q+2, q = 1 mod 4), "
            "kronecker products thereof"
        )
    raise ParameterError(f"unknown method {method!r}")


def _basic_order(n: int) -> bool:
    return (
        n >= 2
        and ((n & (n - 1)) == 0 or _paley1_order(n) is not None or _paley2_order(n) is not None)
    )


# ---------------------------------------------------------------------------
# difference schemes


@dataclass(frozen=True, eq=False)
class DifferenceScheme:
    """r x c matrix over a group of order d whose expansion is an OA.

    ``strength`` is the declared tag t: the expansion D (+) (d) must pass the
    exact strength-t check.  Construction verifies that predicate unless
    ``verify=False`` is passed (only for internal staging).
    """

    cells: np.ndarray
    order: int
    strength: int
    group: AdditiveGroup
    verify: bool = True

    def __post_init__(self) -> None:
        cells = np.ascontiguousarray(self.cells, dtype=np.int64)
        if cells.ndim != 2:
            raise ParameterError("scheme matrix must be 2-D")
        if self.group.order != self.order:
            raise ParameterError("group order does not match scheme order")
        if cells.min() < 0 or cells.max() >= self.order:
            raise ParameterError("scheme entries out of range")
        if self.strength < 2:
            raise ParameterError("scheme strength tag must be >= 2")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        if self.verify:
            report = is_difference_scheme(cells, self.order, self.strength, self.group)
            if not report.holds:
                raise VerificationError(
                    f"matrix is not a strength-{self.strength} difference scheme: "
                    f"witness {report.witness}"
                )

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    def select_columns(self, indices: Sequence[int]) -> "DifferenceScheme":
        return DifferenceScheme(
            self.cells[:, list(indices)], self.order, self.strength, self.group, verify=False
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DifferenceScheme):
            return NotImplemented
        return (
            self.order == other.order
            and self.group.tag == other.group.tag
            and np.array_equal(self.cells, other.cells)
        )

    __hash__ = None  # type: ignore[assignment]


def expand_scheme(
    cells: np.ndarray, d: int, group: AdditiveGroup | None = None
) -> MixedArray:
    """D (+) (d): every scheme row shifted by every group element.

    Output row d*i + s is row i shifted by s, so the rows of one scheme row
    stay consecutive (the canonical strength-1 partition blocks).
    """
    group = group or cyclic_group(d)
    cells = np.asarray(cells, dtype=np.int64)
    r, c = cells.shape
    shifts = np.arange(d)
    out = group.table[cells[:, None, :], shifts[None, :, None]].reshape(r * d, c)
    return MixedArray((d,) * c, out)


def expand(scheme: DifferenceScheme) -> MixedArray:
    return expand_scheme(scheme.cells, scheme.order, scheme.group)


def is_difference_scheme(
    candidate: np.ndarray | Sequence[Sequence[int]],
    d: int,
    t: int,
    group: AdditiveGroup | None = None,
):
    """Operational test: D is a strength-t scheme iff D (+) (d) has strength t."""
    cells = np.asarray(candidate, dtype=np.int64)
    expanded = expand_scheme(cells, d, group)
    return verify_strength(expanded, t)


def ds_linear(d: int, n: int) -> DifferenceScheme:
    """D(d^n, d^n, d) for prime-power d: entry(x, y) = sum_i x_i y_i in GF(d).

    Rows and columns are indexed by GF(d)^n in big-endian digit order; the
    scheme's group is the additive group of GF(d).
    """
    _require_prime_power(d)
    if n < 1:
        raise ParameterError(f"extension count must be >= 1, got {n}")
    gf = finite_field(d)
    size = d**n

    def digits(m: int) -> list[int]:
        out = []
        for _ in range(n):
            out.append(m % d)
            m //= d
        return list(reversed(out))

    vectors = [digits(m) for m in range(size)]
    cells = np.zeros((size, size), dtype=np.int64)
    for i, x in enumerate(vectors):
        for j, y in enumerate(vectors):
            acc = 0
            for xi, yi in zip(x, y):
                acc = gf.add(acc, gf.mul(xi, yi))
            cells[i, j] = acc
    return DifferenceScheme(cells, d, 2, gf_additive_group(d), verify=True)


def ds_poly3(d: int) -> DifferenceScheme:
    """A verified strength-3 scheme D_3(d^2, d, d) for odd prime powers d.

    Rows are pairs (a, b) in GF(d)^2, columns are field elements c, and the
    entry is a*c + b*c^2.  The strength-3 predicate is checked on
    construction; failure is a hard error, never a silent downgrade.
    """
    p, _ = _require_prime_power(d)
    if p == 2:
        raise ParameterError(f"order must be odd, got {d}")
    gf = finite_field(d)
    cells = np.zeros((d * d, d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            row = a * d + b
            for c in range(d):
                cells[row, c] = gf.add(gf.mul(a, c), gf.mul(b, gf.mul(c, c)))
    try:
        return DifferenceScheme(cells, d, 3, gf_additive_group(d), verify=True)
    except VerificationError as exc:
        raise ConstructionError(f"strength-3 scheme construction failed for d={d}") from exc


# ---------------------------------------------------------------------------
# Kronecker sums and stacking helpers


def kronecker_sum(a: MixedArray, b: MixedArray, group: AdditiveGroup) -> MixedArray:
    """Kronecker product with multiplication replaced by the group operation.

    Entry block (i, j) is a(i, j) + B elementwise, so the output has
    r_a * r_b rows and N_a * N_b columns.  Both inputs must be single-level
    arrays over the group's order.
    """
    d = group.order
    if set(a.levels) != {d} or set(b.levels) != {d}:
        raise ParameterError(f"both operands must be over {d} levels")
    out = group.table[
        a.cells[:, None, :, None], b.cells[None, :, None, :]
    ].reshape(a.runs * b.runs, a.ncols * b.ncols)
    return MixedArray((d,) * (a.ncols * b.ncols), out)


def repeat_rows_each(a: MixedArray, times: int) -> MixedArray:
    """A (x) 1_times: each row repeated ``times`` consecutively (= A (+) 0_d)."""
    if times < 1:
        raise ParameterError("repeat count must be >= 1")
    return MixedArray(a.levels, np.repeat(a.cells, times, axis=0))


def tile_rows(a: MixedArray, times: int) -> MixedArray:
    """1_times (x) A: the whole block stacked ``times`` times."""
    if times < 1:
        raise ParameterError("tile count must be >= 1")
    return MixedArray(a.levels, np.tile(a.cells, (times, 1)))


def partition_stack(blocks: Sequence[MixedArray], times: int, mode: str) -> MixedArray:
    """Stack partition blocks, repeating or tiling each block's rows.

    mode "repeat" builds (A_[1..u], r): each row of each block repeated
    ``times`` in place; mode "tile" builds (r, A_[1..u]): each block tiled
    ``times`` as a whole.  Blocks must share their level profile.
    """
    if not blocks:
        raise ParameterError("need at least one block")
    levels = blocks[0].levels
    if any(b.levels != levels for b in blocks):
        raise ParameterError("blocks disagree on levels")
    if mode == "repeat":
        parts = [np.repeat(b.cells, times, axis=0) for b in blocks]
    elif mode == "tile":
        parts = [np.tile(b.cells, (times, 1)) for b in blocks]
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    return MixedArray(levels, np.vstack(parts))


def product_construction(a: MixedArray, b: MixedArray) -> MixedArray:
    """Symbol-pairing product on the first min(N_a, N_b) columns.

    Rows are indexed by (i, j) with i major; column c carries the pair
    a(i, c), b(j, c) encoded as a * d_b(c) + b.  Strength k of both inputs is
    preserved and MD(product) >= min(MD(a), MD(b)).
    """
    n = min(a.ncols, b.ncols)
    ac = a.cells[:, :n]
    bc = b.cells[:, :n]
    db = np.asarray(b.levels[:n])
    out = (ac[:, None, :] * db[None, None, :] + bc[None, :, :]).reshape(
        a.runs * b.runs, n
    )
    levels = tuple(a.levels[c] * b.levels[c] for c in range(n))
    return MixedArray(levels, out)


def column_vector(d: int) -> MixedArray:
    """(d) = the single column 0, 1, ..., d-1."""
    if d < 2:
        raise ParameterError("need d >= 2")
    return MixedArray((d,), np.arange(d, dtype=np.int64)[:, None])


def juxtapose_scheme_raw(host: MixedArray, scheme: DifferenceScheme) -> MixedArray:
    """[A (+) 0_d, D (+) (d)] without preconditions (plumbing shared by builders)."""
    if host.runs != scheme.rows:
        raise ParameterError(
            f"host has {host.runs} rows but scheme has {scheme.rows}"
        )
    return concat_columns(repeat_rows_each(host, scheme.order), expand(scheme))
