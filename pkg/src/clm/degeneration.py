"""One-parameter families of matrices and their behaviour at t = 0.

A :class:`PolyMatrix` is a matrix of polynomials in ``t`` over Q.  The local
Smith exponents are the t-orders of its invariant factors over the local
ring Q[t]_(t); their partial sums are the minimal t-orders of the minors.

Elimination happens in Q[t]/(t^D) where D exceeds the degree of every minor,
so no valuation below D can be lost to truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Optional, Sequence

from clm.errors import DimensionMismatch, MinorVanishes, ZeroFamily
from clm.linalg import RatMatrix, to_rat

Poly = tuple[Fraction, ...]


def _trim(coeffs: Sequence) -> Poly:
    c = [to_rat(x) for x in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def poly_val(p: Poly) -> Optional[int]:
    for k, x in enumerate(p):
        if x:
            return k
    return None


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])


def _as_poly(x) -> Poly:
    if isinstance(x, (list, tuple)):
        return _trim(x)
    return _trim([x])


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")
        for r in self.entries:
            for p in r:
                if p and not p[-1]:
                    raise ValueError("polynomial stored with a trailing zero coefficient")

    @classmethod
    def of(cls, entries: Sequence[Sequence], cols: Optional[int] = None) -> "PolyMatrix":
        """Build from nested lists; an entry is a scalar or an ascending coefficient list."""
        data = tuple(tuple(_as_poly(x) for x in row) for row in entries)
        if cols is None:
            if not data:
                raise DimensionMismatch("column count needed for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_coefficients(cls, mats: Sequence[RatMatrix]) -> "PolyMatrix":
        """sum_k t^k mats[k]."""
        r, c = mats[0].shape
        if any(m.shape != (r, c) for m in mats):
            raise DimensionMismatch("coefficient matrices differ in shape")
        return cls(r, c, tuple(tuple(_trim([m[i, j] for m in mats]) for j in range(c)) for i in range(r)))

    @classmethod
    def constant(cls, m: RatMatrix) -> "PolyMatrix":
        return cls.from_coefficients([m])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def degree(self) -> int:
        return max((len(p) - 1 for r in self.entries for p in r if p), default=-1)

    def is_zero(self) -> bool:
        return not any(p for r in self.entries for p in r)

    def coefficient(self, k: int) -> RatMatrix:
        z = Fraction(0)
        return RatMatrix(self.rows, self.cols, tuple(tuple(p[k] if k < len(p) else z for p in r) for r in self.entries))

    def coefficients(self) -> list[RatMatrix]:
        return [self.coefficient(k) for k in range(self.degree() + 1)]

    def shift(self, k: int) -> "PolyMatrix":
        """Multiply by t^k (k >= 0), or divide by t^-k when that is exact."""
        if k >= 0:
            pad = (Fraction(0),) * k
            return PolyMatrix(self.rows, self.cols, tuple(tuple(pad + p if p else p for p in r) for r in self.entries))
        if self.is_zero():
            return self
        if entry_valuation(self) < -k:
            raise ValueError(f"cannot divide by t^{-k}")
        return PolyMatrix(self.rows, self.cols, tuple(tuple(p[-k:] for p in r) for r in self.entries))

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def left_mul(self, m: RatMatrix) -> "PolyMatrix":
        """m . self for a constant matrix m."""
        if m.cols != self.rows:
            raise DimensionMismatch(f"cannot multiply {m.shape} by {self.shape}")
        mats = [m @ c for c in self.coefficients()] or [RatMatrix.zeros(m.rows, self.cols)]
        return PolyMatrix.from_coefficients(mats)

    def right_mul(self, m: RatMatrix) -> "PolyMatrix":
        if self.cols != m.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {m.shape}")
        mats = [c @ m for c in self.coefficients()] or [RatMatrix.zeros(self.rows, m.cols)]
        return PolyMatrix.from_coefficients(mats)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        return PolyMatrix(
            self.rows, self.cols, tuple(tuple(poly_add(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc: Poly = ()
                for k in range(self.cols):
                    acc = poly_add(acc, poly_mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(self.rows, other.cols, tuple(out))

    def precision_bound(self) -> int:
        """Strict upper bound on the degree of every minor."""
        row_deg = sum(max((len(p) - 1 for p in r if p), default=0) for r in self.entries)
        col_deg = sum(max((len(self.entries[i][j]) - 1 for i in range(self.rows) if self.entries[i][j]), default=0) for j in range(self.cols))
        return min(row_deg, col_deg) + 1


def from_laurent(entries: Sequence[Sequence[Mapping[int, object]]], cols: Optional[int] = None) -> tuple[PolyMatrix, int]:
    """Normalise a Laurent family by the smallest power of t present.

    ``entries[i][j]`` maps exponents (possibly negative) to coefficients.
    Returns ``(p, shift)`` with ``family = t^shift . p``.
    """
    exps = [e for r in entries for d in r for e, c in d.items() if to_rat(c)]
    shift = min(exps, default=0)
    out = []
    for r in entries:
        row = []
        for d in r:
            coeffs: dict[int, Fraction] = {}
            for e, c in d.items():
                c = to_rat(c)
                if c:
                    coeffs[e - shift] = coeffs.get(e - shift, Fraction(0)) + c
            n = max(coeffs, default=-1) + 1
            row.append(_trim([coeffs.get(k, 0) for k in range(n)]))
        out.append(tuple(row))
    if cols is None:
        cols = len(out[0]) if out else 0
    return PolyMatrix(len(out), cols, tuple(out)), shift


# ---------------------------------------------------------------------------
# truncated power series in Q[t]/(t^D)


def _series(p: Poly, prec: int) -> list[Fraction]:
    s = list(p[:prec])
    return s + [Fraction(0)] * (prec - len(s))


def _sval(s: list[Fraction]) -> Optional[int]:
    for k, x in enumerate(s):
        if x:
            return k
    return None


def _smul(a: list[Fraction], b: list[Fraction], prec: int) -> list[Fraction]:
    out = [Fraction(0)] * prec
    for i, x in enumerate(a):
        if x:
            for j in range(prec - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out


def _sinv(unit: list[Fraction], prec: int) -> list[Fraction]:
    """Inverse of a series with nonzero constant term."""
    a0 = unit[0]
    inv = [Fraction(0)] * prec
    inv[0] = 1 / a0
    for n in range(1, prec):
        acc = sum((unit[k] * inv[n - k] for k in range(1, n + 1) if unit[k]), Fraction(0))
        inv[n] = -acc / a0
    return inv


@dataclass(frozen=True)
class LocalReduction:
    """Result of two-sided elimination over Q[[t]].

    ``P . A . Q = diag(t^e_k * unit_k)`` with P, Q invertible over Q[[t]];
    only the constant terms ``p0``, ``q0`` are kept, together with
    ``leads[k] = unit_k(0)``.
    """

    exponents: tuple[int, ...]
    leads: tuple[Fraction, ...]
    p0: RatMatrix
    q0: RatMatrix


def local_reduce(p: PolyMatrix) -> LocalReduction:
    nr, nc = p.shape
    prec = p.precision_bound()
    M = [[_series(p.entries[i][j], prec) for j in range(nc)] for i in range(nr)]
    P0 = [[Fraction(int(i == j)) for j in range(nr)] for i in range(nr)]
    Q0 = [[Fraction(int(i == j)) for j in range(nc)] for i in range(nc)]
    vals = [[_sval(M[i][j]) for j in range(nc)] for i in range(nr)]
    exps: list[int] = []
    leads: list[Fraction] = []
    for k in range(min(nr, nc)):
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                v = vals[i][j]
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        e, bi, bj = best
        if bi != k:
            M[k], M[bi] = M[bi], M[k]
            vals[k], vals[bi] = vals[bi], vals[k]
            P0[k], P0[bi] = P0[bi], P0[k]
        if bj != k:
            for row in M:
                row[k], row[bj] = row[bj], row[k]
            for row in vals:
                row[k], row[bj] = row[bj], row[k]
            for row in Q0:
                row[k], row[bj] = row[bj], row[k]
        piv = M[k][k]
        inv = _sinv(piv[e:] + [Fraction(0)] * e, prec)
        leads.append(piv[e])
        exps.append(e)
        for i in range(k + 1, nr):
            a = M[i][k]
            if vals[i][k] is None:
                continue
            c = _smul(a[e:] + [Fraction(0)] * e, inv, prec)
            Mi, Mk = M[i], M[k]
            for j in range(k, nc):
                if vals[k][j] is None:
                    continue
                prod = _smul(c, Mk[j], prec)
                Mi[j] = [x - y for x, y in zip(Mi[j], prod)]
                vals[i][j] = _sval(Mi[j])
            if c[0]:
                P0[i] = [x - c[0] * y for x, y in zip(P0[i], P0[k])]
        for j in range(k + 1, nc):
            if vals[k][j] is None:
                continue
            c = _smul(M[k][j][e:] + [Fraction(0)] * e, inv, prec)
            M[k][j] = [Fraction(0)] * prec
            vals[k][j] = None
            if c[0]:
                for row in Q0:
                    row[j] -= c[0] * row[k]
    return LocalReduction(tuple(exps), tuple(leads), RatMatrix.of(P0, cols=nr), RatMatrix.of(Q0, cols=nc))


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class SmithProfile:
    exponents: tuple[int, ...]
    generic_rank: int

    def multiplicities(self) -> tuple[int, ...]:
        """How many invariant factors share each distinct exponent, ascending."""
        out: list[int] = []
        prev = None
        for e in self.exponents:
            if e == prev:
                out[-1] += 1
            else:
                out.append(1)
                prev = e
        return tuple(out)

    def partial_sums(self) -> tuple[int, ...]:
        acc, out = 0, []
        for e in self.exponents:
            acc += e
            out.append(acc)
        return tuple(out)


def entry_valuation(p: PolyMatrix) -> int:
    v = min((poly_val(q) for r in p.entries for q in r if q), default=None)
    if v is None:
        raise ZeroFamily("identically zero family")
    return v


def local_smith_exponents(p: PolyMatrix) -> SmithProfile:
    if p.is_zero():
        raise ZeroFamily("identically zero family")
    red = local_reduce(p)
    return SmithProfile(red.exponents, len(red.exponents))


def _poly_det(block: list[list[Poly]]) -> Poly:
    n = len(block)
    total: Poly = ()
    for perm in permutations(range(n)):
        term: Poly = (Fraction(1),)
        for i, j in enumerate(perm):
            term = poly_mul(term, block[i][j])
            if not term:
                break
        if not term:
            continue
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        if inv % 2:
            term = tuple(-x for x in term)
        total = poly_add(total, term)
    return total


def minor_valuation_direct(p: PolyMatrix, i: int) -> int:
    """Minimum t-order over all i x i minors, by explicit expansion."""
    if not 1 <= i <= min(p.shape):
        raise MinorVanishes(f"no {i}x{i} minors in a {p.rows}x{p.cols} matrix")
    best = None
    for rs in combinations(range(p.rows), i):
        for cs in combinations(range(p.cols), i):
            d = _poly_det([[p.entries[r][c] for c in cs] for r in rs])
            v = poly_val(d)
            if v is not None and (best is None or v < best):
                best = v
                if best == 0:
                    return 0
    if best is None:
        raise MinorVanishes(f"every {i}x{i} minor is identically zero")
    return best


DIRECT_MINOR_LIMIT = 6


def minor_valuation(p: PolyMatrix, i: int) -> int:
    """Minimal t-order of the i x i minors.

    Small minors are expanded directly; larger ones are read off the Smith
    profile (sum of the i smallest exponents).
    """
    if i <= DIRECT_MINOR_LIMIT:
        return minor_valuation_direct(p, i)
    prof = local_smith_exponents(p)
    if i > prof.generic_rank:
        raise MinorVanishes(f"every {i}x{i} minor is identically zero")
    return prof.partial_sums()[i - 1]
