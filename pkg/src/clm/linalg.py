"""Exact rational linear algebra and subspaces of a split space V (+) W.

Rationals are :class:`fractions.Fraction`.  Matrices act on column vectors:
an ``r x c`` matrix is a map from Q^c to Q^r.  A subspace is stored by its
reduced row-echelon basis, so two subspaces are equal exactly when their
canonical bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from clm.errors import DimensionMismatch

Rat = Fraction


def to_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(q: Fraction) -> str:
    q = to_rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# elimination kernel


def _integral_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    return _primitive(ints)


def _primitive(ints: list[int]) -> list[int]:
    g = 0
    for x in ints:
        g = gcd(g, x)
        if g == 1:
            return ints
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def rref(rows: Iterable[Sequence[Fraction]], ncols: int) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Reduced row-echelon form of the span of ``rows``.

    Elimination runs fraction-free on primitive integer rows (content is
    divided out after every update to keep coefficients small); the pivots
    are normalised to 1 only at the end.  Returns the nonzero rows and the
    pivot columns.
    """
    work = []
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in ambient dimension {ncols}")
        if any(row):
            work.append(_integral_row([to_rat(x) for x in row]))
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        p = work[r]
        pc = p[c]
        for i in range(len(work)):
            a = work[i][c]
            if i != r and a:
                row = work[i]
                work[i] = _primitive([pc * x - a * y for x, y in zip(row, p)])
        pivots.append(c)
        r += 1
    out = []
    for row, c in zip(work[:r], pivots):
        lead = row[c]
        out.append(tuple(Fraction(x, lead) for x in row))
    return out, pivots


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def of(cls, entries: Sequence[Sequence], cols: Optional[int] = None) -> "RatMatrix":
        data = tuple(tuple(to_rat(x) for x in row) for row in entries)
        if cols is None:
            if not data:
                raise DimensionMismatch("column count needed for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        return cls.of([[col[i] for col in columns] for i in range(rows)], cols=len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        data = tuple(tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols) for row in self.data)
        return RatMatrix(self.rows, other.cols, data)

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for a map from Q^{self.cols}")
        return tuple(sum((a * b for a, b in zip(row, vec) if a and b), Fraction(0)) for row in self.data)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = to_rat(c)
        return RatMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def select_columns(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def select_rows(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(idx), self.cols, tuple(self.data[i] for i in idx))

    def rank(self) -> int:
        return len(rref(self.data, self.cols)[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return det(self.data)

    def first_nonzero(self) -> Fraction:
        for row in self.data:
            for x in row:
                if x:
                    return x
        return Fraction(0)

    def normalized(self) -> "RatMatrix":
        """Rescale so the first nonzero entry (row-major) is 1."""
        lead = self.first_nonzero()
        return self if lead in (0, 1) else self.scale(1 / lead)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in r) for r in self.data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        out *= p
        for i in range(c + 1, n):
            a = m[i][c]
            if a:
                f = a / p
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out * sign


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for c in range(n - 1):
        if not m[c][c]:
            piv = next((i for i in range(c + 1, n) if m[i][c]), None)
            if piv is None:
                return 0
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        for i in range(c + 1, n):
            mi, mc = m[i], m[c]
            a = mi[c]
            for j in range(c + 1, n):
                mi[j] = (p * mi[j] - a * mc[j]) // prev
        prev = p
    return sign * m[n - 1][n - 1] if n else 1


def integral_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Each row rescaled to a primitive integer vector (same projective point)."""
    return [_integral_row(list(r)) if any(r) else [0] * len(r) for r in rows]


def inverse(m: RatMatrix) -> RatMatrix:
    from clm.errors import SingularMatrix

    n = m.rows
    if m.cols != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.data)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix("matrix is not invertible")
    return RatMatrix.of([r[n:] for r in red[:n]], cols=n)


# ---------------------------------------------------------------------------
# split spaces and subspaces


@dataclass(frozen=True)
class Split:
    """Marks the first ``dim_v`` coordinates as V and the rest as W."""

    dim_v: int
    dim_w: int

    @property
    def ambient(self) -> int:
        return self.dim_v + self.dim_w


@dataclass(frozen=True)
class SplitContext:
    dim_v: int
    dim_w: int
    u: int

    def __post_init__(self):
        if self.dim_v < 0 or self.dim_w < 0:
            raise DimensionMismatch("negative dimension")
        if not 1 <= self.u <= min(self.dim_v, self.dim_w):
            raise DimensionMismatch(f"need 1 <= u <= min(dim V, dim W), got u={self.u} for ({self.dim_v}, {self.dim_w})")

    @property
    def split(self) -> Split:
        return Split(self.dim_v, self.dim_w)


@dataclass(frozen=True)
class Subspace:
    ambient: int
    basis: RatMatrix
    split: Optional[Split] = None

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int, split: Optional[Split] = None) -> "Subspace":
        if split is not None and split.ambient != ambient:
            raise DimensionMismatch(f"split {split} does not match ambient dimension {ambient}")
        red, _ = rref(vectors, ambient)
        return cls(ambient, RatMatrix(len(red), ambient, tuple(red)), split)

    @classmethod
    def zero(cls, ambient: int, split: Optional[Split] = None) -> "Subspace":
        return cls.span([], ambient, split)

    @classmethod
    def full(cls, ambient: int, split: Optional[Split] = None) -> "Subspace":
        return cls.span(RatMatrix.identity(ambient).data, ambient, split)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.basis.data

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(r) if x) for r in self.basis.data]

    def with_split(self, split: Optional[Split]) -> "Subspace":
        if split is not None and split.ambient != self.ambient:
            raise DimensionMismatch(f"split {split} does not match ambient dimension {self.ambient}")
        return Subspace(self.ambient, self.basis, split)

    def contains(self, vec: Sequence) -> bool:
        return self.coordinates(vec) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def coordinates(self, vec: Sequence) -> Optional[tuple[Fraction, ...]]:
        """Coefficients of ``vec`` in the canonical basis, or None if outside."""
        vec = [to_rat(x) for x in vec]
        if len(vec) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(vec)} in ambient dimension {self.ambient}")
        # reduced echelon: the coefficient on row i is the pivot entry of vec
        coeffs = tuple(vec[p] for p in self.pivots())
        rest = list(vec)
        for c, row in zip(coeffs, self.basis.data):
            if c:
                rest = [x - c * y for x, y in zip(rest, row)]
        if any(rest):
            return None
        return coeffs

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ",".join(rat_str(x) for x in v) + ")" for v in self.vectors)
        return f"Subspace<{self.ambient}>[{vecs}]"


def canonicalize(vectors: RatMatrix | Sequence[Sequence], ambient_dim: int, split: Optional[Split] = None) -> Subspace:
    rows = vectors.data if isinstance(vectors, RatMatrix) else vectors
    return Subspace.span(rows, ambient_dim, split)


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient} vs {b.ambient}")


def kernel(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the null space {x : m x = 0}, one vector per free column."""
    red, piv = rref(m.data, m.cols)
    free = [j for j in range(m.cols) if j not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def join(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return Subspace.span(a.vectors + b.vectors, a.ambient, a.split or b.split)


def meet(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    split = a.split or b.split
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient, split)
    # x = sum alpha_i a_i = sum beta_j b_j  <=>  [A^T | -B^T] (alpha, beta) = 0
    cols = list(a.vectors) + [tuple(-x for x in v) for v in b.vectors]
    m = RatMatrix.from_columns(cols, a.ambient)
    vecs = []
    for sol in kernel(m):
        alpha = sol[: a.dim]
        vecs.append([sum((c * v[k] for c, v in zip(alpha, a.vectors)), Fraction(0)) for k in range(a.ambient)])
    return Subspace.span(vecs, a.ambient, split)


def meet_join(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace]:
    return meet(a, b), join(a, b)


def image(m: RatMatrix) -> Subspace:
    return Subspace.span(m.columns(), m.rows)


def quotient_projection(sub: Subspace) -> RatMatrix:
    """Coordinate model of ambient/sub: kill ``sub`` and read off the non-pivot coordinates.

    Returns the ``(n - dim sub) x n`` matrix of y -> (y - sum_p y_p r_p)[non-pivots].
    """
    n = sub.ambient
    piv = sub.pivots()
    free = [j for j in range(n) if j not in piv]
    rows = []
    for f in free:
        row = [Fraction(0)] * n
        row[f] = Fraction(1)
        for p, r in zip(piv, sub.vectors):
            row[p] -= r[f]
        rows.append(row)
    return RatMatrix.of(rows, cols=n)


def quotient_lift(sub: Subspace) -> RatMatrix:
    """Section of :func:`quotient_projection`: place model coordinates on the non-pivot slots."""
    n = sub.ambient
    piv = sub.pivots()
    free = [j for j in range(n) if j not in piv]
    cols = []
    for f in free:
        col = [Fraction(0)] * n
        col[f] = Fraction(1)
        cols.append(col)
    return RatMatrix.from_columns(cols, n)


def rank_kernel_cokernel(m: RatMatrix) -> tuple[int, Subspace, RatMatrix]:
    ker = Subspace.span(kernel(m), m.cols)
    proj = quotient_projection(image(m))
    return m.cols - ker.dim, ker, proj


# ---------------------------------------------------------------------------
# the split V (+) W


def _require_split(s: Subspace) -> Split:
    if s.split is None:
        raise DimensionMismatch("subspace carries no V (+) W split")
    return s.split


def cap_v(s: Subspace) -> Subspace:
    """U n V, as a subspace of the ambient V (+) W."""
    sp = _require_split(s)
    w_part = RatMatrix.of([r[sp.dim_v :] for r in s.vectors], cols=sp.dim_w)
    combos = kernel(w_part.T)
    vecs = [[sum((c * r[k] for c, r in zip(alpha, s.vectors)), Fraction(0)) for k in range(s.ambient)] for alpha in combos]
    return Subspace.span(vecs, s.ambient, sp)


def cap_w(s: Subspace) -> Subspace:
    sp = _require_split(s)
    v_part = RatMatrix.of([r[: sp.dim_v] for r in s.vectors], cols=sp.dim_v)
    combos = kernel(v_part.T)
    vecs = [[sum((c * r[k] for c, r in zip(alpha, s.vectors)), Fraction(0)) for k in range(s.ambient)] for alpha in combos]
    return Subspace.span(vecs, s.ambient, sp)


def project_v(s: Subspace) -> Subspace:
    """p_V(U) = (U + W)/W, realised inside V (+) W with zero W-coordinates."""
    sp = _require_split(s)
    zero_w = (Fraction(0),) * sp.dim_w
    return Subspace.span([r[: sp.dim_v] + zero_w for r in s.vectors], s.ambient, sp)


def project_w(s: Subspace) -> Subspace:
    sp = _require_split(s)
    zero_v = (Fraction(0),) * sp.dim_v
    return Subspace.span([zero_v + r[sp.dim_v :] for r in s.vectors], s.ambient, sp)


def v_subspace(sp: Split) -> Subspace:
    return Subspace.span([tuple(Fraction(int(i == j)) for j in range(sp.ambient)) for i in range(sp.dim_v)], sp.ambient, sp)


def w_subspace(sp: Split) -> Subspace:
    return Subspace.span(
        [tuple(Fraction(int(i == j)) for j in range(sp.ambient)) for i in range(sp.dim_v, sp.ambient)], sp.ambient, sp
    )


def restrict_v(s: Subspace) -> Subspace:
    """A subspace lying inside V, re-expressed in V's own coordinates."""
    sp = _require_split(s)
    if any(any(r[sp.dim_v :]) for r in s.vectors):
        raise DimensionMismatch("subspace is not contained in V")
    return Subspace.span([r[: sp.dim_v] for r in s.vectors], sp.dim_v)


def restrict_w(s: Subspace) -> Subspace:
    sp = _require_split(s)
    if any(any(r[: sp.dim_v]) for r in s.vectors):
        raise DimensionMismatch("subspace is not contained in W")
    return Subspace.span([r[sp.dim_v :] for r in s.vectors], sp.dim_w)


def embed_v(s: Subspace, sp: Split) -> Subspace:
    if s.ambient != sp.dim_v:
        raise DimensionMismatch("subspace does not live in V")
    zero_w = (Fraction(0),) * sp.dim_w
    return Subspace.span([r + zero_w for r in s.vectors], sp.ambient, sp)


def embed_w(s: Subspace, sp: Split) -> Subspace:
    if s.ambient != sp.dim_w:
        raise DimensionMismatch("subspace does not live in W")
    zero_v = (Fraction(0),) * sp.dim_v
    return Subspace.span([zero_v + r for r in s.vectors], sp.ambient, sp)


def is_decomposable(s: Subspace) -> bool:
    """U = (U n V) (+) (U n W), i.e. U is a fixed point of the C*-action."""
    return cap_v(s).dim + cap_w(s).dim == s.dim


def solve(m: RatMatrix, b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Some x with m x = b (free variables set to 0), or None if inconsistent."""
    b = [to_rat(x) for x in b]
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.rows} equations")
    aug = [tuple(r) + (y,) for r, y in zip(m.data, b)]
    red, piv = rref(aug, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(red, piv):
        x[p] = row[m.cols]
    return tuple(x)
