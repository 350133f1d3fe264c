"""Reference computations kept independent of the library internals."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


def gauss_det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return d


def rref_rows(vectors, ncols):
    """Plain Gauss-Jordan; returns the nonzero rows of the reduced form."""
    m = [[Fraction(x) for x in v] for v in vectors]
    out, row = [], 0
    for c in range(ncols):
        p = next((r for r in range(row, len(m)) if m[r][c]), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        piv = m[row][c]
        m[row] = [x / piv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        row += 1
    return [tuple(r) for r in m[:row]]


def plucker(vectors, ambient):
    u = len(vectors)
    return {
        cols: d
        for cols in combinations(range(ambient), u)
        if (d := gauss_det([[v[c] for c in cols] for v in vectors]))
    }


def _ordered(p, cols):
    if len(set(cols)) < len(cols):
        return Fraction(0)
    order = sorted(range(len(cols)), key=lambda i: cols[i])
    inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
    return (-1) ** inv * p.get(tuple(sorted(cols)), Fraction(0))


def from_plucker(p, ambient):
    """Row space reconstructed from Pluecker coordinates by Cramer's rule."""
    base = next(iter(p))
    rows = []
    for a in range(len(base)):
        row = []
        for j in range(ambient):
            cols = list(base)
            cols[a] = j
            row.append(_ordered(p, cols) / p[base])
        rows.append(row)
    return rref_rows(rows, ambient)


def leading_limit(vectors, dim_v, ambient, toward_zero=True):
    """Limit of lambda . U (weight 1 on V, -1 on W) as lambda -> 0 or infinity.

    The Pluecker coordinate on column set I scales by lambda^(#V - #W); the
    limit keeps only the extremal-weight coordinates.
    """
    p = plucker(vectors, ambient)
    wt = {I: 2 * sum(1 for c in I if c < dim_v) - len(I) for I in p}
    target = min(wt.values()) if toward_zero else max(wt.values())
    return from_plucker({I: x for I, x in p.items() if wt[I] == target}, ambient)


def comb0(n: int, k: int) -> int:
    return math.comb(n, k) if n >= 0 and 0 <= k else 0


def section_lhs(u: int, k: int) -> int:
    return sum(comb0(u - 2 - i + k, k - 1) * comb0(i + k, k) for i in range(u))


def monomial_count(nvars: int, degree: int) -> int:
    """Number of monomials of the given degree, by direct enumeration."""
    if nvars == 0:
        return int(degree == 0)
    return sum(monomial_count(nvars - 1, degree - d) for d in range(degree + 1))


def inverse_power_series(m: int, order: int) -> list[int]:
    """(1 - x)^(-m) via the closed coefficient formula."""
    return [math.comb(n + m - 1, m - 1) for n in range(order + 1)]


def grassmannian_dim(k: int, n: int) -> int:
    return k * (n - k)
