"""Pairings on V (+) V* and isotropic subspaces.

Sign convention, fixed once here: for (v, phi), (v', phi') in V (+) V*

    symplectic  omega = phi'(v) - phi(v')     Gram [[0, I], [-I, 0]]
    symmetric   q     = phi'(v) + phi(v')     Gram [[0, I], [ I, 0]]

The graph of A : V -> V* is Lagrangian for omega iff A is self-adjoint and
maximal isotropic for q iff A is skew-adjoint.  The component OGr+ of
maximal q-isotropic subspaces containing V is detected by the parity of
dim(U n V), which matches dim V there.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from clm.errors import DimensionMismatch
from clm.linalg import RatMatrix, Split, Subspace, cap_v


class PairingKind(str, Enum):
    SYMPLECTIC = "symplectic"
    SYMMETRIC = "symmetric"


def gram(kind: PairingKind | str, n: int) -> RatMatrix:
    kind = PairingKind(kind)
    lower = -1 if kind is PairingKind.SYMPLECTIC else 1
    rows = []
    for i in range(2 * n):
        row = [0] * (2 * n)
        if i < n:
            row[n + i] = 1
        else:
            row[i - n] = lower
        rows.append(row)
    return RatMatrix.of(rows)


@dataclass(frozen=True)
class IsotropyReport:
    isotropic: bool
    maximal: bool
    dim_u_cap_v: int
    v_intersection_parity: str
    # only meaningful for maximal isotropic subspaces of the symmetric kind
    in_ogr_plus: bool


def isotropy_check(U: Subspace, kind: PairingKind | str) -> IsotropyReport:
    kind = PairingKind(kind)
    sp = U.split
    if sp is None or sp.dim_v != sp.dim_w:
        raise DimensionMismatch("isotropy needs the split V (+) V*")
    n = sp.dim_v
    b = U.basis
    iso = U.dim == 0 or (b @ gram(kind, n) @ b.T).is_zero()
    maximal = iso and U.dim == n
    d = cap_v(U).dim
    parity = "even" if d % 2 == 0 else "odd"
    ogr_plus = kind is PairingKind.SYMMETRIC and maximal and d % 2 == n % 2
    return IsotropyReport(iso, maximal, d, parity, ogr_plus)


def graph(a: RatMatrix) -> Subspace:
    """{(x, A x)} inside V (+) V*."""
    n = a.cols
    if a.rows != n:
        raise DimensionMismatch("graph of a map V -> V* needs a square matrix")
    cols = a.columns()
    vecs = [tuple(Fraction(int(i == j)) for j in range(n)) + cols[i] for i in range(n)]
    return Subspace.span(vecs, 2 * n, Split(n, n))
