"""Seeded random inputs: subspaces, families, collineations.

Everything takes a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from clm.collineation import CompleteCollineation, Flavor, limit_collineation
from clm.degeneration import PolyMatrix, local_smith_exponents
from clm.linalg import RatMatrix, Split, SplitContext, Subspace, rank_kernel_cokernel


def rat(rng: random.Random, lo: int = -3, hi: int = 3, frac: float = 0.15) -> Fraction:
    x = Fraction(rng.randint(lo, hi))
    if rng.random() < frac:
        x /= rng.randint(2, 5)
    return x


def matrix(rng: random.Random, rows: int, cols: int, rank: Optional[int] = None) -> RatMatrix:
    if rank is None:
        return RatMatrix.of([[rat(rng) for _ in range(cols)] for _ in range(rows)], cols=cols)
    while True:
        m = matrix(rng, rows, rank) @ matrix(rng, rank, cols)
        if m.rank() == rank:
            return m


def invertible(rng: random.Random, n: int) -> RatMatrix:
    while True:
        m = matrix(rng, n, n)
        if m.det():
            return m


def integer_matrix_with_leading_minors(rng: random.Random, n: int, bound: int = 9) -> RatMatrix:
    """Random integer matrix whose leading principal minors are all nonzero."""
    while True:
        m = RatMatrix.of([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if all(m.select_rows(range(k)).select_columns(range(k)).det() for k in range(1, n + 1)):
            return m


def subspace(rng: random.Random, dim_v: int, dim_w: int, u: int) -> Subspace:
    """A u-dimensional U in V (+) W, biased towards special intersections.

    Chooses target dims a = dim U n V and b = dim U n W (sometimes both 0),
    then completes with generic mixed vectors.
    """
    sp = Split(dim_v, dim_w)
    n = dim_v + dim_w
    while True:
        mode = rng.random()
        if mode < 0.35:
            a = b = 0
        else:
            a = rng.randint(0, min(u, dim_v))
            b = rng.randint(0, min(u - a, dim_w))
        vecs = []
        for _ in range(a):
            vecs.append([rat(rng) for _ in range(dim_v)] + [0] * dim_w)
        for _ in range(b):
            vecs.append([0] * dim_v + [rat(rng) for _ in range(dim_w)])
        for _ in range(u - a - b):
            vecs.append([rat(rng) for _ in range(n)])
        U = Subspace.span(vecs, n, sp)
        if U.dim == u:
            return U


def family(rng: random.Random, rows: int, cols: int, max_deg: int = 3) -> PolyMatrix:
    """A polynomial matrix of entry degree <= max_deg from a mixture of shapes."""
    kind = rng.randrange(5)
    if kind == 0:
        # unstructured; shifted valuation sometimes
        v = rng.randint(0, 1)
        ent = [[[0] * v + [rat(rng) for _ in range(rng.randint(0, max_deg - v + 1))] for _ in range(cols)] for _ in range(rows)]
        return PolyMatrix.of(ent, cols=cols)
    if kind == 1:
        # constant P . diag(t^e) . Q
        r = rng.randint(1, min(rows, cols))
        exps = sorted(rng.randint(0, max_deg) for _ in range(r))
        return _pdq(rng, rows, cols, exps, 0)
    if kind == 2:
        r = rng.randint(1, min(rows, cols))
        exps = sorted(rng.randint(0, max(0, max_deg - 1)) for _ in range(r))
        return _pdq(rng, rows, cols, exps, 1)
    if kind == 3:
        # product of two linear families through a rank-r bottleneck
        r = rng.randint(1, min(rows, cols))
        b = PolyMatrix.from_coefficients([matrix(rng, rows, r), matrix(rng, rows, r)])
        c = PolyMatrix.from_coefficients([matrix(rng, r, cols), matrix(rng, r, cols)])
        p = b @ c
        return p if not p.is_zero() else family(rng, rows, cols, max_deg)
    # A0 + t A1 + ... with a low-rank constant term
    r0 = rng.randint(0, min(rows, cols) - 1)
    mats = [matrix(rng, rows, cols, r0) if r0 else RatMatrix.zeros(rows, cols)]
    for k in range(1, max_deg + 1):
        mats.append(matrix(rng, rows, cols, rng.randint(1, min(rows, cols))))
    return PolyMatrix.from_coefficients(mats)


def _pdq(rng: random.Random, rows: int, cols: int, exps: Sequence[int], p_deg: int) -> PolyMatrix:
    d = PolyMatrix.of(
        [[[0] * exps[i] + [rat(rng, 1, 4)] if (i == j and i < len(exps)) else 0 for j in range(cols)] for i in range(rows)], cols=cols
    )
    p = PolyMatrix.from_coefficients([invertible(rng, rows)] + [matrix(rng, rows, rows) for _ in range(p_deg)])
    q = PolyMatrix.constant(invertible(rng, cols))
    return p @ d @ q


def full_rank_family(rng: random.Random, rows: int, cols: int, max_deg: int = 3) -> PolyMatrix:
    """A family whose generic rank is ``cols`` (needs rows >= cols)."""
    while True:
        p = family(rng, rows, cols, max_deg)
        if not p.is_zero() and local_smith_exponents(p).generic_rank == cols:
            return p


def profile_family(rng: random.Random, rows: int, ranks: Sequence[int], gap: int = 1) -> PolyMatrix:
    """P . diag(t^e) . Q whose exponent multiplicities are exactly ``ranks``."""
    u = sum(ranks)
    exps = []
    level = 0
    for r in ranks:
        exps += [level] * r
        level += rng.randint(1, gap)
    return _pdq(rng, rows, u, exps, rng.randint(0, 1))


def first_order_family(rng: random.Random, rows: int, u: int, r: int) -> tuple[PolyMatrix, RatMatrix, RatMatrix]:
    """A_0 + t A_1 with rank A_0 = r and pi . A_1 | ker A_0 of full rank u - r."""
    while True:
        a0 = matrix(rng, rows, u, r)
        a1 = matrix(rng, rows, u)
        _, ker, proj = rank_kernel_cokernel(a0)
        induced = proj @ a1 @ ker.basis.T
        if induced.rank() == u - r:
            return PolyMatrix.from_coefficients([a0, a1]), a0, a1


def symmetric_family(rng: random.Random, n: int, max_exp: int = 3) -> PolyMatrix:
    """P(t)^T diag(c_i t^e_i) P(t) with P(0) invertible."""
    exps = [rng.randint(0, max_exp) for _ in range(n)]
    d = PolyMatrix.of([[[0] * exps[i] + [rat(rng, 1, 3) * rng.choice((1, -1))] if i == j else 0 for j in range(n)] for i in range(n)])
    p = PolyMatrix.from_coefficients([invertible(rng, n)] + ([matrix(rng, n, n)] if rng.random() < 0.5 else []))
    return p.T @ d @ p


def skew_family(rng: random.Random, n: int, max_exp: int = 3) -> PolyMatrix:
    """P(t)^T J(t) P(t) with J(t) a sum of blocks t^e [[0, 1], [-1, 0]]."""
    ent: list[list] = [[0] * n for _ in range(n)]
    for b in range(n // 2):
        e = rng.randint(0, max_exp)
        c = rat(rng, 1, 3)
        ent[2 * b][2 * b + 1] = [0] * e + [c]
        ent[2 * b + 1][2 * b] = [0] * e + [-c]
    j = PolyMatrix.of(ent, cols=n)
    p = PolyMatrix.from_coefficients([invertible(rng, n)] + ([matrix(rng, n, n)] if rng.random() < 0.5 else []))
    return p.T @ j @ p


def collineation(rng: random.Random, ctx: SplitContext, ranks: Optional[Sequence[int]] = None) -> CompleteCollineation:
    """A valid general collineation with the given stage ranks (random if None)."""
    if ranks is None:
        ranks = []
        left = ctx.u
        while left:
            r = rng.randint(1, left)
            ranks.append(r)
            left -= r
    fam = profile_family(rng, ctx.dim_w, ranks)
    vecs = matrix(rng, ctx.u, ctx.dim_v, ctx.u) if ctx.dim_v > ctx.u and rng.random() < 0.7 else RatMatrix.identity(ctx.dim_v).select_rows(range(ctx.u))
    domain = Subspace.span(vecs.data, ctx.dim_v)
    return limit_collineation(fam, ctx, Flavor.GENERAL, domain)
