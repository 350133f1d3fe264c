"""GIT stability for C* acting on Gr_u(V (+) W) with weight 1 on V and -1 on W.

sigma parametrises the linearisation L(u - 2 sigma).  ``classify`` uses the
intersection-dimension criterion; ``plucker_weight_support`` is the
independent Hilbert-Mumford route through the weights of the nonzero
Pluecker coordinates.  The two must always agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional

from clm.collineation import Flavor
from clm.errors import DimensionMismatch, FlavorMismatch
from clm.linalg import Split, SplitContext, Subspace, cap_v, cap_w, det_int, integral_rows, project_v, project_w, to_rat

STABLE = "stable"
SEMISTABLE = "strictly-semistable"
UNSTABLE = "unstable"


def _split_of(U: Subspace) -> Split:
    if U.split is None:
        raise DimensionMismatch("subspace carries no V (+) W split")
    return U.split


def _check_u(U: Subspace, u: Optional[int]) -> int:
    if u is not None and U.dim != u:
        raise DimensionMismatch(f"dim U = {U.dim}, expected u = {u}")
    if U.dim < 1:
        raise DimensionMismatch("U must be nonzero")
    return U.dim


@dataclass(frozen=True)
class StabilityReport:
    sigma: Fraction
    status: str
    u: int
    dim_u_cap_v: int
    dim_u_cap_w: int
    semistable_interval: tuple[int, int]
    # (V-part, W-part) of the polystable representative when an equality holds
    graded_object: Optional[tuple[Subspace, Subspace]] = None

    @property
    def semistable(self) -> bool:
        return self.status != UNSTABLE


def classify(U: Subspace, sigma, u: Optional[int] = None) -> StabilityReport:
    sp = _split_of(U)
    u = _check_u(U, u)
    sigma = to_rat(sigma)
    uv, uw = cap_v(U), cap_w(U)
    a, b = uv.dim, uw.dim
    first = a <= u - sigma
    second = b <= sigma
    if not (first and second):
        status = UNSTABLE
    elif a < u - sigma and b < sigma:
        status = STABLE
    else:
        status = SEMISTABLE
    graded = None
    if status == SEMISTABLE:
        if a == u - sigma:
            graded = (uv, project_w(U))
        else:
            graded = (project_v(U), uw)
    return StabilityReport(sigma, status, u, a, b, (b, u - a), graded)


def plucker_coordinates(U: Subspace) -> dict[tuple[int, ...], int]:
    """Nonzero Pluecker coordinates keyed by column set, up to one common factor.

    Basis rows are rescaled to primitive integer vectors first so the minors
    are integer Bareiss determinants.
    """
    rows = integral_rows(U.vectors)
    out = {}
    for cols in combinations(range(U.ambient), U.dim):
        d = det_int([[r[c] for c in cols] for r in rows])
        if d:
            out[cols] = d
    return out


@dataclass(frozen=True)
class WeightSupport:
    u: int
    weights: tuple[int, ...]
    orbit_degree: int

    def oracle_status(self, sigma) -> str:
        """Hilbert-Mumford: semistable iff u - 2 sigma lies in [min, max] of the support."""
        x = self.u - 2 * to_rat(sigma)
        lo, hi = self.weights[0], self.weights[-1]
        if x < lo or x > hi:
            return UNSTABLE
        if lo < x < hi:
            return STABLE
        return SEMISTABLE


def plucker_weight_support(U: Subspace, u: Optional[int] = None) -> WeightSupport:
    sp = _split_of(U)
    u = _check_u(U, u)
    weights = set()
    for cols in plucker_coordinates(U):
        a = sum(1 for c in cols if c < sp.dim_v)
        weights.add(2 * a - u)
    ws = tuple(sorted(weights))
    g = 0
    for w in ws:
        g = gcd(g, w - ws[0])
    degree = 0 if g == 0 else (ws[-1] - ws[0]) // g
    return WeightSupport(u, ws, degree)


def orbit_degree(U: Subspace) -> int:
    return plucker_weight_support(U).orbit_degree


def semistable_oracle_equivalence(U: Subspace, sigma) -> bool:
    return classify(U, sigma).status == plucker_weight_support(U).oracle_status(sigma)


# ---------------------------------------------------------------------------
# dimensions of quotients, flip loci and secant varieties


@dataclass(frozen=True)
class WallDims:
    k: int
    z0: int
    z_minus: int
    z_plus: int


@dataclass(frozen=True)
class Chamber:
    lo: int
    hi: int
    label: str


@dataclass(frozen=True)
class DimReport:
    ctx: SplitContext
    flavor: Flavor
    dim_quotient: int
    walls: tuple[int, ...]
    wall_dims: tuple[WallDims, ...]
    secant_dims: tuple[tuple[int, int], ...]
    dim_via_v_end: int
    dim_via_w_end: int
    chambers: tuple[Chamber, ...]
    # dimension of complete quadrics / skew forms when U = V; None otherwise
    flavor_dim_quotient: Optional[int] = None


def z0_dim(ctx: SplitContext, k: int) -> int:
    """Gr_{u-k} V x Gr_k W."""
    u, dv, dw = ctx.u, ctx.dim_v, ctx.dim_w
    return (u - k) * (dv - u + k) + k * (dw - k)


def z_minus_dim(ctx: SplitContext, k: int) -> int:
    """P Hom(S_W, Q_V) over Z^0_k."""
    return z0_dim(ctx, k) + k * (ctx.dim_v - ctx.u + k) - 1


def z_plus_dim(ctx: SplitContext, k: int) -> int:
    """P Hom(S_V, Q_W) over Z^0_k."""
    return z0_dim(ctx, k) + (ctx.u - k) * (ctx.dim_w - k) - 1


def secant_dim(ctx: SplitContext, k: int) -> int:
    """Maps S_V -> W of rank <= k, projectivised, over Gr_u V."""
    u = ctx.u
    return u * (ctx.dim_v - u) + k * (u + ctx.dim_w - k) - 1


def dims_report(ctx: SplitContext, flavor: Flavor | str = Flavor.GENERAL) -> DimReport:
    flavor = Flavor(flavor)
    u, dv, dw = ctx.u, ctx.dim_v, ctx.dim_w
    flavored = None
    if flavor is not Flavor.GENERAL:
        if dv != dw:
            raise FlavorMismatch(f"{flavor.value} flavour needs dim V = dim W")
        if u == dv:
            flavored = u * (u + 1) // 2 - 1 if flavor is Flavor.SYMMETRIC else u * (u - 1) // 2 - 1
    if flavor is Flavor.SKEW:
        walls = tuple(k for k in range(u + 1) if k % 2 == 0)
    else:
        walls = tuple(range(u + 1))
    interior = [k for k in walls if 0 < k < u]
    wall_dims = tuple(WallDims(k, z0_dim(ctx, k), z_minus_dim(ctx, k), z_plus_dim(ctx, k)) for k in interior)
    secants = tuple((k, secant_dim(ctx, k)) for k in range(1, u))
    via_v = u * (dv - u) + u * dw - 1
    via_w = u * (dw - u) + u * dv - 1

    chambers = []
    bounds = list(walls) + ([u] if walls[-1] != u else [])
    for lo, hi in zip(bounds, bounds[1:]):
        labels = []
        if lo == 0:
            labels.append("P Hom(S_V, W) over Gr_u V")
        if hi == u:
            labels.append("P Hom(S_W, V) over Gr_u W")
        chambers.append(Chamber(lo, hi, " = ".join(labels) if labels else "flip chamber"))
    return DimReport(
        ctx=ctx,
        flavor=flavor,
        dim_quotient=u * (dv + dw - u) - 1,
        walls=walls,
        wall_dims=wall_dims,
        secant_dims=secants,
        dim_via_v_end=via_v,
        dim_via_w_end=via_w,
        chambers=tuple(chambers),
        flavor_dim_quotient=flavored,
    )


def end_point_dims(ctx: SplitContext) -> tuple[int, int]:
    """Dimensions of the quotients at sigma = 0 (Gr_u V) and sigma = u (Gr_u W)."""
    return ctx.u * (ctx.dim_v - ctx.u), ctx.u * (ctx.dim_w - ctx.u)


@dataclass(frozen=True)
class FiberCount:
    k: int
    fiber: int
    base: int
    total: int
    dim_quotient: int


def recursive_fiber_dims(ctx: SplitContext) -> tuple[FiberCount, ...]:
    """Over Z^0_k the limit space fibres in the rank-k space for (V/V', W').

    Returns dim fiber + dim Z^0_k against the full dimension for k = 1..u.
    """
    out = []
    full = dims_report(ctx).dim_quotient
    for k in range(1, ctx.u + 1):
        fiber = dims_report(SplitContext(ctx.dim_v - (ctx.u - k), k, k)).dim_quotient
        base = z0_dim(ctx, k)
        out.append(FiberCount(k, fiber, base, fiber + base, full))
    return tuple(out)
