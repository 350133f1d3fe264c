"""Complete collineations, complete quadrics and complete skew forms.

A rank-u complete collineation V -> W is a u-dimensional U in V with maps

    f_1 : U -> W,   f_{j+1} : ker f_j -> coker f_j,

each nonzero, the last of maximal rank.  Concretely stage j acts on
K_{j-1} (kernel of the previous stage, K_0 = U, given by its canonical basis
inside V) and lands in W / I_{j-1}, where I_{j-1} is the cumulative image.
The quotient is modelled by :func:`clm.linalg.quotient_projection`, so the
stage matrix has shape ``(dim W - dim I_{j-1}) x dim K_{j-1}``.

For the symmetric and skew flavours W = V*, with coordinate i of W the
functional dual to coordinate i of V, and U = V.

Open point on "maximal rank": a general last stage is accepted when its
kernel or its cokernel is zero.  Since u <= dim W this forces the last
kernel to vanish, which is what the bijection with nodal chains needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Optional

from clm.degeneration import PolyMatrix, local_reduce
from clm.errors import (
    DegenerateFamily,
    DimensionMismatch,
    FlavorMismatch,
    InvalidCollineation,
    SingularMatrix,
    ZeroFamily,
)
from clm.linalg import (
    RatMatrix,
    SplitContext,
    Subspace,
    inverse,
    join,
    kernel,
    quotient_lift,
    quotient_projection,
)


class Flavor(str, Enum):
    GENERAL = "general"
    SYMMETRIC = "symmetric"
    SKEW = "skew"


@dataclass(frozen=True)
class Stage:
    map: RatMatrix
    kernel: Subspace
    rank: int


@dataclass(frozen=True)
class CompleteCollineation:
    ctx: SplitContext
    domain: Subspace
    flavor: Flavor
    stages: tuple[Stage, ...]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(s.rank for s in self.stages)

    def kernel_chain(self) -> list[Subspace]:
        """K_0 = U, K_1, ..., K_i (subspaces of V)."""
        return [self.domain] + [s.kernel for s in self.stages]

    def image_chain(self) -> list[Subspace]:
        """I_0 = 0, I_1, ..., I_i: cumulative images inside W."""
        out = [Subspace.zero(self.ctx.dim_w)]
        for s in self.stages:
            prev = out[-1]
            lifted = quotient_lift(prev) @ s.map
            out.append(join(prev, Subspace.span(lifted.columns(), self.ctx.dim_w)))
        return out

    def normalized(self) -> "CompleteCollineation":
        """Rescale each stage so its first nonzero entry is 1 (each f_j is projective)."""
        return replace(self, stages=tuple(replace(s, map=s.map.normalized()) for s in self.stages))

    def same_point(self, other: "CompleteCollineation") -> bool:
        return self.normalized() == other.normalized()


@dataclass(frozen=True)
class Violation:
    clause: str
    stage: Optional[int] = None


@dataclass(frozen=True)
class CollineationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}


@dataclass(frozen=True)
class FlagPair:
    v_flag: tuple[Subspace, ...]
    w_flag: tuple[Subspace, ...]


def _gram(k: Subspace, img: Subspace, f: RatMatrix) -> RatMatrix:
    """Pairing matrix G[a][b] = <lift f(k_b), k_a> on the basis of K."""
    return k.basis @ quotient_lift(img) @ f


def _kernel_in_v(k: Subspace, f: RatMatrix) -> Subspace:
    vecs = []
    for c in kernel(f):
        vecs.append([sum((x * v[i] for x, v in zip(c, k.vectors)), Fraction(0)) for i in range(k.ambient)])
    return Subspace.span(vecs, k.ambient)


def validate_collineation(cc: CompleteCollineation) -> CollineationReport:
    bad: list[Violation] = []
    ctx = cc.ctx
    if cc.flavor is not Flavor.GENERAL and not (ctx.dim_v == ctx.dim_w == ctx.u):
        bad.append(Violation("flavor-ctx"))
    if cc.domain.ambient != ctx.dim_v or cc.domain.dim != ctx.u:
        bad.append(Violation("domain-dim"))
        return CollineationReport(tuple(bad))
    if not cc.stages:
        bad.append(Violation("no-stages"))
        return CollineationReport(tuple(bad))

    k_prev = cc.domain
    img = Subspace.zero(ctx.dim_w)
    total = 0
    for j, st in enumerate(cc.stages, start=1):
        expected = (ctx.dim_w - img.dim, k_prev.dim)
        if st.map.shape != expected:
            bad.append(Violation("shape", j))
            return CollineationReport(tuple(bad))
        rank = st.map.rank()
        if rank == 0:
            bad.append(Violation("nonzero-stage", j))
        if st.rank != rank:
            bad.append(Violation("rank", j))
        ker = _kernel_in_v(k_prev, st.map)
        if st.kernel != ker:
            bad.append(Violation("kernel", j))
        total += rank
        if cc.flavor is not Flavor.GENERAL and ctx.dim_v == ctx.dim_w:
            # I_{j-1} must be the annihilator of K_{j-1} for the pairing to make sense
            pair_ok = img.dim + k_prev.dim == ctx.dim_v and (img.dim == 0 or k_prev.dim == 0 or (img.basis @ k_prev.basis.T).is_zero())
            if not pair_ok:
                bad.append(Violation("pairing", j))
            else:
                g = _gram(k_prev, img, st.map)
                if cc.flavor is Flavor.SYMMETRIC and g != g.T:
                    bad.append(Violation("self-adjoint", j))
                if cc.flavor is Flavor.SKEW:
                    if g != -g.T:
                        bad.append(Violation("skew-adjoint", j))
                    if rank % 2:
                        bad.append(Violation("skew-even-rank", j))
        lifted = quotient_lift(img) @ st.map
        img = join(img, Subspace.span(lifted.columns(), ctx.dim_w))
        k_prev = ker
    if total > ctx.u:
        bad.append(Violation("rank-sum"))
    last_ker = ctx.u - total
    last_coker = ctx.dim_w - img.dim
    if cc.flavor is Flavor.SKEW:
        if last_ker > 1:
            bad.append(Violation("skew-final-null"))
    elif last_ker != 0 and last_coker != 0:
        bad.append(Violation("maximal-rank"))
    return CollineationReport(tuple(bad))


def require_valid(cc: CompleteCollineation) -> None:
    report = validate_collineation(cc)
    if not report.ok:
        raise InvalidCollineation("invalid complete collineation", [v.clause for v in report.violations])


def flags(cc: CompleteCollineation) -> tuple[FlagPair, bool]:
    """Flags ker f_1 > ker f_2 > ... in V and I_1 < I_2 < ... in W; plus the Halphen test."""
    require_valid(cc)
    v_flag = tuple(s.kernel for s in cc.stages)
    w_flag = tuple(cc.image_chain()[1:])
    is_halphen = len(cc.stages) == cc.ctx.u and all(r == 1 for r in cc.ranks)
    return FlagPair(v_flag, w_flag), is_halphen


# ---------------------------------------------------------------------------
# limits of families


def _check_flavor(family: PolyMatrix, flavor: Flavor) -> None:
    for k, c in enumerate(family.coefficients()):
        if flavor is Flavor.SYMMETRIC and c != c.T:
            raise FlavorMismatch(f"coefficient of t^{k} is not symmetric")
        if flavor is Flavor.SKEW and c != -c.T:
            raise FlavorMismatch(f"coefficient of t^{k} is not antisymmetric")


def limit_collineation(
    family: PolyMatrix,
    ctx: Optional[SplitContext] = None,
    flavor: Flavor | str = Flavor.GENERAL,
    domain: Optional[Subspace] = None,
) -> CompleteCollineation:
    """Limit at t = 0 of the family A(t) : U -> W.

    ``family`` is ``dim W x u``; its columns refer to the canonical basis of
    ``domain`` (default: the first u coordinate vectors of V).  The stages
    come from two-sided elimination over Q[[t]]: if P A Q = diag(t^e_a u_a)
    then, with distinct exponents e(1) < e(2) < ..., stage j is the leading
    term of A restricted to the t-corrected kernel lifts Q e_a (e_a >= e(j))
    taken modulo the images of the earlier blocks.  For A_0 + t A_1 with
    pi A_1 of full rank on ker A_0 this is the derivative rule
    f_2 = pi . A_1 |ker A_0.
    """
    flavor = Flavor(flavor)
    if ctx is None:
        ctx = SplitContext(family.cols, family.rows, family.cols)
    if family.shape != (ctx.dim_w, ctx.u):
        raise DimensionMismatch(f"family must be dim W x u = {ctx.dim_w}x{ctx.u}, got {family.rows}x{family.cols}")
    if domain is None:
        domain = Subspace.span(RatMatrix.identity(ctx.dim_v).data[: ctx.u], ctx.dim_v)
    if domain.ambient != ctx.dim_v or domain.dim != ctx.u:
        raise DimensionMismatch("domain must be a u-dimensional subspace of V")
    if flavor is not Flavor.GENERAL:
        if not (ctx.dim_v == ctx.dim_w == ctx.u):
            raise FlavorMismatch(f"{flavor.value} flavour needs dim V = dim W = u")
        _check_flavor(family, flavor)
    if family.is_zero():
        raise ZeroFamily("identically zero family")

    red = local_reduce(family)
    exps = red.exponents
    r = len(exps)
    missing = ctx.u - r
    if missing > (1 if flavor is Flavor.SKEW else 0):
        raise DegenerateFamily(f"family degenerates identically: generic rank {r} < u = {ctx.u}")

    q0 = red.q0
    q0_inv = inverse(q0)
    p0_inv = inverse(red.p0)
    dom = domain.basis  # u x dim V
    # V-coordinates of the lifted kernel directions Q0 e_a
    dirs = (q0.T @ dom).data

    stages: list[Stage] = []
    distinct = sorted(set(exps))
    for level in distinct:
        lower = [a for a in range(ctx.u) if a < r and exps[a] < level]
        upper = [a for a in range(ctx.u) if a not in lower]
        block = [a for a in range(r) if exps[a] == level]
        k_prev = Subspace.span([dirs[a] for a in upper], ctx.dim_v)
        img = Subspace.span([p0_inv.column(a) for a in lower], ctx.dim_w)
        diag = RatMatrix.of(
            [[red.leads[a] if (a == b and a in block) else 0 for b in range(ctx.u)] for a in range(ctx.dim_w)], cols=ctx.u
        )
        g = p0_inv @ diag @ q0_inv  # leading map on U-coordinates
        coords = [domain.coordinates(v) for v in k_prev.vectors]
        cols = [g.apply(c) for c in coords]
        f = quotient_projection(img) @ RatMatrix.from_columns(cols, ctx.dim_w)
        stages.append(Stage(f, _kernel_in_v(k_prev, f), len(block)))

    cc = CompleteCollineation(ctx, domain, flavor, tuple(stages))
    require_valid(cc)
    return cc


def limit_quadric(family: PolyMatrix, ctx: Optional[SplitContext] = None) -> CompleteCollineation:
    return limit_collineation(family, ctx, Flavor.SYMMETRIC)


def limit_skew(family: PolyMatrix, ctx: Optional[SplitContext] = None) -> CompleteCollineation:
    return limit_collineation(family, ctx, Flavor.SKEW)


def halphen_family(a: RatMatrix, ctx: Optional[SplitContext] = None) -> PolyMatrix:
    """The family a_ij t^(i+j) (0-based), embedded in the first u rows of W.

    V- and W-basis vector i carry weights i and -i; running the one-parameter
    subgroup towards the end where the first basis vectors dominate, and
    dividing out the common power of t, leaves these exponents.  The i x i
    minors then have minimal order i(i-1), attained by the leading principal
    minor.
    """
    u = a.rows
    if a.cols != u:
        raise DimensionMismatch("Halphen degeneration needs a square matrix")
    if ctx is None:
        ctx = SplitContext(u, u, u)
    if ctx.u != u:
        raise DimensionMismatch(f"matrix is {u}x{u} but u = {ctx.u}")
    if a.det() == 0:
        raise SingularMatrix("Halphen degeneration needs an invertible matrix")
    rows = []
    for i in range(ctx.dim_w):
        row = []
        for j in range(u):
            row.append([0] * (i + j) + [a[i, j]] if i < u else [])
        rows.append(row)
    return PolyMatrix.of(rows, cols=u)


def halphen_degeneration(a: RatMatrix, ctx: Optional[SplitContext] = None) -> CompleteCollineation:
    if ctx is None:
        ctx = SplitContext(a.rows, a.rows, a.rows)
    return limit_collineation(halphen_family(a, ctx), ctx)
