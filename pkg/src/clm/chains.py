"""Cycles of the Chow quotient Gr_u(V (+) W) // C* as chains of orbit closures.

A chain U_1, ..., U_i of u-dimensional subspaces is valid when

    (1) no U_j is decomposable, U_j != (U_j n V) (+) (U_j n W)
    (2) U_1 n W = 0
    (3) U_i n V = 0
    (4) U_j n V = p_V(U_{j+1})
    (5) U_{j+1} n W = p_W(U_j)

with p_V(S) = (S + W)/W read as the coordinate projection onto V, and p_W
likewise.  Equations (4)-(5) say the sink of each orbit is the source of the
next one.  The components are the graphs of the stages of a complete
collineation, which gives the bijection implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from clm import identities
from clm.collineation import (
    CompleteCollineation,
    Flavor,
    Stage,
    require_valid,
    validate_collineation,
)
from clm.errors import DimensionMismatch, InvalidChain, InvalidCollineation
from clm.linalg import (
    RatMatrix,
    SplitContext,
    Subspace,
    cap_v,
    cap_w,
    is_decomposable,
    join,
    meet,
    project_v,
    project_w,
    quotient_lift,
    quotient_projection,
    restrict_v,
    restrict_w,
    solve,
)
from clm.stability import orbit_degree


@dataclass(frozen=True)
class NodalChain:
    ctx: SplitContext
    components: tuple[Subspace, ...]


def sink_source(U: Subspace) -> tuple[Subspace, Subspace]:
    """Limits of lambda.U as lambda -> 0 (sink) and lambda -> infinity (source)."""
    if U.split is None:
        raise DimensionMismatch("subspace carries no V (+) W split")
    sink = join(cap_v(U), project_w(U))
    source = join(project_v(U), cap_w(U))
    return sink, source


@dataclass(frozen=True)
class ChainReport:
    equations: tuple[int, ...]
    problems: tuple[str, ...]
    degrees: tuple[int, ...]
    total_degree: int
    shape: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.equations and not self.problems


def graph_shape(U: Subspace) -> tuple[int, int]:
    """Projective dimensions of the two factors P(p_V U) x P(p_W U)."""
    return project_v(U).dim - 1, project_w(U).dim - 1


def validate_chain(chain: NodalChain) -> ChainReport:
    ctx = chain.ctx
    sp = ctx.split
    comps = chain.components
    problems: list[str] = []
    if not comps:
        return ChainReport((), ("empty",), (), 0, ())
    if any(c.ambient != sp.ambient or c.dim != ctx.u for c in comps):
        return ChainReport((), ("dimension",), (), 0, ())
    comps = tuple(c.with_split(sp) for c in comps)
    eqs: set[int] = set()
    if any(is_decomposable(c) for c in comps):
        eqs.add(1)
    if cap_w(comps[0]).dim:
        eqs.add(2)
    if cap_v(comps[-1]).dim:
        eqs.add(3)
    for a, b in zip(comps, comps[1:]):
        if cap_v(a) != project_v(b):
            eqs.add(4)
        if cap_w(b) != project_w(a):
            eqs.add(5)
        if sink_source(a)[0] != sink_source(b)[1]:
            problems.append("adjacency")
    degrees = tuple(orbit_degree(c) for c in comps)
    total = sum(degrees)
    if not eqs and total != ctx.u:
        problems.append("degree")
    shape = tuple(graph_shape(c) for c in comps)
    return ChainReport(tuple(sorted(eqs)), tuple(dict.fromkeys(problems)), degrees, total, shape)


def chain_from_collineation(cc: CompleteCollineation) -> NodalChain:
    """U_j = {(x, y) : x in K_{j-1}, pi_{j-1}(y) = f_j(x)}; U_1 is the graph of f_1."""
    require_valid(cc)
    ctx = cc.ctx
    if sum(cc.ranks) != ctx.u:
        raise InvalidCollineation("stage ranks must sum to u to form a chain", ["rank-sum"])
    sp = ctx.split
    zero_v = (Fraction(0),) * ctx.dim_v
    comps = []
    kernels = cc.kernel_chain()
    images = cc.image_chain()
    for j, st in enumerate(cc.stages):
        k_prev, img = kernels[j], images[j]
        lifted = quotient_lift(img) @ st.map
        vecs = [tuple(k) + lifted.column(b) for b, k in enumerate(k_prev.vectors)]
        vecs += [zero_v + tuple(w) for w in img.vectors]
        comps.append(Subspace.span(vecs, sp.ambient, sp))
    return NodalChain(ctx, tuple(comps))


def collineation_from_chain(chain: NodalChain, flavor: Flavor | str = Flavor.GENERAL) -> CompleteCollineation:
    report = validate_chain(chain)
    if not report.ok:
        raise InvalidChain("invalid nodal chain", list(report.equations) + list(report.problems))
    ctx = chain.ctx
    sp = ctx.split
    stages = []
    domain = None
    for U in chain.components:
        U = U.with_split(sp)
        k_prev = restrict_v(project_v(U))
        img = restrict_w(cap_w(U))
        if domain is None:
            domain = k_prev
        v_part = RatMatrix.of([r[: ctx.dim_v] for r in U.vectors], cols=ctx.dim_v).T
        cols = []
        for k in k_prev.vectors:
            c = solve(v_part, k)
            y = [sum((ci * r[ctx.dim_v + i] for ci, r in zip(c, U.vectors)), Fraction(0)) for i in range(ctx.dim_w)]
            cols.append(y)
        f = quotient_projection(img) @ RatMatrix.from_columns(cols, ctx.dim_w)
        stages.append(Stage(f, restrict_v(cap_v(U)), f.rank()))
    cc = CompleteCollineation(ctx, domain, Flavor(flavor), tuple(stages))
    report = validate_collineation(cc)
    if not report.ok:
        raise InvalidCollineation("chain does not give a valid collineation", [v.clause for v in report.violations])
    return cc


def halphen_section_count(chain: NodalChain, k: int) -> int:
    """dim H^0 of O(k,k) on the cycle in PV x PW, glued one component at a time.

    Component j is P(p_V U_j) x P(p_W U_j); gluing from the last component
    back, each new one meets the previous in the product of the pairwise
    intersections of the factors.
    """
    sp = chain.ctx.split
    comps = [c.with_split(sp) for c in chain.components]
    factors = [(project_v(c), project_w(c)) for c in comps]
    shapes = [(a.dim - 1, b.dim - 1) for a, b in factors]
    overlaps = []
    for (a, b), (a2, b2) in zip(factors, factors[1:]):
        overlaps.append((meet(a, a2).dim - 1, meet(b, b2).dim - 1))
    overlaps.append(None)
    return identities.glued_section_count(shapes, overlaps, k)
