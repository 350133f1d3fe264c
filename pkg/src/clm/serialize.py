"""Canonical JSON encoding of every domain value and report.

Rationals are written as reduced ``"p/q"`` (or ``"n"``) strings and keys are
sorted, so ``dumps(encode(decode(dumps(x))))`` reproduces the same bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from clm.chains import ChainReport, NodalChain
from clm.collineation import CollineationReport, CompleteCollineation, FlagPair, Flavor, Stage, Violation
from clm.degeneration import PolyMatrix, SmithProfile
from clm.errors import CLMError
from clm.forms import IsotropyReport
from clm.identities import IdentityResult, SeriesIdentityResult
from clm.linalg import RatMatrix, Split, SplitContext, Subspace, rat_str, to_rat
from clm.stability import Chamber, DimReport, StabilityReport, WallDims, WeightSupport


class ParseError(CLMError):
    kind = "parse"


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


def _get(d: dict, key: str):
    if not isinstance(d, dict):
        raise ParseError(f"expected an object with key {key!r}")
    if key not in d:
        raise ParseError(f"missing key {key!r}")
    return d[key]


def _rat(x) -> Fraction:
    try:
        return to_rat(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {x!r}") from exc


# --- linear algebra --------------------------------------------------------


def matrix_to_json(m: RatMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[rat_str(x) for x in r] for r in m.data]}


def matrix_from_json(d: dict) -> RatMatrix:
    rows, cols = int(_get(d, "rows")), int(_get(d, "cols"))
    entries = _get(d, "entries")
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ParseError(f"entries do not form a {rows}x{cols} matrix")
    return RatMatrix.of([[_rat(x) for x in r] for r in entries], cols=cols)


def split_to_json(sp: Split | None):
    return None if sp is None else {"dim_v": sp.dim_v, "dim_w": sp.dim_w}


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient": s.ambient, "basis": matrix_to_json(s.basis), "split": split_to_json(s.split)}


def subspace_from_json(d: dict) -> Subspace:
    ambient = int(_get(d, "ambient"))
    basis = matrix_from_json(_get(d, "basis"))
    if basis.cols != ambient:
        raise ParseError("basis width differs from ambient dimension")
    sp = d.get("split")
    split = None if sp is None else Split(int(_get(sp, "dim_v")), int(_get(sp, "dim_w")))
    return Subspace.span(basis.data, ambient, split)


def ctx_to_json(ctx: SplitContext) -> dict:
    return {"dim_v": ctx.dim_v, "dim_w": ctx.dim_w, "u": ctx.u}


def ctx_from_json(d: dict) -> SplitContext:
    return SplitContext(int(_get(d, "dim_v")), int(_get(d, "dim_w")), int(_get(d, "u")))


def polymatrix_to_json(p: PolyMatrix) -> dict:
    return {"rows": p.rows, "cols": p.cols, "entries": [[[rat_str(c) for c in q] for q in r] for r in p.entries]}


def polymatrix_from_json(d: dict) -> PolyMatrix:
    rows, cols = int(_get(d, "rows")), int(_get(d, "cols"))
    entries = _get(d, "entries")
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ParseError(f"entries do not form a {rows}x{cols} matrix")
    return PolyMatrix.of([[[_rat(c) for c in q] for q in r] for r in entries], cols=cols)


def smith_to_json(s: SmithProfile) -> dict:
    return {"exponents": list(s.exponents), "generic_rank": s.generic_rank}


# --- collineations and chains ---------------------------------------------


def cc_to_json(cc: CompleteCollineation) -> dict:
    return {
        "ctx": ctx_to_json(cc.ctx),
        "flavor": cc.flavor.value,
        "domain": subspace_to_json(cc.domain),
        "stages": [{"map": matrix_to_json(s.map), "kernel": subspace_to_json(s.kernel), "rank": s.rank} for s in cc.stages],
    }


def cc_from_json(d: dict) -> CompleteCollineation:
    try:
        flavor = Flavor(_get(d, "flavor"))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    stages = tuple(
        Stage(matrix_from_json(_get(s, "map")), subspace_from_json(_get(s, "kernel")), int(_get(s, "rank")))
        for s in _get(d, "stages")
    )
    return CompleteCollineation(ctx_from_json(_get(d, "ctx")), subspace_from_json(_get(d, "domain")), flavor, stages)


def chain_to_json(c: NodalChain) -> dict:
    return {"ctx": ctx_to_json(c.ctx), "components": [subspace_to_json(s) for s in c.components]}


def chain_from_json(d: dict) -> NodalChain:
    ctx = ctx_from_json(_get(d, "ctx"))
    comps = tuple(subspace_from_json(s).with_split(ctx.split) for s in _get(d, "components"))
    return NodalChain(ctx, comps)


def cc_report_to_json(r: CollineationReport) -> dict:
    return {"valid": r.ok, "violations": [{"clause": v.clause, "stage": v.stage} for v in r.violations]}


def cc_report_from_json(d: dict) -> CollineationReport:
    return CollineationReport(tuple(Violation(v["clause"], v.get("stage")) for v in _get(d, "violations")))


def chain_report_to_json(r: ChainReport) -> dict:
    return {
        "valid": r.ok,
        "violations": list(r.equations),
        "problems": list(r.problems),
        "degrees": list(r.degrees),
        "total_degree": r.total_degree,
        "shape": [list(s) for s in r.shape],
    }


def chain_report_from_json(d: dict) -> ChainReport:
    return ChainReport(
        tuple(_get(d, "violations")),
        tuple(_get(d, "problems")),
        tuple(_get(d, "degrees")),
        _get(d, "total_degree"),
        tuple(tuple(s) for s in _get(d, "shape")),
    )


def flags_to_json(fp: FlagPair, is_halphen: bool) -> dict:
    return {
        "v_flag": [subspace_to_json(s) for s in fp.v_flag],
        "w_flag": [subspace_to_json(s) for s in fp.w_flag],
        "is_halphen": is_halphen,
    }


# --- stability ------------------------------------------------------------


def stability_to_json(r: StabilityReport) -> dict:
    graded = None if r.graded_object is None else [subspace_to_json(s) for s in r.graded_object]
    return {
        "sigma": rat_str(r.sigma),
        "status": r.status,
        "u": r.u,
        "dim_u_cap_v": r.dim_u_cap_v,
        "dim_u_cap_w": r.dim_u_cap_w,
        "semistable_interval": list(r.semistable_interval),
        "graded_object": graded,
    }


def stability_from_json(d: dict) -> StabilityReport:
    g = d.get("graded_object")
    graded = None if g is None else tuple(subspace_from_json(s) for s in g)
    return StabilityReport(
        _rat(_get(d, "sigma")),
        _get(d, "status"),
        _get(d, "u"),
        _get(d, "dim_u_cap_v"),
        _get(d, "dim_u_cap_w"),
        tuple(_get(d, "semistable_interval")),
        graded,
    )


def weights_to_json(w: WeightSupport) -> dict:
    return {"u": w.u, "weights": list(w.weights), "orbit_degree": w.orbit_degree}


def weights_from_json(d: dict) -> WeightSupport:
    return WeightSupport(_get(d, "u"), tuple(_get(d, "weights")), _get(d, "orbit_degree"))


def dims_to_json(r: DimReport) -> dict:
    return {
        "ctx": ctx_to_json(r.ctx),
        "flavor": r.flavor.value,
        "dim_quotient": r.dim_quotient,
        "walls": list(r.walls),
        "wall_dims": [{"k": w.k, "z0": w.z0, "z_minus": w.z_minus, "z_plus": w.z_plus} for w in r.wall_dims],
        "secant_dims": [{"k": k, "dim": d} for k, d in r.secant_dims],
        "dim_via_v_end": r.dim_via_v_end,
        "dim_via_w_end": r.dim_via_w_end,
        "chambers": [{"lo": c.lo, "hi": c.hi, "label": c.label} for c in r.chambers],
        "flavor_dim_quotient": r.flavor_dim_quotient,
    }


def dims_from_json(d: dict) -> DimReport:
    return DimReport(
        ctx=ctx_from_json(_get(d, "ctx")),
        flavor=Flavor(_get(d, "flavor")),
        dim_quotient=_get(d, "dim_quotient"),
        walls=tuple(_get(d, "walls")),
        wall_dims=tuple(WallDims(w["k"], w["z0"], w["z_minus"], w["z_plus"]) for w in _get(d, "wall_dims")),
        secant_dims=tuple((s["k"], s["dim"]) for s in _get(d, "secant_dims")),
        dim_via_v_end=_get(d, "dim_via_v_end"),
        dim_via_w_end=_get(d, "dim_via_w_end"),
        chambers=tuple(Chamber(c["lo"], c["hi"], c["label"]) for c in _get(d, "chambers")),
        flavor_dim_quotient=d.get("flavor_dim_quotient"),
    )


# --- forms and identities --------------------------------------------------


def isotropy_to_json(r: IsotropyReport) -> dict:
    return {
        "isotropic": r.isotropic,
        "maximal": r.maximal,
        "dim_u_cap_v": r.dim_u_cap_v,
        "v_intersection_parity": r.v_intersection_parity,
        "in_ogr_plus": r.in_ogr_plus,
    }


def isotropy_from_json(d: dict) -> IsotropyReport:
    return IsotropyReport(
        _get(d, "isotropic"), _get(d, "maximal"), _get(d, "dim_u_cap_v"), _get(d, "v_intersection_parity"), _get(d, "in_ogr_plus")
    )


def identity_to_json(r: IdentityResult) -> dict:
    return {"u": r.u, "k": r.k, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal}


def identity_from_json(d: dict) -> IdentityResult:
    return IdentityResult(_get(d, "lhs"), _get(d, "rhs"), _get(d, "u"), _get(d, "k"))


def series_to_json(r: SeriesIdentityResult) -> dict:
    return {"j": r.j, "k": r.k, "order": r.order, "lhs": list(r.lhs), "rhs": list(r.rhs), "equal": r.equal}


def series_from_json(d: dict) -> SeriesIdentityResult:
    return SeriesIdentityResult(tuple(_get(d, "lhs")), tuple(_get(d, "rhs")), _get(d, "order"), d.get("j"), d.get("k"))
