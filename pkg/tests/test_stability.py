import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clm import sampling
from clm.collineation import Flavor
from clm.errors import DimensionMismatch, FlavorMismatch
from clm.linalg import Split, SplitContext, Subspace
from clm.stability import (
    SEMISTABLE,
    STABLE,
    UNSTABLE,
    classify,
    dims_report,
    end_point_dims,
    orbit_degree,
    plucker_weight_support,
    recursive_fiber_dims,
    semistable_oracle_equivalence,
)

import oracles

SP = Split(2, 2)


def sub(rows, sp=SP):
    return Subspace.span(rows, sp.ambient, sp)


GRAPH_ID = sub([[1, 0, 1, 0], [0, 1, 0, 1]])
V = sub([[1, 0, 0, 0], [0, 1, 0, 0]])
E1F1 = sub([[1, 0, 0, 0], [0, 0, 1, 0]])


def test_classify_examples():
    r = classify(GRAPH_ID, 1)
    assert r.status == STABLE and r.semistable_interval == (0, 2)
    r = classify(V, 1)
    assert r.status == UNSTABLE
    assert classify(V, 0).status == SEMISTABLE
    assert [s for s in (Fraction(k, 2) for k in range(-2, 7)) if classify(V, s).semistable] == [0]
    r = classify(E1F1, 1)
    assert r.status == SEMISTABLE
    # the decomposable fixed point is its own graded object
    assert r.graded_object is not None
    assert Subspace.span(r.graded_object[0].vectors + r.graded_object[1].vectors, 4, SP) == E1F1


def test_classify_requires_u():
    with pytest.raises(DimensionMismatch):
        classify(GRAPH_ID, 1, u=3)
    with pytest.raises(DimensionMismatch):
        classify(Subspace.span([[1, 0]], 2), 0)


def test_weight_examples():
    ws = plucker_weight_support(E1F1)
    assert ws.weights == (0,) and ws.orbit_degree == 0
    ws = plucker_weight_support(GRAPH_ID)
    assert ws.weights == (-2, 0, 2) and ws.orbit_degree == 2
    line = Subspace.span([[1, 0, 1, 0]], 4, SP)
    ws = plucker_weight_support(line)
    assert ws.weights == (-1, 1) and ws.orbit_degree == 1
    ok = [s for s in (Fraction(k, 4) for k in range(-8, 12)) if ws.oracle_status(s) != UNSTABLE]
    assert min(ok) == 0 and max(ok) == 1


def test_weights_against_independent_pluecker():
    rng = random.Random(9)
    for _ in range(40):
        U = sampling.subspace(rng, 3, 3, rng.randint(1, 3))
        p = oracles.plucker(U.vectors, 6)
        weights = sorted({2 * sum(1 for c in I if c < 3) - U.dim for I in p})
        assert list(plucker_weight_support(U).weights) == weights


def test_fixed_points_on_walls():
    for dv, dw, u in ((2, 2, 2), (3, 3, 3), (3, 2, 2)):
        sp = Split(dv, dw)
        for k in range(u + 1):
            if u - k > dv or k > dw:
                continue
            rows = [[int(i == c) for i in range(dv + dw)] for c in list(range(u - k)) + list(range(dv, dv + k))]
            U = Subspace.span(rows, dv + dw, sp)
            assert classify(U, k).status == SEMISTABLE
            assert plucker_weight_support(U).oracle_status(k) == SEMISTABLE
            assert orbit_degree(U) == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000), st.fractions(min_value=-1, max_value=3, max_denominator=6))
def test_oracle_equivalence_property(seed, sigma):
    rng = random.Random(seed)
    U = sampling.subspace(rng, 3, 3, 2)
    assert semistable_oracle_equivalence(U, sigma)


def test_dims_examples():
    r = dims_report(SplitContext(2, 2, 2))
    assert r.dim_quotient == 3
    assert (r.wall_dims[0].z0, r.wall_dims[0].z_minus) == (2, 2)
    assert dict(r.secant_dims)[1] == 2
    r = dims_report(SplitContext(3, 2, 2))
    assert r.dim_quotient == 5 == 2 + 3
    r = dims_report(SplitContext(3, 4, 1))
    assert r.wall_dims == () and r.walls == (0, 1)
    assert [c.lo for c in r.chambers] == [0]
    assert end_point_dims(SplitContext(3, 4, 1)) == (2, 3)


def test_dims_flavors():
    r = dims_report(SplitContext(3, 3, 3), Flavor.SKEW)
    assert r.walls == (0, 2)
    assert [(c.lo, c.hi) for c in r.chambers] == [(0, 2), (2, 3)]
    assert r.flavor_dim_quotient == 2
    assert dims_report(SplitContext(3, 3, 3), "symmetric").flavor_dim_quotient == 5
    assert dims_report(SplitContext(4, 4, 4), Flavor.SKEW).walls == (0, 2, 4)
    with pytest.raises(FlavorMismatch):
        dims_report(SplitContext(3, 2, 2), Flavor.SYMMETRIC)


def test_recursive_fibers():
    for dv, dw, u in ((2, 2, 2), (4, 3, 3), (5, 5, 3)):
        ctx = SplitContext(dv, dw, u)
        for fc in recursive_fiber_dims(ctx):
            assert fc.total == fc.dim_quotient - (u - fc.k) * (dw - fc.k)
        # k = u: the open stratum with U n V = 0 has full dimension
        assert recursive_fiber_dims(ctx)[-1].total == dims_report(ctx).dim_quotient
