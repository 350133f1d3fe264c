import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clm import sampling
from clm.collineation import (
    CompleteCollineation,
    Flavor,
    Stage,
    flags,
    halphen_degeneration,
    halphen_family,
    limit_collineation,
    limit_quadric,
    limit_skew,
    validate_collineation,
)
from clm.degeneration import PolyMatrix, local_smith_exponents, minor_valuation
from clm.errors import DegenerateFamily, DimensionMismatch, FlavorMismatch, SingularMatrix, ZeroFamily
from clm.linalg import RatMatrix, SplitContext, Subspace

T = [0, 1]
J = [[0, 1], [-1, 0]]


def test_constant_invertible_single_stage():
    a = RatMatrix.of([[1, 2], [3, 5]])
    cc = limit_collineation(PolyMatrix.constant(a))
    assert cc.ranks == (2,)
    assert cc.stages[0].map == a
    assert cc.stages[0].kernel.dim == 0


def test_diag_one_t():
    cc = limit_collineation(PolyMatrix.of([[1, 0], [0, T]]))
    assert cc.ranks == (1, 1)
    assert cc.stages[0].map == RatMatrix.of([[1, 0], [0, 0]])
    assert cc.stages[0].kernel.vectors == ((0, 1),)
    # <e2> -> W/<f1> = <f2>, the unit map
    assert cc.stages[1].map == RatMatrix.of([[1]])


def test_hidden_degeneration_uses_corrected_kernel():
    # rank 1 everywhere: the naive constant-kernel restriction would give a second stage
    p = PolyMatrix.of([[1, T], [T, [0, 0, 1]]])
    assert local_smith_exponents(p).generic_rank == 1
    with pytest.raises(DegenerateFamily):
        limit_collineation(p)


def test_validate_examples():
    good = limit_collineation(PolyMatrix.of([[1, 0], [0, T]]))
    assert validate_collineation(good).ok
    single = limit_collineation(PolyMatrix.constant(RatMatrix.identity(3)))
    assert validate_collineation(single).ok

    k1 = good.stages[0].kernel
    zero = Stage(RatMatrix.zeros(1, 1), k1, 0)
    bad = replace(good, stages=(good.stages[0], zero, good.stages[1]))
    assert validate_collineation(bad).clauses() == {"nonzero-stage"}

    rank_one = RatMatrix.of([[1, 0, 0, 0]] + [[0] * 4] * 3)
    ctx = SplitContext(4, 4, 4)
    skew = CompleteCollineation(ctx, Subspace.full(4), Flavor.SKEW, (Stage(rank_one, Subspace.span([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 4), 1),))
    assert "skew-even-rank" in validate_collineation(skew).clauses()


def test_validate_reports_rank_and_kernel():
    good = limit_collineation(PolyMatrix.of([[1, 0], [0, T]]))
    wrong_rank = replace(good, stages=(replace(good.stages[0], rank=2), good.stages[1]))
    assert "rank" in validate_collineation(wrong_rank).clauses()
    wrong_ker = replace(good, stages=(replace(good.stages[0], kernel=Subspace.span([[1, 0]], 2)), good.stages[1]))
    assert "kernel" in validate_collineation(wrong_ker).clauses()
    truncated = replace(good, stages=good.stages[:1])
    assert "maximal-rank" in validate_collineation(truncated).clauses()


def test_flags_examples():
    single = limit_collineation(PolyMatrix.constant(RatMatrix.of([[1, 1], [0, 1]])))
    assert flags(single)[1] is False
    rng = random.Random(3)
    cc = sampling.collineation(rng, SplitContext(3, 3, 3), [2, 1])
    fp, halphen = flags(cc)
    assert [s.dim for s in fp.v_flag] == [1, 0]
    assert [s.dim for s in fp.w_flag] == [2, 3]
    assert halphen is False
    assert flags(sampling.collineation(rng, SplitContext(4, 4, 4), [1, 1, 1, 1]))[1] is True


def test_halphen_examples():
    assert halphen_degeneration(RatMatrix.of([[5]])).ranks == (1,)
    a = RatMatrix.of([[1, 1], [1, 2]])
    fam = halphen_family(a)
    assert local_smith_exponents(fam).exponents == (0, 2)
    cc = halphen_degeneration(a)
    assert cc.ranks == (1, 1)
    assert flags(cc)[1]
    b = RatMatrix.of([[2, 1, 0], [1, 3, 1], [4, 0, 1]])
    fam = halphen_family(b)
    # distinct invariant-factor orders, read from the minors
    assert [minor_valuation(fam, i) for i in (1, 2, 3)] == [0, 2, 6]
    assert halphen_degeneration(b).ranks == (1, 1, 1)


def test_halphen_errors():
    with pytest.raises(SingularMatrix):
        halphen_degeneration(RatMatrix.of([[1, 2], [2, 4]]))
    with pytest.raises(DimensionMismatch):
        halphen_degeneration(RatMatrix.of([[1, 2]]))
    # leading minor zero: the stage structure is no longer all rank one
    assert halphen_degeneration(RatMatrix.of([[0, 1], [1, 0]])).ranks != (1, 1)


def test_flavored_examples():
    q = limit_quadric(PolyMatrix.of([[1, 0, 0], [0, T, 0], [0, 0, T]]))
    assert q.ranks == (1, 2)
    f2 = q.stages[1].map
    assert f2 == f2.T
    skew = PolyMatrix.of([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, T], [0, 0, [0, -1], 0]])
    assert limit_skew(skew).ranks == (2, 2)
    s3 = limit_skew(PolyMatrix.of([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    assert s3.ranks == (2,)
    assert s3.stages[0].kernel.dim == 1
    assert validate_collineation(s3).ok


def test_family_errors():
    with pytest.raises(ZeroFamily):
        limit_collineation(PolyMatrix.of([[0, 0], [0, 0]]))
    with pytest.raises(DimensionMismatch):
        limit_collineation(PolyMatrix.of([[1, 0]]), SplitContext(2, 2, 2))
    with pytest.raises(FlavorMismatch):
        limit_quadric(PolyMatrix.of([[1, 2], [0, 1]]))
    with pytest.raises(FlavorMismatch):
        limit_skew(PolyMatrix.of([[1, 0], [0, 1]]))
    with pytest.raises(DegenerateFamily):
        limit_collineation(PolyMatrix.of([[1, 1], [1, 1]]))


def test_custom_domain():
    ctx = SplitContext(3, 2, 2)
    dom = Subspace.span([[1, 1, 0], [0, 0, 1]], 3)
    cc = limit_collineation(PolyMatrix.of([[1, 0], [0, T]]), ctx, domain=dom)
    assert cc.domain == dom
    assert cc.stages[0].kernel.vectors == ((0, 0, 1),)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_chains_are_strict(seed):
    rng = random.Random(seed)
    u = rng.randint(1, 4)
    ctx = SplitContext(rng.randint(u, u + 2), rng.randint(u, u + 2), u)
    cc = sampling.collineation(rng, ctx)
    assert validate_collineation(cc).ok
    assert sum(cc.ranks) == u
    ks = [k.dim for k in cc.kernel_chain()]
    assert ks == sorted(ks, reverse=True) and len(set(ks)) == len(ks) and ks[-1] == 0
    imgs = [i.dim for i in cc.image_chain()]
    assert imgs == sorted(imgs) and len(set(imgs)) == len(imgs) and imgs[-1] == u
    assert cc.same_point(replace(cc, stages=tuple(replace(s, map=s.map.scale(-3)) for s in cc.stages)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_limit_is_basis_equivariant(seed):
    """Changing coordinates in W by a constant g moves every image flag by g."""
    rng = random.Random(seed)
    u = rng.randint(1, 3)
    p = sampling.full_rank_family(rng, u, u, 2)
    g = sampling.invertible(rng, u)
    a = limit_collineation(p)
    b = limit_collineation(p.left_mul(g))
    assert a.ranks == b.ranks
    assert [k for k in a.kernel_chain()] == [k for k in b.kernel_chain()]
    for ia, ib in zip(a.image_chain(), b.image_chain()):
        assert Subspace.span([g.apply(v) for v in ia.vectors], u) == ib
