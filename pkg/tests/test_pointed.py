"""Pointed transformer laws: functoriality, point naturality, strictness of
composition, and the distributor/strength behavior forced by them."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bindalg.lam import LC, LCE, CLOSED_ID, lam_abs, lam_app
from bindalg.gen import random_term, sample_leaf
from bindalg.pointed import (
    ComposePE,
    ExtZ,
    IdZ,
    TmZ,
    const_closed,
    dist_map,
    eta_morphism,
    identity_on_terms,
    strength_binding,
    strength_flat,
)
from bindalg.terms import (
    Ext,
    Fin,
    LBoxed,
    LIdx,
    LNew,
    LOld,
    ScopeError,
    TmOver,
    Var,
    compose_map,
    id_map,
    map_leaves,
    tabulate_map,
)

ALL_Z = [IdZ(), ExtZ(), TmZ(LCE), ComposePE(TmZ(LCE), ExtZ())]


def test_dist_map_identity_transformer():
    d = dist_map(IdZ(), Fin(2), 1)
    for l in (LNew(), LOld(LIdx(0)), LOld(LIdx(1))):
        assert d.apply(l) == l


def test_dist_map_boxed_transformer():
    d = dist_map(TmZ(LCE), Fin(1), 1)
    assert d.apply(LNew()) == LBoxed(Var(LNew()))
    assert d.apply(LOld(LBoxed(Var(LIdx(0))))) == LBoxed(Var(LOld(LIdx(0))))


def test_dist_map_zero_is_identity():
    d = dist_map(ExtZ(), Fin(2), 0)
    assert d.apply(LIdx(1)) == LIdx(1)


def test_strength_binding_examples():
    args = (Var(LBoxed(Var(LIdx(0)))), Var(LBoxed(CLOSED_ID)))
    assert strength_binding(LCE, (0, 0), TmZ(LCE), args, Fin(1)) == args

    out, = strength_binding(LCE, (1,), TmZ(LCE), (Var(LNew()),), Fin(0))
    assert out == Var(LBoxed(Var(LNew())))

    out, = strength_binding(LCE, (1,), TmZ(LCE),
                            (Var(LOld(LBoxed(Var(LIdx(0))))),), Fin(1))
    assert out == Var(LBoxed(Var(LOld(LIdx(0)))))


def test_strength_flat_examples():
    u = Var(LBoxed(CLOSED_ID))
    assert strength_flat(LCE, IdZ(), u, Fin(0)) == u

    t = Var(LBoxed(Var(LBoxed(CLOSED_ID))))
    assert strength_flat(LCE, TmZ(LCE), Var(LBoxed(CLOSED_ID)), Fin(0)) == t

    u2 = Var(LBoxed(Var(LOld(LIdx(0)))))
    out = strength_flat(LCE, ExtZ(), u2, Fin(1))
    assert out == Var(LOld(LBoxed(Var(LOld(LIdx(0))))))


def test_compose_strictness():
    for z1 in ALL_Z:
        for z2 in ALL_Z:
            zz = ComposePE(z1, z2)
            for c in (Fin(0), Fin(2), Ext(Fin(1)), TmOver(Fin(1))):
                assert zz.on_ctx(c) == z1.on_ctx(z2.on_ctx(c))


def _random_renaming(rng, n, m):
    return tabulate_map(Fin(n), Fin(m),
                        {LIdx(i): LIdx(rng.randrange(m)) for i in range(n)})


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), zi=st.integers(0, len(ALL_Z) - 1))
def test_transformer_functor_laws(seed, zi):
    rng = random.Random(seed)
    Z = ALL_Z[zi]
    n, m, k = 2, rng.randrange(1, 4), rng.randrange(1, 4)
    h = _random_renaming(rng, n, m)
    g = _random_renaming(rng, m, k)
    l = sample_leaf(LCE, Z.on_ctx(Fin(n)), rng)
    assert Z.on_map(id_map(Fin(n))).apply(l) == l
    assert Z.on_map(compose_map(g, h)).apply(l) == \
        compose_map(Z.on_map(g), Z.on_map(h)).apply(l)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), zi=st.integers(0, len(ALL_Z) - 1))
def test_point_naturality(seed, zi):
    rng = random.Random(seed)
    Z = ALL_Z[zi]
    n, m = 2, rng.randrange(1, 4)
    g = _random_renaming(rng, n, m)
    l = LIdx(rng.randrange(n))
    assert Z.on_map(g).apply(Z.point(Fin(n)).apply(l)) == \
        Z.point(Fin(m)).apply(g.apply(l))


@pytest.mark.parametrize("f", [identity_on_terms(LCE), eta_morphism(),
                               const_closed(CLOSED_ID)],
                         ids=lambda f: f.name)
def test_morphism_pointedness(f):
    rng = random.Random(0)
    for c in (Fin(1), Fin(3), Ext(Fin(1))):
        for _ in range(40):
            l = sample_leaf(LCE, c, rng)
            assert f.component(c, f.Z.point(c).apply(l)) == Var(l)


@pytest.mark.parametrize("f", [identity_on_terms(LCE), eta_morphism(),
                               const_closed(CLOSED_ID)],
                         ids=lambda f: f.name)
def test_morphism_naturality(f):
    rng = random.Random(1)
    for _ in range(60):
        n, m = 2, rng.randrange(1, 4)
        g = _random_renaming(rng, n, m)
        l = sample_leaf(LCE, f.Z.on_ctx(Fin(n)), rng)
        left = map_leaves(LCE, g, f.component(Fin(n), l))
        right = f.component(Fin(m), f.Z.on_map(g).apply(l))
        assert left == right


def test_unbox_rejects_plain_leaf():
    f = identity_on_terms(LCE)
    with pytest.raises(ScopeError):
        f.component(Fin(1), LIdx(0))


def test_const_closed_rejects_bad_leaf():
    f = const_closed(CLOSED_ID)
    with pytest.raises(ScopeError):
        f.component(Fin(1), LIdx(0))
