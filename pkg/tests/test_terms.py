import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bindalg.lam import LC, LCE, CLOSED_ID, lam_abs, lam_app, lam_flat
from bindalg.gen import random_term
from bindalg.terms import (
    ContextMismatch,
    Ext,
    Fin,
    LBoxed,
    LIdx,
    LNew,
    LOld,
    Node,
    TmOver,
    Var,
    compose_map,
    eta_wrap_map,
    id_map,
    leaf_is_wf,
    map_leaves,
    size,
    tabulate_map,
    term_eq,
    validate,
    weaken_map,
)


def test_id_map_examples():
    assert id_map(Fin(3)).apply(LIdx(1)) == LIdx(1)
    assert id_map(Ext(Fin(0))).apply(LNew()) == LNew()
    boxed = LBoxed(Var(LIdx(0)))
    assert id_map(TmOver(Fin(1))).apply(boxed) == boxed


def test_compose_with_identity_is_identity():
    h = weaken_map(Fin(2))
    g = compose_map(id_map(Ext(Fin(2))), h)
    for l in (LIdx(0), LIdx(1)):
        assert g.apply(l) == h.apply(l)


def test_compose_double_shift():
    tab = tabulate_map(Fin(1), Ext(Fin(1)), {LIdx(0): LOld(LIdx(0))})
    g = compose_map(weaken_map(Ext(Fin(1))), tab)
    assert g.apply(LIdx(0)) == LOld(LOld(LIdx(0)))


def test_compose_tabulated_involution():
    swap = {LIdx(0): LIdx(1), LIdx(1): LIdx(0)}
    tab = tabulate_map(Fin(2), Fin(2), swap)
    g = compose_map(tab, tab)
    assert g.apply(LIdx(0)) == LIdx(0)
    assert g.apply(LIdx(1)) == LIdx(1)


def test_compose_mismatch_raises():
    with pytest.raises(ContextMismatch):
        compose_map(weaken_map(Fin(1)), weaken_map(Fin(1)))


def test_weaken_map_examples():
    assert weaken_map(Fin(2)).apply(LIdx(1)) == LOld(LIdx(1))
    assert weaken_map(Ext(Fin(0))).apply(LNew()) == LOld(LNew())
    t = lam_app(Var(LIdx(0)), Var(LIdx(0)))
    mapped = map_leaves(LC, weaken_map(Fin(1)), t)
    assert mapped == lam_app(Var(LOld(LIdx(0))), Var(LOld(LIdx(0))))


def test_eta_wrap_map_examples():
    assert eta_wrap_map(Fin(1)).apply(LIdx(0)) == LBoxed(Var(LIdx(0)))


def test_leaf_is_wf_examples():
    assert not leaf_is_wf(LIdx(2), Fin(2), LC)
    assert leaf_is_wf(LNew(), Ext(Fin(0)), LC)
    assert leaf_is_wf(LBoxed(Var(LIdx(0))), TmOver(Fin(1)), LC)
    assert not leaf_is_wf(LBoxed(Var(LIdx(0))), TmOver(Fin(0)), LC)


def test_validate_examples():
    assert validate(LC, Fin(1), CLOSED_ID)
    assert not validate(LC, Fin(0), Var(LIdx(0)))
    assert validate(LCE, Fin(0), lam_flat(Var(LBoxed(CLOSED_ID))))
    # flattening node is not valid in the plain signature
    assert not validate(LC, Fin(0), lam_flat(Var(LBoxed(CLOSED_ID))))


def test_map_leaves_under_binder():
    t = lam_app(Var(LIdx(0)), lam_abs(Var(LNew())))
    mapped = map_leaves(LC, weaken_map(Fin(1)), t)
    assert mapped == lam_app(Var(LOld(LIdx(0))), lam_abs(Var(LNew())))


def test_map_leaves_flattening_transport():
    t = lam_flat(Var(LBoxed(Var(LIdx(0)))))
    mapped = map_leaves(LCE, weaken_map(Fin(1)), t)
    assert mapped == lam_flat(Var(LBoxed(Var(LOld(LIdx(0))))))


def test_size_examples():
    assert size(Var(LIdx(0))) == 1
    assert size(lam_flat(Var(LBoxed(Var(LIdx(0)))))) == 3
    assert size(CLOSED_ID) == 2
    assert term_eq(CLOSED_ID, CLOSED_ID)


def _random_renaming(rng, n, m):
    return tabulate_map(Fin(n), Fin(m),
                        {LIdx(i): LIdx(rng.randrange(m)) for i in range(n)})


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), budget=st.integers(0, 18))
def test_functor_identity_law(seed, budget):
    t = random_term(LCE, Fin(2), budget, seed)
    assert map_leaves(LCE, id_map(Fin(2)), t) == t


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_functor_composition_law(seed):
    rng = random.Random(seed)
    n, m, k = 2, rng.randrange(1, 4), rng.randrange(1, 4)
    h = _random_renaming(rng, n, m)
    g = _random_renaming(rng, m, k)
    t = random_term(LCE, Fin(n), 15, rng.randrange(2**32))
    assert map_leaves(LCE, compose_map(g, h), t) == \
        map_leaves(LCE, g, map_leaves(LCE, h, t))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_validity_preserved_by_map_leaves(seed):
    rng = random.Random(seed)
    g = _random_renaming(rng, 2, rng.randrange(1, 4))
    t = random_term(LCE, Fin(2), 15, rng.randrange(2**32))
    assert validate(LCE, g.target, map_leaves(LCE, g, t))
