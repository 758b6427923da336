"""Bracket, multiplication, and parallel substitution against frozen
examples and the independent index-based oracle."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bindalg.lam import LC, LCE, CLOSED_ID, lam_abs, lam_app, lam_flat
from bindalg.gen import random_term
from bindalg.hss import (
    InitialSystem,
    SubstRule,
    bracket,
    bracket_flat_composite,
    bracket_via_gfold,
    mu,
    subst,
    subst1,
)
from bindalg.oracle import naive_subst
from bindalg.pointed import const_closed, eta_morphism, identity_on_terms
from bindalg.terms import (
    Ext,
    Fin,
    LBoxed,
    LIdx,
    LNew,
    LOld,
    Node,
    ScopeError,
    TmOver,
    Var,
)


def test_bracket_unboxes_variables():
    f = identity_on_terms(LCE)
    u = lam_app(Var(LIdx(0)), CLOSED_ID)
    assert bracket(LCE, f, Var(LBoxed(u)), Fin(1)) == u


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(0, 3))
def test_bracket_at_eta_is_identity(seed, n):
    t = random_term(LCE, Fin(n), 15, seed)
    assert bracket(LCE, eta_morphism(), t, Fin(n)) == t


def test_bracket_const_closed_example():
    f = const_closed(CLOSED_ID)
    t = lam_app(Var(LNew()), Var(LOld(LIdx(0))))
    assert bracket(LCE, f, t, Fin(1)) == lam_app(CLOSED_ID, Var(LIdx(0)))


def test_mu_examples():
    u = lam_app(Var(LIdx(0)), Var(LIdx(0)))
    assert mu(LC, Var(LBoxed(u)), Fin(1)) == u

    from bindalg.terms import eta_wrap_map, map_leaves

    assert mu(LC, map_leaves(LC, eta_wrap_map(Fin(1)), u), Fin(1)) == u

    t = lam_app(Var(LBoxed(CLOSED_ID)), Var(LBoxed(Var(LIdx(0)))))
    assert mu(LC, t, Fin(1)) == lam_app(CLOSED_ID, Var(LIdx(0)))


def test_subst_examples():
    t = lam_app(Var(LIdx(0)), Var(LIdx(1)))
    rule = SubstRule.from_mapping(Fin(2), Fin(2), {LIdx(0): CLOSED_ID})
    assert subst(LC, rule, t) == lam_app(CLOSED_ID, Var(LIdx(1)))

    ident = SubstRule.from_mapping(Fin(2), Fin(2), {})
    assert subst(LC, ident, t) == t

    under = lam_abs(lam_app(Var(LOld(LIdx(0))), Var(LNew())))
    rule1 = SubstRule.from_mapping(Fin(1), Fin(1), {LIdx(0): CLOSED_ID})
    assert subst(LC, rule1, under) == lam_abs(lam_app(CLOSED_ID, Var(LNew())))


def test_subst1_examples():
    assert subst1(LC, Var(LNew()), CLOSED_ID, Fin(0)) == CLOSED_ID
    assert subst1(LC, Var(LOld(LIdx(0))), CLOSED_ID, Fin(1)) == Var(LIdx(0))
    redex = lam_app(Var(LNew()), Var(LNew()))
    assert subst1(LC, redex, CLOSED_ID, Fin(0)) == lam_app(CLOSED_ID, CLOSED_ID)


def test_subst_rule_requires_enumerable_source():
    with pytest.raises(ScopeError):
        SubstRule.from_mapping(TmOver(Fin(1)), Fin(1), {})


def test_subst_rule_lookup_outside_source():
    rule = SubstRule.from_mapping(Fin(1), Fin(1), {})
    with pytest.raises(ScopeError):
        rule.lookup(LIdx(4))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_subst_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randrange(1, 4)
    m = rng.randrange(1, 4)
    t = random_term(LCE, Fin(n), 18, rng.randrange(2**32))
    entries = [random_term(LC, Fin(m), 6, rng.randrange(2**32)) for _ in range(n)]
    rule = SubstRule.from_mapping(
        Fin(n), Fin(m), {LIdx(i): e for i, e in enumerate(entries)})
    assert subst(LCE, rule, t) == naive_subst(t, entries, n, m)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_flattening_clause_matches_unsimplified_composite(seed):
    # the simplified flattening clause of bracket against tau . H{f} . theta
    rng = random.Random(seed)
    c = Fin(rng.randrange(0, 3))
    for f in (identity_on_terms(LCE), eta_morphism(), const_closed(CLOSED_ID)):
        u = random_term(LCE, TmOver(f.Z.on_ctx(c)), 10, rng.randrange(2**32))
        simplified = bracket(LCE, f, lam_flat(u), c)
        composite = Node(2, (bracket_flat_composite(LCE, f, u, c),))
        assert simplified == composite


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_bracket_via_gfold_agrees(seed):
    rng = random.Random(seed)
    c = Fin(rng.randrange(0, 4))
    for f in (identity_on_terms(LCE), eta_morphism(), const_closed(CLOSED_ID)):
        t = random_term(LCE, f.Z.on_ctx(c), 14, rng.randrange(2**32))
        assert bracket_via_gfold(LCE, f, t, c) == bracket(LCE, f, t, c)


def test_initial_system_surface():
    system = InitialSystem(LC)
    assert system.tau(0, (Var(LIdx(0)), Var(LIdx(1))), Fin(2)) == \
        lam_app(Var(LIdx(0)), Var(LIdx(1)))
    t = Var(LBoxed(CLOSED_ID))
    assert system.mu(t, Fin(0)) == CLOSED_ID
