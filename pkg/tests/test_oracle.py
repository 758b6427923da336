"""The index-arithmetic oracle in isolation: hand-computed shifts and
substitutions, and the round-trip with the shared term form."""
import pytest

from bindalg.lam import LC, LCE, CLOSED_ID, lam_abs, lam_app, lam_flat
from bindalg.gen import random_term
from bindalg.oracle import (
    IAbs,
    IApp,
    IFlat,
    IVar,
    from_term,
    iflatten,
    msubst,
    naive_flatten,
    shift,
    to_term,
)
from bindalg.terms import Fin, LBoxed, LIdx, LNew, LOld, ScopeError, Var


def test_shift_textbook_cases():
    assert shift(IVar(0), 2) == IVar(2)
    assert shift(IAbs(IVar(0)), 2) == IAbs(IVar(0))
    assert shift(IAbs(IVar(1)), 2) == IAbs(IVar(3))
    assert shift(IApp(IVar(0), IVar(1)), 1, cutoff=1) == IApp(IVar(0), IVar(2))


def test_msubst_under_binder():
    # (\. 1 0)[0 := q] = \. q' 0 with q shifted under the binder
    t = IAbs(IApp(IVar(1), IVar(0)))
    q = IVar(3)
    assert msubst(t, (q,)) == IAbs(IApp(IVar(4), IVar(0)))


def test_iflatten_resolves_nested():
    inner = IFlat(IVar(0), (IVar(2),))
    outer = IFlat(IApp(IVar(0), IVar(0)), (inner,))
    assert iflatten(outer) == IApp(IVar(2), IVar(2))


def test_from_term_round_trip():
    for seed in range(120):
        for n in range(4):
            t = random_term(LCE, Fin(n), 16, seed)
            assert to_term(from_term(t, n)) == t


def test_from_term_rejects_out_of_scope():
    with pytest.raises(ScopeError):
        from_term(Var(LIdx(1)), 1)
    with pytest.raises(ScopeError):
        from_term(Var(LNew()), 2)


def test_naive_flatten_plain_terms_unchanged():
    t = lam_abs(lam_app(Var(LNew()), Var(LOld(LIdx(0)))))
    assert naive_flatten(t, 1) == t


def test_naive_flatten_example():
    t = lam_flat(lam_app(Var(LBoxed(CLOSED_ID)), Var(LBoxed(Var(LIdx(0))))))
    assert naive_flatten(t, 1) == lam_app(CLOSED_ID, Var(LIdx(0)))
