import pytest

from bindalg.lam import LC, LCE, DUPAPP
from bindalg.signatures import (
    Binding,
    Flattening,
    Signature,
    parse_signature_expr,
    sum_sig,
)


def test_named_layouts():
    assert LC.arities == (Binding((0, 0)), Binding((1,)))
    assert len(LCE) == 3
    assert LCE.arities[2] == Flattening()
    assert DUPAPP.arities == (Binding((0, 0)), Binding((0, 0)), Binding((1,)))


def test_sum_shifts_second_block():
    assert sum_sig(LC, Signature((Flattening(),))) == LCE
    empty = Signature(())
    assert sum_sig(empty, LC) == LC
    assert sum_sig(LC, empty) == LC
    dup = sum_sig(Signature((Binding((0, 0)),)), Signature((Binding((0, 0)),)))
    assert dup.arities == (Binding((0, 0)), Binding((0, 0)))


def test_sum_associativity():
    a, b, c = LC, Signature((Flattening(),)), Signature((Binding(()),))
    assert sum_sig(a, sum_sig(b, c)) == sum_sig(sum_sig(a, b), c)


def test_parse_signature_expr():
    assert parse_signature_expr("lc") == LC
    assert parse_signature_expr("lce") == LCE
    assert parse_signature_expr("bind:0,0+bind:1+flat") == LCE
    assert parse_signature_expr("bind:") == Signature((Binding(()),))
    with pytest.raises(ValueError):
        parse_signature_expr("nope")
    with pytest.raises(ValueError):
        parse_signature_expr("bind:x")


def test_arity_id_out_of_range():
    with pytest.raises(ValueError):
        LC.arity(5)
    with pytest.raises(ValueError):
        Binding((-1,))
