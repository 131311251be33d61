from __future__ import annotations

import pytest
from hypothesis import given

from app.core.errors import NonUnitError, TruncationMismatchError, UnknownGeneratorError
from app.services.magnus import (
    TruncatedSeries,
    lowest_term,
    magnus_expand,
    series_multiply,
    unit_inverse,
)
from app.services.words import A, Word, xgen
from strategies import x_words

U, V, W01 = (0, 0), (1, 0), (0, 1)


def test_multiply_distributes():
    one_u = TruncatedSeries(2, {(): 1, (U,): 1})
    one_v = TruncatedSeries(2, {(): 1, (V,): 1})
    assert series_multiply(one_u, one_v).terms == {(): 1, (U,): 1, (V,): 1, (U, V): 1}
    assert series_multiply(one_u, TruncatedSeries.one(2)) == one_u


def test_multiply_truncates():
    one_u = TruncatedSeries(2, {(): 1, (U,): 1})
    inv = TruncatedSeries(2, {(): 1, (U,): -1, (U, U): 1})
    assert series_multiply(one_u, inv) == TruncatedSeries.one(2)


def test_mismatched_degrees_raise():
    with pytest.raises(TruncationMismatchError):
        TruncatedSeries.one(2) * TruncatedSeries.one(3)


def test_unit_inverse():
    assert unit_inverse(TruncatedSeries(3, {(): 1, (U,): 1})).terms == {
        (): 1,
        (U,): -1,
        (U, U): 1,
        (U, U, U): -1,
    }
    assert unit_inverse(TruncatedSeries.one(4)) == TruncatedSeries.one(4)
    inv = unit_inverse(TruncatedSeries(2, {(): 1, (U,): 1, (V,): 1}))
    assert inv.terms == {(): 1, (U,): -1, (V,): -1, (U, U): 1, (U, V): 1, (V, U): 1, (V, V): 1}


def test_unit_inverse_needs_constant_one():
    with pytest.raises(NonUnitError):
        unit_inverse(TruncatedSeries(2, {(): 2, (U,): 1}))


def test_magnus_expand_generators():
    assert magnus_expand(Word.letter(xgen(0, 0)), 3).terms == {(): 1, (U,): 1}
    assert magnus_expand(Word(), 3) == TruncatedSeries.one(3)
    assert magnus_expand(Word.letter(xgen(0, 0), -1), 3).terms == {
        (): 1,
        (U,): -1,
        (U, U): 1,
        (U, U, U): -1,
    }


def test_magnus_expand_commutator():
    x, y = Word.letter(xgen(0, 0)), Word.letter(xgen(1, 0))
    s = magnus_expand(x * y * ~x * ~y, 2)
    assert s.terms == {(): 1, (U, V): 1, (V, U): -1}
    assert str(s) == "1 + X[0,0]·X[1,0] - X[1,0]·X[0,0]"


def test_magnus_expand_varmap():
    s = magnus_expand(Word.letter(A, 2), 2, {A: (5, 5)})
    assert s.terms == {(): 1, ((5, 5),): 2, ((5, 5), (5, 5)): 1}
    with pytest.raises(UnknownGeneratorError):
        magnus_expand(Word.letter(A), 2)


def test_lowest_term():
    s = TruncatedSeries(2, {(): 1, (U, V): 1, (V, U): -1})
    assert lowest_term(s) == ((U, V), 1)
    assert lowest_term(TruncatedSeries.one(2)) is None
    t = TruncatedSeries(2, {(): 1, (W01,): -1, (U, W01): 1})
    assert lowest_term(t) == ((W01,), -1)


def test_format():
    assert str(TruncatedSeries(2, {})) == "0"
    assert str(TruncatedSeries(2, {(): 1, (U,): -3})) == "1 - 3·X[0,0]"


@given(x_words(bound=1, max_syllables=4), x_words(bound=1, max_syllables=4))
def test_expansion_is_multiplicative(u, v):
    d = 3
    assert magnus_expand(u * v, d) == magnus_expand(u, d) * magnus_expand(v, d)
    assert magnus_expand(~u, d) == unit_inverse(magnus_expand(u, d))
