from __future__ import annotations

import pytest
from hypothesis import given

from app.core.errors import ParseError, UnknownGeneratorError
from app.services.words import (
    A,
    B,
    C,
    Endomorphism,
    Word,
    abelianize,
    commutator,
    exponent_sum,
    invert,
    multiply,
    reduce,
    xgen,
)
from app.services.zn_order import IntMatrix2
from app.utils.grammar import parse_matrix, parse_word
from strategies import words


def w(text: str) -> Word:
    return parse_word(text)


def test_reduce_cancels_adjacent_inverses():
    assert reduce([(A, 1), (A, -1)]).is_identity
    assert w("a b b^-1 a") == w("a^2")
    assert str(w("a b a^-1")) == "a b a^-1"


def test_multiply_and_invert():
    assert multiply(w("a b"), w("b^-1 a")) == w("a^2")
    assert multiply(w("a"), Word()) == w("a")
    assert multiply(w("a"), w("a^-1")).is_identity
    assert invert(w("a b^-1")) == w("b a^-1")
    assert invert(Word()).is_identity
    assert invert(w("x[2,-1]^3")) == Word.letter(xgen(2, -1), -3)


def test_exponent_sum():
    assert exponent_sum(w("a b a^-1 b^-1"), A) == 0
    assert exponent_sum(w("a^2 b a"), A) == 3
    assert exponent_sum(w("c"), A) == 0


def test_commutator_and_abelianize():
    assert str(commutator(Word.letter(A), Word.letter(B))) == "a b a^-1 b^-1"
    assert abelianize(w("a^2 b^-1 a"), (A, B)) == (3, -1)


def test_endomorphism_apply_and_compose():
    phi = Endomorphism({A: w("a b"), B: w("b a b")})
    phi_inv = Endomorphism({A: w("a^2 b^-1"), B: w("b a^-1")})
    assert phi(w("a")) == w("a b")
    assert phi(Word()).is_identity
    identity = Endomorphism.identity_on((A, B))
    assert identity(w("a b^-2 a")) == w("a b^-2 a")
    assert phi.compose(phi_inv) == identity
    assert phi_inv.compose(phi).is_identity()
    assert phi.power(2)(w("a")) == phi(phi(w("a")))


def test_endomorphism_missing_generator():
    phi = Endomorphism({A: w("b")})
    with pytest.raises(UnknownGeneratorError):
        phi(w("c"))


def test_parse_grammar():
    parsed = w("a^2 b^-1 x[0, 1]^3")
    assert parsed.syllables == ((A, 2), (B, -1), (xgen(0, 1), 3))
    assert w("1").is_identity
    assert w("").is_identity
    assert str(parsed) == "a^2 b^-1 x[0,1]^3"


@pytest.mark.parametrize("text", ["a^", "ab", "z", "y[1,2]", "a^1.5"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError) as info:
        parse_word(text, plain="ab", indexed=("x",))
    assert info.value.exit_code == 2


def test_parse_error_carries_line():
    err = ParseError("bad", line=4)
    assert str(err) == "line 4: bad"


def test_parse_matrix():
    assert parse_matrix("2,1;1,1") == IntMatrix2(2, 1, 1, 1)
    assert parse_matrix(" -1, 0 ; 0, -1 ") == IntMatrix2(-1, 0, 0, -1)
    for bad in ("2,1", "2,1;1", "a,b;c,d"):
        with pytest.raises(ParseError):
            parse_matrix(bad)


@given(words(), words(), words())
def test_group_axioms(u, v, g):
    assert (u * v) * g == u * (v * g)
    assert (u * ~u).is_identity
    assert ~(u * v) == ~v * ~u


@given(words((A, B, C)))
def test_printed_word_reparses(u):
    assert parse_word(str(u)) == u
