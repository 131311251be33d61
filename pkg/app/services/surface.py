"""The bi-order of G = pi_1(3P^2) = <a, b, c : a b a^-1 b^-1 = c^2>.

G maps onto Z^2 by the exponent sums of a and b; the kernel F = <<c>> is free on
x[i,j] = a^i b^j c b^-j a^-i. Every element is uniquely f . a^m b^n with f a
reduced word over x[i,j] (`NF3P2`). Elements are compared lexicographically on
(m, n) and, on a tie, by the Magnus order of f with LEX subscripts. Conjugation
by g in G sends x[i,j] to a conjugate of x[i+m,j+n], i.e. a uniform shift on the
abelianization of F, and the Magnus LEX order is invariant under such maps, so
the extension order is a bi-order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from app.core.ordering import Ordering, Sign
from app.services.extension import ExtensionSpec, OrderOracle, extend_order, lattice_oracle
from app.services.free_order import LEX_INDEX, magnus_oracle
from app.services.lattice_cover import CoverState, LatticeCover
from app.services.words import A, B, C, Word
from app.services.zn_order import LEX

SURFACE_GENERATORS = (A, B, C)

_COVER = LatticeCover(relator_power=2, extra=(C,))


@dataclass(frozen=True)
class NF3P2:
    """f . a^m b^n, with f over the free basis x[i,j] of <<c>>."""

    m: int = 0
    n: int = 0
    f: Word = Word()

    @property
    def quotient(self) -> Tuple[int, int]:
        return (self.m, self.n)

    @property
    def is_identity(self) -> bool:
        return self.m == 0 and self.n == 0 and self.f.is_identity

    def __str__(self) -> str:
        return f"{self.f} · a^{self.m} b^{self.n}"


NF_IDENTITY = NF3P2()


def x_generator_word(i: int, j: int) -> Word:
    """a^i b^j c b^-j a^-i"""
    tail = Word(((A, i), (B, j)))
    return tail * Word.letter(C) * ~tail


def _from_state(state: CoverState) -> NF3P2:
    return NF3P2(state.m, state.n, state.f)


def _push_word(nf: NF3P2, w: Word) -> NF3P2:
    return _from_state(_COVER.rewrite(w, CoverState(nf.f, nf.m, nf.n)))


def nf_of_word(w: Word) -> NF3P2:
    return _push_word(NF_IDENTITY, w)


def nf_evaluate(nf: NF3P2) -> Word:
    """A word over a, b, c representing nf (each x[i,j] spelled out)."""
    out = Word()
    for label, exp in nf.f:
        i, j = label.index
        out = out * x_generator_word(i, j) ** exp
    return out * Word(((A, nf.m), (B, nf.n)))


def nf_multiply(u: NF3P2, v: NF3P2) -> NF3P2:
    return _push_word(u, nf_evaluate(v))


def nf_inverse(u: NF3P2) -> NF3P2:
    return nf_of_word(~nf_evaluate(u))


def conjugator(g: Word, i: int, j: int) -> Word:
    """w[i,j] = g a^i b^-n a^(-i-m), so that g x[i,j] g^-1 = w x[i+m,j+n] w^-1."""
    m, n = g.exponent_sum(A), g.exponent_sum(B)
    w = g * Word(((A, i), (B, -n), (A, -i - m)))
    assert w.exponent_sum(A) == 0 and w.exponent_sum(B) == 0, "conjugator left F"
    return w


def conjugation_identity_holds(g: Word, i: int, j: int) -> bool:
    """g x[i,j] g^-1 and w x[i+m,j+n] w^-1 have the same normal form."""
    m, n = g.exponent_sum(A), g.exponent_sum(B)
    w = conjugator(g, i, j)
    lhs = g * x_generator_word(i, j) * ~g
    rhs = w * x_generator_word(i + m, j + n) * ~w
    return nf_of_word(lhs) == nf_of_word(rhs)


def surface_oracle() -> OrderOracle[NF3P2]:
    spec = ExtensionSpec(
        project=lambda g: g.quotient,
        kernel_cast=lambda g: g.f if g.quotient == (0, 0) else None,
        quotient=lattice_oracle(LEX),
        kernel=magnus_oracle(LEX_INDEX, name="magnus-lex"),
        multiply=nf_multiply,
        invert=nf_inverse,
        # shift invariance of the Magnus LEX order under the action of G on F
        conjugation_invariant=True,
        name="surf3p2",
    )
    return extend_order(spec)


_SURFACE = surface_oracle()


def surface_sign(g: NF3P2) -> Sign:
    return _SURFACE.sign(g)


def surf3p2_compare(u: Word, v: Word) -> Ordering:
    return _SURFACE.compare(nf_of_word(u), nf_of_word(v))


__all__ = [
    "SURFACE_GENERATORS",
    "NF3P2",
    "NF_IDENTITY",
    "x_generator_word",
    "nf_of_word",
    "nf_evaluate",
    "nf_multiply",
    "nf_inverse",
    "conjugator",
    "conjugation_identity_holds",
    "surface_oracle",
    "surface_sign",
    "surf3p2_compare",
]
