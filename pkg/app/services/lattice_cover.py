"""Rewriting into the kernel basis of a Z^2 quotient.

Both pi_1(3P^2) = <a, b, c : a b a^-1 b^-1 = c^2> and F_2 = <a, b> map onto Z^2
by exponent sums in a and b, with transversal {a^m b^n}. The kernel is free on

    x[i,j] = a^i b^j r b^-j a^-i        (r = c for 3P^2, r = [a, b] for F_2)

and an element is kept as (f, m, n) meaning f . a^m b^n with f a word over
x[i,j]. Letters are pushed through on the right:

    b^e     n += e
    a       f <- f . shift_m(L_n)^-1,   m += 1
    a^-1    f <- f . shift_(m-1)(L_n),  m -= 1

where L_n = a b^n a^-1 b^-n and a b a^-1 = r^p b (p = 2 for 3P^2, p = 1 for F_2):

    L_n = x[0,0]^p x[0,1]^p ... x[0,n-1]^p              (n >= 0)
    L_n = x[0,-1]^-p x[0,-2]^-p ... x[0,n]^-p           (n < 0)

and shift_m adds m to the first subscript (a^m x[i,j] a^-m = x[i+m,j]).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from app.core.errors import UnknownGeneratorError
from app.services.words import A, B, GenLabel, Word, xgen

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverState:
    f: Word = Word()
    m: int = 0
    n: int = 0

    @property
    def quotient(self) -> Tuple[int, int]:
        return (self.m, self.n)


@dataclass(frozen=True)
class LatticeCover:
    relator_power: int
    extra: Tuple[GenLabel, ...] = ()

    def ladder(self, n: int) -> Word:
        return _ladder(self.relator_power, n)

    def push(self, state: CoverState, label: GenLabel, exp: int) -> CoverState:
        f, m, n = state.f, state.m, state.n
        if label == B:
            return CoverState(f, m, n + exp)
        if label == A:
            step = 1 if exp > 0 else -1
            rung = self.ladder(n)
            for _ in range(abs(exp)):
                if step > 0:
                    f = f * ~rung.shift_indices(m, 0)
                    m += 1
                else:
                    f = f * rung.shift_indices(m - 1, 0)
                    m -= 1
            return CoverState(f, m, n)
        if label in self.extra:
            # r itself: f a^m b^n r^e = f x[m,n]^e a^m b^n
            return CoverState(f * Word.letter(xgen(m, n), exp), m, n)
        raise UnknownGeneratorError(f"generator {label} is not handled by this cover")

    def rewrite(self, w: Word, start: CoverState = CoverState()) -> CoverState:
        state = start
        for label, exp in w:
            state = self.push(state, label, exp)
        _logger.debug("cover rewrite %s -> (%s) . a^%d b^%d", w, state.f, state.m, state.n)
        return state


@lru_cache(maxsize=256)
def _ladder(power: int, n: int) -> Word:
    if n >= 0:
        return Word(tuple((xgen(0, s), power) for s in range(n)))
    return Word(tuple((xgen(0, -s), -power) for s in range(1, -n + 1)))


__all__ = ["CoverState", "LatticeCover"]
