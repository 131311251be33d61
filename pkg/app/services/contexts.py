"""Group contexts: a word grammar plus an order oracle, selected by name.

Every context works on words; the group law is concatenation and each oracle
sees the word's image in its own coordinates (a point of Z^2, a normal form,
a bundle element, ...). Comparisons go through the positive cone, u < v iff
u^-1 v is positive.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from app.core.errors import ParseError, UncertifiedError
from app.core.ordering import Ordering, Sign
from app.services.extension import (
    Decision,
    Invariance,
    OrderOracle,
    klein_of_word,
    klein_oracle,
    lattice_oracle,
)
from app.services.free_order import LEX_INDEX, magnus_oracle
from app.services.surface import nf_of_word, surface_oracle
from app.services.torus_bundle import (
    PRESETS,
    MonodromySpec,
    bundle_of_word,
    bundle_oracle,
    monodromy_from_words,
)
from app.services.words import A, B, C, T, X, Y, Endomorphism, Word, abelianize, xgen
from app.services.zn_order import LEX, IntMatrix2, levitt_check
from app.utils.grammar import parse_word
from app.utils.sampling import WordDistribution

_logger = logging.getLogger(__name__)

SELECTORS = (
    "free2-lex",
    "free-indexed-lex",
    "z2-lex",
    "z2-eigen",
    "klein",
    "surf3p2",
    "bundle:figure8",
    "bundle:period6",
    "bundle:swap",
    "bundle",
)

_FREE2_ALIASES = {A: xgen(0, 0), B: xgen(1, 0)}


@dataclass(frozen=True)
class GroupContext:
    selector: str
    generators: str
    parse_text: Callable[[str], Word]
    to_element: Callable[[Word], Any]
    oracle: OrderOracle
    distribution: WordDistribution
    endomorphism: Optional[Callable[[Word], Word]] = None
    endomorphism_name: str = ""
    notes: Sequence[str] = field(default_factory=tuple)

    @property
    def invariance(self) -> Invariance:
        return self.oracle.invariance

    def parse(self, text: str, *, line: Optional[int] = None) -> Word:
        try:
            return self.parse_text(text)
        except ParseError as exc:
            if line is None or exc.line is not None:
                raise
            raise ParseError(str(exc), line=line) from exc

    def decide(self, w: Word) -> Decision:
        return self.oracle.decide(self.to_element(w))

    def sign(self, w: Word) -> Sign:
        return self.decide(w).sign

    def explain(self, u: Word, v: Word) -> Decision:
        return self.decide(~u * v)

    def compare(self, u: Word, v: Word) -> Ordering:
        return Ordering.from_cone(self.sign(~u * v))


def _parser(plain: str, indexed: Sequence[str] = (), alias=None) -> Callable[[str], Word]:
    def parse(text: str) -> Word:
        return parse_word(text, plain=frozenset(plain), indexed=tuple(indexed), alias=alias)

    return parse


def _shift(m: int, n: int) -> Callable[[Word], Word]:
    return lambda w: w.shift_indices(m, n)


def _conjugation(by: Word) -> Callable[[Word], Word]:
    return lambda w: by * w * ~by


def matrix_endomorphism(matrix: IntMatrix2) -> Endomorphism:
    """a -> a^m11 b^m21, b -> a^m12 b^m22; abelianizes to `matrix` acting on columns."""
    return Endomorphism(
        {
            A: Word(((A, matrix.m11), (B, matrix.m21))),
            B: Word(((A, matrix.m12), (B, matrix.m22))),
        }
    )


def _free2_lex() -> GroupContext:
    return GroupContext(
        selector="free2-lex",
        generators="a = x[0,0], b = x[1,0] (or x[i,j] directly)",
        parse_text=_parser("ab", ("x",), alias=lambda g: _FREE2_ALIASES.get(g, g)),
        to_element=lambda w: w,
        oracle=magnus_oracle(LEX_INDEX, name="free2-lex"),
        distribution=WordDistribution(alphabet=(xgen(0, 0), xgen(1, 0))),
        endomorphism=_shift(0, 1),
        endomorphism_name="shift x[i,j] -> x[i,j+1]",
    )


def _free_indexed_lex() -> GroupContext:
    return GroupContext(
        selector="free-indexed-lex",
        generators="x[i,j]",
        parse_text=_parser("", ("x",)),
        to_element=lambda w: w,
        oracle=magnus_oracle(LEX_INDEX, name="free-indexed-lex"),
        distribution=WordDistribution(alphabet=(), indexed=("x",)),
        endomorphism=_shift(1, 0),
        endomorphism_name="shift x[i,j] -> x[i+1,j]",
    )


def _z2(matrix: Optional[IntMatrix2]) -> GroupContext:
    if matrix is None:
        order, selector, endo, endo_name = LEX, "z2-lex", None, ""
    else:
        report = levitt_check(matrix)
        if not report.preserves:
            raise UncertifiedError(
                f"{matrix} preserves no bi-order of Z^2 ({report.classification.value})"
            )
        order, selector = report.order, "z2-eigen"
        endo, endo_name = matrix_endomorphism(matrix), f"matrix {matrix}"
    return GroupContext(
        selector=selector,
        generators="a, b (abelianized)",
        parse_text=_parser("ab"),
        to_element=lambda w: abelianize(w, (A, B)),
        oracle=lattice_oracle(order),
        distribution=WordDistribution(alphabet=(A, B)),
        endomorphism=endo,
        endomorphism_name=endo_name,
    )


def _klein() -> GroupContext:
    return GroupContext(
        selector="klein",
        generators="x, y with x y x^-1 = y^-1",
        parse_text=_parser("xy"),
        to_element=klein_of_word,
        oracle=klein_oracle(),
        distribution=WordDistribution(alphabet=(X, Y)),
        notes=("left-invariant only: right-inv and conj-inv are expected to fail",),
    )


def _surf3p2() -> GroupContext:
    return GroupContext(
        selector="surf3p2",
        generators="a, b, c with a b a^-1 b^-1 = c^2",
        parse_text=_parser("abc"),
        to_element=nf_of_word,
        oracle=surface_oracle(),
        distribution=WordDistribution(alphabet=(A, B, C)),
        endomorphism=_conjugation(Word.letter(A)),
        endomorphism_name="conjugation by a",
    )


def _bundle(spec: MonodromySpec) -> GroupContext:
    return GroupContext(
        selector=f"bundle:{spec.name}",
        generators="a, b, t with t a t^-1 = phi(a), t b t^-1 = phi(b)",
        parse_text=_parser("abt"),
        to_element=lambda w: bundle_of_word(w, spec),
        oracle=bundle_oracle(spec),
        distribution=WordDistribution(alphabet=(A, B, T)),
        endomorphism=_conjugation(Word.letter(T)),
        endomorphism_name="conjugation by t (the monodromy)",
        notes=(spec.note,) if spec.note else (),
    )


def parse_monodromy(texts: Sequence[str]) -> MonodromySpec:
    if len(texts) != 4:
        raise ParseError("a monodromy needs four words: phi(a) phi(b) phi^-1(a) phi^-1(b)")
    words = [parse_word(t, plain=frozenset("ab"), indexed=()) for t in texts]
    return monodromy_from_words(*words)


def build_context(
    selector: str,
    matrix: Optional[IntMatrix2] = None,
    monodromy: Optional[Sequence[str]] = None,
) -> GroupContext:
    """Resolve a selector into a context; raises ParseError on unknown selectors."""
    if selector == "free2-lex":
        ctx = _free2_lex()
    elif selector == "free-indexed-lex":
        ctx = _free_indexed_lex()
    elif selector == "z2-lex":
        ctx = _z2(None)
    elif selector == "z2-eigen":
        if matrix is None:
            raise ParseError("z2-eigen needs --matrix")
        ctx = _z2(matrix)
    elif selector == "klein":
        ctx = _klein()
    elif selector == "surf3p2":
        ctx = _surf3p2()
    elif selector.startswith("bundle:") and selector[len("bundle:"):] in PRESETS:
        ctx = _bundle(PRESETS[selector[len("bundle:"):]]())
    elif selector == "bundle":
        if not monodromy:
            raise ParseError("bundle needs --monodromy PHI_A PHI_B INV_A INV_B or a preset")
        ctx = _bundle(parse_monodromy(monodromy))
    else:
        raise ParseError(f"unknown group {selector!r}; choose from {', '.join(SELECTORS)}")
    _logger.info("context %s (%s)", ctx.selector, ctx.invariance.value)
    return ctx


__all__ = [
    "SELECTORS",
    "GroupContext",
    "matrix_endomorphism",
    "parse_monodromy",
    "build_context",
]
