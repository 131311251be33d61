"""Bi-orders of free groups through the Magnus expansion.

A nonidentity word w is positive when the lowest nonconstant term of
mu(w) = 1 + ... has a positive coefficient. Monomials are compared by degree,
then position by position under an `IndexOrder` on the variable subscripts.
Any bi-order of Z^2 works as an IndexOrder; the order obtained is preserved by
every automorphism that moves generators to (conjugates of) generators along a
map of Z^2 preserving that IndexOrder, e.g. uniform shifts for LEX and the
matrix itself for EIGEN(M).

The lowest nonvanishing degree of mu(w) - 1 is the lower-central-series weight
of w, at most its letter length, so the expansion is escalated degree by degree
up to that bound.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Dict, Optional, Sequence

from app.core.errors import MagnusTerminationError
from app.core.ordering import Ordering, Sign
from app.services.extension import Decision, Invariance, OrderOracle
from app.services.magnus import (
    Monomial,
    VarMap,
    Variable,
    format_monomial,
    lowest_term,
    magnus_expand,
)
from app.services.words import GenLabel, Word
from app.services.zn_order import (
    EigenlineOrder,
    EigenOrder,
    IntMatrix2,
    LatticeOrder,
    LEX,
)

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndexOrder:
    """Total order on Z^2 subscripts, tagged LEX or EIGEN(M)."""

    lattice: LatticeOrder

    @classmethod
    def lex(cls) -> "IndexOrder":
        return cls(LEX)

    @classmethod
    def eigen(cls, matrix: IntMatrix2) -> "IndexOrder":
        if matrix.det == -1:
            return cls(EigenlineOrder(matrix))
        return cls(EigenOrder(matrix))

    @property
    def tag(self) -> str:
        return self.lattice.name

    def compare(self, p: Variable, q: Variable) -> int:
        return self.lattice.compare(p, q)

    def sort_key(self):
        return cmp_to_key(self.compare)

    def __str__(self) -> str:
        return self.lattice.describe()


LEX_INDEX = IndexOrder.lex()


@dataclass(frozen=True)
class MagnusVerdict:
    sign: Sign
    degree: int = 0
    monomial: Monomial = ()
    coefficient: int = 0

    def details(self) -> Dict[str, object]:
        if self.sign is Sign.ZERO:
            return {}
        return {
            "degree": self.degree,
            "monomial": format_monomial(self.monomial),
            "coefficient": self.coefficient,
        }


def rank_varmap(alphabet: Sequence[GenLabel]) -> Dict[GenLabel, Variable]:
    """Embed a finite alphabet along (0,0), (1,0), (2,0), ..."""
    return {label: (k, 0) for k, label in enumerate(alphabet)}


def magnus_decide(
    w: Word, order: IndexOrder = LEX_INDEX, varmap: Optional[VarMap] = None
) -> MagnusVerdict:
    if w.is_identity:
        return MagnusVerdict(Sign.ZERO)
    bound = w.letter_length
    for degree in range(1, bound + 1):
        term = lowest_term(magnus_expand(w, degree, varmap), order)
        if term is not None:
            monomial, coefficient = term
            _logger.debug("magnus %s: degree %d, %s", w, degree, coefficient)
            return MagnusVerdict(Sign.of(coefficient), degree, monomial, coefficient)
    raise MagnusTerminationError(f"no nonzero Magnus term of degree <= {bound} for {w}")


def magnus_sign(w: Word, order: IndexOrder = LEX_INDEX, varmap: Optional[VarMap] = None) -> Sign:
    return magnus_decide(w, order, varmap).sign


def magnus_compare(
    u: Word, v: Word, order: IndexOrder = LEX_INDEX, varmap: Optional[VarMap] = None
) -> Ordering:
    return Ordering.from_cone(magnus_sign(~u * v, order, varmap))


def magnus_oracle(
    order: IndexOrder = LEX_INDEX, varmap: Optional[VarMap] = None, name: str = "magnus"
) -> OrderOracle[Word]:
    def decide(w: Word) -> Decision:
        verdict = magnus_decide(w, order, varmap)
        stage = "identity" if verdict.sign is Sign.ZERO else "magnus"
        return Decision(verdict.sign, stage, verdict.details())

    return OrderOracle(
        decide=decide,
        multiply=lambda u, v: u * v,
        invert=lambda w: ~w,
        invariance=Invariance.BI,
        name=name,
    )


def index_map_endomorphism(sigma: Callable[[Variable], Variable]) -> Callable[[Word], Word]:
    """x[i,j] -> x[sigma(i,j)] on words over indexed generators."""

    def apply(w: Word) -> Word:
        return w.map_labels(
            lambda label: GenLabel(label.name, sigma(label.index)) if label.index is not None else label
        )

    return apply


__all__ = [
    "IndexOrder",
    "LEX_INDEX",
    "MagnusVerdict",
    "rank_varmap",
    "magnus_decide",
    "magnus_sign",
    "magnus_compare",
    "magnus_oracle",
    "index_map_endomorphism",
]
