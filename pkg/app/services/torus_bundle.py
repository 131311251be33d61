"""Punctured-torus bundle groups <a, b, t : t a t^-1 = phi(a), t b t^-1 = phi(b)>.

Elements are kept as t^k w with w a reduced word over {a, b}. The order is
built in three layers: the t-exponent in Z, then the image of w in Z^2 under
the eigen order of the abelianized monodromy, then the Magnus order (indexed
by that same eigen order) of w rewritten in the basis x[i,j] of [F2, F2].
The construction is certified exactly when the abelianized monodromy has
determinant 1 and preserves some bi-order of Z^2.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Optional

from app.core.errors import MonodromyError, NonCommutatorError, UncertifiedError
from app.core.ordering import Ordering, Sign
from app.services.extension import Decision, Invariance, OrderOracle
from app.services.free_order import IndexOrder, magnus_decide
from app.services.lattice_cover import CoverState, LatticeCover
from app.services.words import (
    A,
    B,
    T,
    Endomorphism,
    Word,
    abelianize,
    commutator,
)
from app.services.zn_order import EigenOrder, IntMatrix2, LevittReport, levitt_check

_logger = logging.getLogger(__name__)

FIBRE_BASIS = (A, B)
BUNDLE_GENERATORS = (A, B, T)

_COMMUTATOR_COVER = LatticeCover(relator_power=1)


@dataclass(frozen=True)
class MonodromySpec:
    """An automorphism of F2 = <a, b> given together with its inverse."""

    phi: Endomorphism
    phi_inv: Endomorphism
    name: str = "custom"
    note: str = ""

    def __post_init__(self):
        for label, endo in (("phi", self.phi), ("phi_inv", self.phi_inv)):
            if endo.domain != frozenset(FIBRE_BASIS):
                raise MonodromyError(f"{label} must give images for exactly a and b")
            for g in FIBRE_BASIS:
                if not endo.image(g).labels <= frozenset(FIBRE_BASIS):
                    raise MonodromyError(f"{label}({g}) = {endo.image(g)} leaves the fibre group")
        identity = Endomorphism.identity_on(FIBRE_BASIS)
        if self.phi.compose(self.phi_inv) != identity or self.phi_inv.compose(self.phi) != identity:
            raise MonodromyError(f"{self.phi_inv} is not inverse to {self.phi}")
        if self.matrix.det not in (1, -1):
            raise MonodromyError(f"abelianized monodromy {self.matrix} is not invertible over Z")

    @cached_property
    def matrix(self) -> IntMatrix2:
        """Columns are the abelianizations of phi(a) and phi(b)."""
        (p, r), (q, s) = (abelianize(self.phi.image(g), FIBRE_BASIS) for g in FIBRE_BASIS)
        return IntMatrix2(p, q, r, s)

    def power(self, k: int) -> Endomorphism:
        """phi^k, using phi_inv for negative k."""
        if k >= 0:
            return self.phi.power(k)
        return self.phi_inv.power(-k)


def monodromy_from_words(
    phi_a: Word,
    phi_b: Word,
    inv_a: Word,
    inv_b: Word,
    name: str = "custom",
    note: str = "",
) -> MonodromySpec:
    return MonodromySpec(
        Endomorphism({A: phi_a, B: phi_b}),
        Endomorphism({A: inv_a, B: inv_b}),
        name=name,
        note=note,
    )


def figure_eight_preset() -> MonodromySpec:
    return monodromy_from_words(
        Word(((A, 1), (B, 1))),
        Word(((B, 1), (A, 1), (B, 1))),
        Word(((A, 2), (B, -1))),
        Word(((B, 1), (A, -1))),
        name="figure8",
        note=(
            "figure-eight knot complement: a -> ab, b -> bab, abelianizing to [[1,1],[1,2]] "
            "(conjugate to [[2,1],[1,1]], trace 3, eigenvalues (3 +- sqrt 5)/2)"
        ),
    )


def period_six_preset() -> MonodromySpec:
    return monodromy_from_words(
        Word(((A, 1), (B, 1))),
        Word.letter(A, -1),
        Word.letter(B, -1),
        Word(((B, 1), (A, 1))),
        name="period6",
        note="trefoil-type monodromy of period 6, abelianizing to [[1,-1],[1,0]]",
    )


def swap_preset() -> MonodromySpec:
    return monodromy_from_words(
        Word.letter(B),
        Word.letter(A),
        Word.letter(B),
        Word.letter(A),
        name="swap",
        note="orientation-reversing swap a <-> b",
    )


PRESETS = {
    "figure8": figure_eight_preset,
    "period6": period_six_preset,
    "swap": swap_preset,
}


class MonodromyVerdict(str, Enum):
    BI_ORDERABLE = "bi-orderable"
    ORIENTATION_REVERSING = "rejected-orientation-reversing"
    EIGENVALUES = "rejected-eigenvalues"


@dataclass(frozen=True)
class MonodromyReport:
    det: int
    levitt: LevittReport
    verdict: MonodromyVerdict

    @property
    def certified(self) -> bool:
        return self.verdict is MonodromyVerdict.BI_ORDERABLE

    @property
    def period(self) -> Optional[int]:
        return self.levitt.period

    @property
    def provably_not_biorderable(self) -> bool:
        """Orientation reversal, or a nontrivial periodic monodromy."""
        if self.verdict is MonodromyVerdict.ORIENTATION_REVERSING:
            return True
        return self.verdict is MonodromyVerdict.EIGENVALUES and (self.period or 1) > 1

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "det": self.det,
            "period": self.period,
            "provably_not_biorderable": self.provably_not_biorderable,
            "levitt": self.levitt.to_dict(),
        }


def analyze_monodromy(spec: MonodromySpec) -> MonodromyReport:
    levitt = levitt_check(spec.matrix)
    if levitt.det == -1:
        verdict = MonodromyVerdict.ORIENTATION_REVERSING
    elif levitt.preserves:
        verdict = MonodromyVerdict.BI_ORDERABLE
    else:
        verdict = MonodromyVerdict.EIGENVALUES
    _logger.info("monodromy %s (%s): %s", spec.name, spec.matrix, verdict.value)
    return MonodromyReport(levitt.det, levitt, verdict)


# commutator subgroup of F2


def x_commutator_word(i: int, j: int) -> Word:
    """a^i b^j [a, b] b^-j a^-i"""
    tail = Word(((A, i), (B, j)))
    return tail * commutator(Word.letter(A), Word.letter(B)) * ~tail


def commutator_rewrite(w: Word) -> Word:
    """Spell w in [F2, F2] over the free basis x[i,j]."""
    if w.exponent_sum(A) or w.exponent_sum(B):
        raise NonCommutatorError(
            f"{w} has exponent sums ({w.exponent_sum(A)}, {w.exponent_sum(B)}), not (0, 0)"
        )
    state = _COMMUTATOR_COVER.rewrite(w, CoverState())
    return state.f


def substitute_commutators(x_word: Word) -> Word:
    out = Word()
    for label, exp in x_word:
        i, j = label.index
        out = out * x_commutator_word(i, j) ** exp
    return out


# the bundle group


@dataclass(frozen=True)
class BundleElement:
    """t^k w"""

    k: int = 0
    w: Word = field(default_factory=Word)

    def __str__(self) -> str:
        if self.k == 0:
            return str(self.w)
        t = "t" if self.k == 1 else f"t^{self.k}"
        return t if self.w.is_identity else f"{t} {self.w}"


BUNDLE_IDENTITY = BundleElement()


def bundle_multiply(e1: BundleElement, e2: BundleElement, spec: MonodromySpec) -> BundleElement:
    # w t^l = t^l (t^-l w t^l) = t^l phi^-l(w)
    moved = spec.power(-e2.k)(e1.w)
    return BundleElement(e1.k + e2.k, moved * e2.w)


def bundle_inverse(e: BundleElement, spec: MonodromySpec) -> BundleElement:
    # w^-1 t^-k = t^-k phi^k(w^-1)
    return BundleElement(-e.k, spec.power(e.k)(~e.w))


def bundle_of_word(w: Word, spec: MonodromySpec) -> BundleElement:
    result = BUNDLE_IDENTITY
    for label, exp in w:
        if label == T:
            step = BundleElement(exp)
        elif label in FIBRE_BASIS:
            step = BundleElement(0, Word.letter(label, exp))
        else:
            raise MonodromyError(f"generator {label} is not in the bundle group")
        result = bundle_multiply(result, step, spec)
    return result


@lru_cache(maxsize=32)
def bundle_oracle(spec: MonodromySpec) -> OrderOracle[BundleElement]:
    report = analyze_monodromy(spec)
    if not report.certified:
        raise UncertifiedError(
            f"monodromy {spec.name} ({spec.matrix}) is not certified: {report.verdict.value}"
        )
    lattice = EigenOrder(spec.matrix)
    index_order = IndexOrder(lattice)

    def decide(e: BundleElement) -> Decision:
        if e.k:
            return Decision(Sign.of(e.k), "t-exponent", {"t_exponent": e.k})
        if e.w.is_identity:
            return Decision(Sign.ZERO, "identity", {})
        point = abelianize(e.w, FIBRE_BASIS)
        s = lattice.sign(point)
        if s:
            return Decision(s, "homology", {"point": list(point), "order": lattice.describe()})
        verdict = magnus_decide(commutator_rewrite(e.w), index_order)
        return Decision(verdict.sign, "magnus", verdict.details())

    return OrderOracle(
        decide=decide,
        multiply=lambda u, v: bundle_multiply(u, v, spec),
        invert=lambda u: bundle_inverse(u, spec),
        invariance=Invariance.BI,
        name=f"bundle:{spec.name}",
    )


def bundle_compare(e1: BundleElement, e2: BundleElement, spec: MonodromySpec) -> Ordering:
    return bundle_oracle(spec).compare(e1, e2)


__all__ = [
    "FIBRE_BASIS",
    "BUNDLE_GENERATORS",
    "MonodromySpec",
    "monodromy_from_words",
    "figure_eight_preset",
    "period_six_preset",
    "swap_preset",
    "PRESETS",
    "MonodromyVerdict",
    "MonodromyReport",
    "analyze_monodromy",
    "x_commutator_word",
    "commutator_rewrite",
    "substitute_commutators",
    "BundleElement",
    "BUNDLE_IDENTITY",
    "bundle_multiply",
    "bundle_inverse",
    "bundle_of_word",
    "bundle_oracle",
    "bundle_compare",
]
