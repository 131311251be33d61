"""Randomized checks of the order axioms for a group context.

Each trial draws three words (u, v, g) from the context's distribution with a
stream seeded by (seed, trial index) and evaluates the requested laws. For
every law the reported counterexample is the failing trial with the smallest
index, shrunk greedily by deleting syllables while it keeps failing.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.errors import ParseError, PreconditionError
from app.core.ordering import Ordering
from app.services.contexts import GroupContext
from app.services.words import Word
from app.utils.sampling import trial_rng

_logger = logging.getLogger(__name__)

Triple = Tuple[Word, Word, Word]


class Law(str, Enum):
    TRICHOTOMY = "trichotomy"
    TRANSITIVITY = "transitivity"
    LEFT_INV = "left-inv"
    RIGHT_INV = "right-inv"
    CONJ_INV = "conj-inv"
    ENDO_INV = "endo-inv"

    @property
    def needs_bi_order(self) -> bool:
        return self in (Law.RIGHT_INV, Law.CONJ_INV)


ALL_LAWS = tuple(Law)


def parse_laws(text: str) -> Tuple[Law, ...]:
    laws = []
    for name in (part.strip() for part in text.split(",")):
        if not name:
            continue
        if name == "all":
            return ALL_LAWS
        try:
            laws.append(Law(name))
        except ValueError:
            choices = ", ".join(law.value for law in Law)
            raise ParseError(f"unknown law {name!r}; choose from {choices} or all") from None
    if not laws:
        raise ParseError("no laws given")
    return tuple(dict.fromkeys(laws))


def _trichotomy(ctx: GroupContext, u: Word, v: Word, g: Word) -> Optional[str]:
    forward, backward = ctx.compare(u, v), ctx.compare(v, u)
    if forward is not backward.reverse():
        return f"compare(u, v) = {forward.name} but compare(v, u) = {backward.name}"
    if ctx.compare(u, u) is not Ordering.EQ:
        return f"compare(u, u) = {ctx.compare(u, u).name}"
    return None


def _transitivity(ctx: GroupContext, u: Word, v: Word, g: Word) -> Optional[str]:
    named = {"u": u, "v": v, "g": g}
    for (p, x), (q, y), (r, z) in permutations(named.items(), 3):
        xy, yz, xz = ctx.compare(x, y), ctx.compare(y, z), ctx.compare(x, z)
        if xy is Ordering.LT and yz is Ordering.LT and xz is not Ordering.LT:
            return f"{p} < {q} < {r} but compare({p}, {r}) = {xz.name}"
        if xy is Ordering.EQ and yz is Ordering.EQ and xz is not Ordering.EQ:
            return f"{p} = {q} = {r} but compare({p}, {r}) = {xz.name}"
    return None


def _left_inv(ctx: GroupContext, u: Word, v: Word, g: Word) -> Optional[str]:
    before, after = ctx.compare(u, v), ctx.compare(g * u, g * v)
    if before is not after:
        return f"compare(u, v) = {before.name} but compare(g u, g v) = {after.name}"
    return None


def _right_inv(ctx: GroupContext, u: Word, v: Word, g: Word) -> Optional[str]:
    before, after = ctx.compare(u, v), ctx.compare(u * g, v * g)
    if before is not after:
        return f"compare(u, v) = {before.name} but compare(u g, v g) = {after.name}"
    return None


def _conj_inv(ctx: GroupContext, u: Word, v: Word, g: Word) -> Optional[str]:
    before, after = ctx.sign(u), ctx.sign(g * u * ~g)
    if before is not after:
        return f"sign(u) = {before.name} but sign(g u g^-1) = {after.name}"
    return None


def _endo_inv(ctx: GroupContext, u: Word, v: Word, g: Word) -> Optional[str]:
    before, after = ctx.compare(u, v), ctx.compare(ctx.endomorphism(u), ctx.endomorphism(v))
    if before is not after:
        return (
            f"compare(u, v) = {before.name} but after {ctx.endomorphism_name} "
            f"compare = {after.name}"
        )
    return None


_CHECKS: Dict[Law, Callable[[GroupContext, Word, Word, Word], Optional[str]]] = {
    Law.TRICHOTOMY: _trichotomy,
    Law.TRANSITIVITY: _transitivity,
    Law.LEFT_INV: _left_inv,
    Law.RIGHT_INV: _right_inv,
    Law.CONJ_INV: _conj_inv,
    Law.ENDO_INV: _endo_inv,
}


@dataclass(frozen=True)
class Counterexample:
    trial: int
    u: Word
    v: Word
    g: Word
    detail: str

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "u": str(self.u),
            "v": str(self.v),
            "g": str(self.g),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class LawResult:
    law: Law
    trials: int
    counterexample: Optional[Counterexample] = None
    expected_failure: bool = False
    skipped: str = ""

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "law": self.law.value,
            "status": self.status,
            "trials": self.trials,
            "expected_failure": self.expected_failure,
            "skipped": self.skipped or None,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }


@dataclass(frozen=True)
class FuzzReport:
    context: str
    invariance: str
    samples: int
    seed: int
    results: List[LawResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "context": self.context,
            "invariance": self.invariance,
            "samples": self.samples,
            "seed": self.seed,
            "laws": [r.to_dict() for r in self.results],
        }

    def render(self) -> str:
        lines = [f"context {self.context} ({self.invariance}), samples {self.samples}, seed {self.seed}"]
        for r in self.results:
            if r.skipped:
                lines.append(f"{r.law.value}: skipped ({r.skipped})")
            elif r.passed:
                lines.append(f"{r.law.value}: pass ({r.trials} trials)")
            else:
                ce = r.counterexample
                note = " (expected: the order is only left-invariant)" if r.expected_failure else ""
                lines.append(f"{r.law.value}: FAIL at trial {ce.trial}{note}")
                lines.append(f"  u = {ce.u}")
                lines.append(f"  v = {ce.v}")
                lines.append(f"  g = {ce.g}")
                lines.append(f"  {ce.detail}")
        lines.append("verdict: " + ("pass" if self.passed else "fail"))
        return "\n".join(lines)


def draw_triple(ctx: GroupContext, seed: int, trial: int) -> Triple:
    rng = trial_rng(seed, trial)
    return tuple(ctx.distribution.sample(rng) for _ in range(3))  # type: ignore[return-value]


def _without(w: Word, index: int) -> Word:
    return Word(w.syllables[:index] + w.syllables[index + 1 :])


def shrink(
    check: Callable[[Word, Word, Word], Optional[str]],
    triple: Triple,
    rounds: int = settings.FUZZ_SHRINK_ROUNDS,
) -> Tuple[Triple, str]:
    """Delete syllables one at a time while the law still fails."""
    current = triple
    detail = check(*current)
    for _ in range(rounds):
        improved = False
        for slot in range(3):
            word = current[slot]
            for index in range(len(word.syllables)):
                candidate = list(current)
                candidate[slot] = _without(word, index)
                candidate_t: Triple = tuple(candidate)  # type: ignore[assignment]
                failure = check(*candidate_t)
                if failure is not None:
                    current, detail, improved = candidate_t, failure, True
                    break
            if improved:
                break
        if not improved:
            break
    return current, detail


def check_law(ctx: GroupContext, law: Law, samples: int, seed: int) -> LawResult:
    if law is Law.ENDO_INV and ctx.endomorphism is None:
        return LawResult(law, 0, skipped=f"{ctx.selector} has no distinguished endomorphism")
    fn = _CHECKS[law]

    def check(u: Word, v: Word, g: Word) -> Optional[str]:
        return fn(ctx, u, v, g)

    expected = law.needs_bi_order and not ctx.oracle.is_bi_invariant
    for trial in range(samples):
        triple = draw_triple(ctx, seed, trial)
        if check(*triple) is None:
            continue
        (u, v, g), detail = shrink(check, triple)
        _logger.info("law %s failed at trial %d on %s", law.value, trial, ctx.selector)
        return LawResult(law, trial + 1, Counterexample(trial, u, v, g, detail), expected)
    return LawResult(law, samples, expected_failure=expected)


def run_fuzz(
    ctx: GroupContext,
    laws: Sequence[Law] = ALL_LAWS,
    samples: int = settings.FUZZ_SAMPLES,
    seed: int = settings.FUZZ_SEED,
) -> FuzzReport:
    if samples < 1:
        raise PreconditionError("samples must be at least 1")
    results = [check_law(ctx, law, samples, seed) for law in laws]
    return FuzzReport(ctx.selector, ctx.invariance.value, samples, seed, results)


__all__ = [
    "Law",
    "ALL_LAWS",
    "parse_laws",
    "Counterexample",
    "LawResult",
    "FuzzReport",
    "draw_triple",
    "shrink",
    "check_law",
    "run_fuzz",
]
