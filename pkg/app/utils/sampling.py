"""Seeded random words for the fuzzer and the randomized tests.

Syllable counts are geometric on {0, 1, 2, ...} with the configured mean,
exponents are uniform on the nonzero integers in [-e, e] and indexed
subscripts uniform in [-r, r]. The stream depends only on the seed, so a
reported counterexample can be regenerated from (seed, trial index).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from app.core.config import settings
from app.services.words import GenLabel, Word


@dataclass(frozen=True)
class WordDistribution:
    alphabet: Sequence[GenLabel]
    indexed: Sequence[str] = ()
    mean_syllables: float = settings.FUZZ_MEAN_SYLLABLES
    max_exponent: int = settings.FUZZ_MAX_EXPONENT
    index_range: int = settings.FUZZ_INDEX_RANGE

    @property
    def stop_probability(self) -> float:
        return 1.0 / (1.0 + self.mean_syllables)

    def _syllable_count(self, rng: random.Random) -> int:
        count = 0
        while rng.random() >= self.stop_probability:
            count += 1
        return count

    def _label(self, rng: random.Random) -> GenLabel:
        pool = len(self.alphabet) + len(self.indexed)
        pick = rng.randrange(pool)
        if pick < len(self.alphabet):
            return self.alphabet[pick]
        r = self.index_range
        return GenLabel(self.indexed[pick - len(self.alphabet)], (rng.randint(-r, r), rng.randint(-r, r)))

    def _exponent(self, rng: random.Random) -> int:
        """Uniform on the nonzero integers in [-max_exponent, max_exponent]; 0 is never drawn."""
        e = rng.randint(1, self.max_exponent)
        return e if rng.random() < 0.5 else -e

    def sample(self, rng: random.Random) -> Word:
        count = self._syllable_count(rng)
        return Word(tuple((self._label(rng), self._exponent(rng)) for _ in range(count)))


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent stream per trial, so trials can run in any order."""
    return random.Random(f"{seed}:{trial}")


__all__ = ["WordDistribution", "trial_rng"]
