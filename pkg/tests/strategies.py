"""Hypothesis strategies for words and lattice data shared by the test modules."""
from __future__ import annotations

from hypothesis import strategies as st

from app.services.words import A, B, C, Word, xgen


def words(alphabet=(A, B), max_syllables: int = 6, max_exp: int = 3):
    syllable = st.tuples(
        st.sampled_from(list(alphabet)),
        st.integers(-max_exp, max_exp).filter(bool),
    )
    return st.lists(syllable, max_size=max_syllables).map(lambda s: Word(tuple(s)))


def indexed_labels(bound: int = 3):
    return st.builds(xgen, st.integers(-bound, bound), st.integers(-bound, bound))


def x_words(bound: int = 3, max_syllables: int = 8, max_exp: int = 2):
    syllable = st.tuples(indexed_labels(bound), st.integers(-max_exp, max_exp).filter(bool))
    return st.lists(syllable, max_size=max_syllables).map(lambda s: Word(tuple(s)))


surface_words = words((A, B, C), max_syllables=6, max_exp=2)
points = st.tuples(st.integers(-50, 50), st.integers(-50, 50))

__all__ = ["words", "indexed_labels", "x_words", "surface_words", "points"]
