"""Free-group words over labelled generators.

A `Word` is stored as a tuple of syllables (label, nonzero exponent) with no two
adjacent syllables sharing a label, so structural equality is equality in the
free group. Words are immutable; every operation returns a new reduced word.

Generators are either plain symbols (a, b, c, t, x, y) or members of an indexed
family x[i,j], (i, j) in Z^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from app.core.errors import UnknownGeneratorError

Point = Tuple[int, int]


@dataclass(frozen=True)
class GenLabel:
    name: str
    index: Optional[Point] = None

    def sort_key(self) -> tuple:
        # canonical printing order only; group orders live in IndexOrder
        return (self.name, self.index is not None, self.index or (0, 0))

    @property
    def is_indexed(self) -> bool:
        return self.index is not None

    def shifted(self, m: int, n: int) -> "GenLabel":
        if self.index is None:
            return self
        i, j = self.index
        return GenLabel(self.name, (i + m, j + n))

    def __str__(self) -> str:
        if self.index is None:
            return self.name
        return f"{self.name}[{self.index[0]},{self.index[1]}]"


A = GenLabel("a")
B = GenLabel("b")
C = GenLabel("c")
T = GenLabel("t")
X = GenLabel("x")
Y = GenLabel("y")


def xgen(i: int, j: int, name: str = "x") -> GenLabel:
    return GenLabel(name, (i, j))


Syllable = Tuple[GenLabel, int]


def _freely_reduce(raw: Iterable[Syllable]) -> Tuple[Syllable, ...]:
    stack: list[Syllable] = []
    for label, exp in raw:
        if exp == 0:
            continue
        if stack and stack[-1][0] == label:
            total = stack[-1][1] + exp
            if total == 0:
                stack.pop()
            else:
                stack[-1] = (label, total)
        else:
            stack.append((label, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    syllables: Tuple[Syllable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _freely_reduce(self.syllables))

    @classmethod
    def identity(cls) -> "Word":
        return cls()

    @classmethod
    def letter(cls, label: GenLabel, exp: int = 1) -> "Word":
        return cls(((label, exp),))

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    @property
    def labels(self) -> frozenset:
        return frozenset(label for label, _ in self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def letters(self) -> Iterator[Syllable]:
        """Yield the word one letter (label, +-1) at a time."""
        for label, exp in self.syllables:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield label, step

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.syllables + other.syllables)

    def __invert__(self) -> "Word":
        return Word(tuple((label, -exp) for label, exp in reversed(self.syllables)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** -n
        return Word(self.syllables * n)

    def exponent_sum(self, label: GenLabel) -> int:
        return sum(e for g, e in self.syllables if g == label)

    def map_labels(self, fn: Callable[[GenLabel], GenLabel]) -> "Word":
        return Word(tuple((fn(label), exp) for label, exp in self.syllables))

    def shift_indices(self, m: int, n: int) -> "Word":
        return self.map_labels(lambda label: label.shifted(m, n))

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(
            str(label) if exp == 1 else f"{label}^{exp}" for label, exp in self.syllables
        )

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def reduce(raw: Iterable[Syllable]) -> Word:
    return Word(tuple(raw))


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(w: Word) -> Word:
    return ~w


def exponent_sum(w: Word, g: GenLabel) -> int:
    return w.exponent_sum(g)


def commutator(u: Word, v: Word) -> Word:
    return u * v * ~u * ~v


def conjugate(g: Word, w: Word) -> Word:
    """g w g^-1"""
    return g * w * ~g


@dataclass(frozen=True)
class Endomorphism:
    images: Mapping[GenLabel, Word] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "images", dict(self.images))

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.images.items(), key=lambda kv: kv[0].sort_key())))

    @classmethod
    def identity_on(cls, generators: Iterable[GenLabel]) -> "Endomorphism":
        return cls({g: Word.letter(g) for g in generators})

    @property
    def domain(self) -> frozenset:
        return frozenset(self.images)

    def image(self, label: GenLabel) -> Word:
        try:
            return self.images[label]
        except KeyError:
            raise UnknownGeneratorError(f"generator {label} has no image") from None

    def __call__(self, w: Word) -> Word:
        out: list[Syllable] = []
        for label, exp in w:
            out.extend((self.image(label) ** exp).syllables)
        return Word(tuple(out))

    def compose(self, inner: "Endomorphism") -> "Endomorphism":
        """self after inner: x -> self(inner(x)) on inner's domain."""
        return Endomorphism({g: self(img) for g, img in inner.images.items()})

    def power(self, k: int) -> "Endomorphism":
        if k < 0:
            raise ValueError("power needs k >= 0; pass the inverse endomorphism instead")
        result = Endomorphism.identity_on(self.domain)
        for _ in range(k):
            result = self.compose(result)
        return result

    def is_identity(self) -> bool:
        return all(img == Word.letter(g) for g, img in self.images.items())

    def __str__(self) -> str:
        parts = sorted(self.images.items(), key=lambda kv: kv[0].sort_key())
        return "{" + ", ".join(f"{g} -> {img}" for g, img in parts) + "}"


def apply_endo(phi: Endomorphism, w: Word) -> Word:
    return phi(w)


def abelianize(w: Word, basis: Tuple[GenLabel, ...]) -> Tuple[int, ...]:
    return tuple(w.exponent_sum(g) for g in basis)


def words_from_mapping(images: Dict[str, Word]) -> Endomorphism:
    return Endomorphism({GenLabel(name): img for name, img in images.items()})


__all__ = [
    "GenLabel",
    "Word",
    "Endomorphism",
    "Point",
    "Syllable",
    "A",
    "B",
    "C",
    "T",
    "X",
    "Y",
    "xgen",
    "reduce",
    "multiply",
    "invert",
    "exponent_sum",
    "commutator",
    "conjugate",
    "apply_endo",
    "abelianize",
    "words_from_mapping",
]
