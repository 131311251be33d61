"""Orders on Z^2 and Levitt's criterion for 2x2 integer matrices.

Eigenvalues of a 2x2 integer matrix live in Q(sqrt(disc)) with
disc = trace^2 - 4 det, so every sign here is decided exactly with `QuadNum`
(p + q sqrt(D), p and q rational). No floating point is involved.

Lattice orders are positive cones on Z^2:
  LexOrder          (i, j) > 0 iff i > 0, or i = 0 and j > 0
  SwappedLexOrder   second coordinate first
  EigenOrder(M)     det M = 1, trace >= 2; coordinates c1, c2 in a Jordan basis
                    (v1, v2) of M, positive iff c2 > 0 or (c2 = 0 and c1 > 0)
  EigenlineOrder(M) det M = -1, trace != 0; positive iff the coordinate along the
                    positive eigenvector is positive
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from itertools import product
from math import isqrt
from typing import Iterator, List, Optional, Tuple

from app.core.config import settings
from app.core.errors import PreconditionError
from app.core.ordering import Ordering, Sign

_logger = logging.getLogger(__name__)

Point = Tuple[int, int]


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@total_ordering
class QuadNum:
    """Exact element p + q*sqrt(D) of Q(sqrt(D)), D > 0.

    A perfect-square D folds the radical into p, leaving q = 0; this is how the
    rational (parabolic, identity) cases share the code path.
    """

    __slots__ = ("_p", "_q", "_d")

    def __init__(self, p, q=0, d: int = 1) -> None:
        if d <= 0:
            raise ValueError(f"radicand must be positive, got {d}")
        p, q = Fraction(p), Fraction(q)
        if q and _is_square(d):
            p, q = p + q * isqrt(d), Fraction(0)
        self._p, self._q, self._d = p, q, d

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def q(self) -> Fraction:
        return self._q

    @property
    def d(self) -> int:
        return self._d

    @classmethod
    def sqrt(cls, d: int) -> "QuadNum":
        return cls(0, 1, d)

    def _lift(self, other) -> "QuadNum":
        if isinstance(other, QuadNum):
            if other._d != self._d and other._q and self._q:
                raise ValueError(f"cannot mix Q(sqrt({self._d})) and Q(sqrt({other._d}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other, 0, self._d)
        raise TypeError(f"unsupported operand {other!r}")

    def _field(self, other: "QuadNum") -> int:
        return self._d if self._q or not other._q else other._d

    def __add__(self, other) -> "QuadNum":
        o = self._lift(other)
        return QuadNum(self._p + o._p, self._q + o._q, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self._p, -self._q, self._d)

    def __sub__(self, other) -> "QuadNum":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QuadNum":
        return self._lift(other) - self

    def __mul__(self, other) -> "QuadNum":
        o = self._lift(other)
        d = self._field(o)
        return QuadNum(self._p * o._p + self._q * o._q * d, self._p * o._q + self._q * o._p, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNum":
        return QuadNum(self._p, -self._q, self._d)

    def norm(self) -> Fraction:
        return self._p * self._p - self._q * self._q * self._d

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self.conjugate()
        return QuadNum(c._p / n, c._q / n, self._d)

    def __truediv__(self, other) -> "QuadNum":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "QuadNum":
        return self._lift(other) * self.inverse()

    def sign(self) -> Sign:
        p, q = self._p, self._q
        if q == 0:
            return Sign.of(p)
        if p == 0:
            return Sign.of(q)
        if (p > 0) == (q > 0):
            return Sign.of(p)
        # opposite signs: compare p^2 with q^2 D; equality impossible for non-square D
        if p * p > q * q * self._d:
            return Sign.of(p)
        return Sign.of(q)

    def __eq__(self, other) -> bool:
        try:
            return (self - other).sign() == Sign.ZERO
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        return (self - other).sign() == Sign.NEGATIVE

    def __hash__(self) -> int:
        return hash((self._p, self._q, self._d if self._q else 0))

    def __repr__(self) -> str:
        return f"QuadNum({self._p}, {self._q}, {self._d})"

    def __str__(self) -> str:
        if not self._q:
            return str(self._p)
        return f"{self._p}{'+' if self._q > 0 else '-'}{abs(self._q)}√{self._d}"


@dataclass(frozen=True)
class IntMatrix2:
    m11: int
    m12: int
    m21: int
    m22: int

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def trace(self) -> int:
        return self.m11 + self.m22

    @property
    def discriminant(self) -> int:
        return self.trace * self.trace - 4 * self.det

    def apply(self, v: Point) -> Point:
        x, y = v
        return (self.m11 * x + self.m12 * y, self.m21 * x + self.m22 * y)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def inverse(self) -> "IntMatrix2":
        if self.det not in (1, -1):
            raise PreconditionError(f"determinant {self.det} is not a unit")
        d = self.det
        return IntMatrix2(d * self.m22, -d * self.m12, -d * self.m21, d * self.m11)

    def __str__(self) -> str:
        return f"{self.m11},{self.m12};{self.m21},{self.m22}"


Vector = Tuple[QuadNum, QuadNum]


def _coordinates(v: Point, v1: Vector, v2: Vector) -> Tuple[QuadNum, QuadNum]:
    """Solve v = c1 v1 + c2 v2 exactly (Cramer's rule)."""
    x, y = v
    det = v1[0] * v2[1] - v1[1] * v2[0]
    c1 = (v2[1] * x - v2[0] * y) / det
    c2 = (v1[0] * y - v1[1] * x) / det
    return c1, c2


def _eigenvalues(m: IntMatrix2) -> Tuple[QuadNum, QuadNum]:
    """(larger, smaller) real eigenvalues; requires a positive discriminant."""
    disc = m.discriminant
    root = QuadNum.sqrt(disc)
    return (m.trace + root) / 2, (m.trace - root) / 2


def _eigenvector(m: IntMatrix2, lam: QuadNum) -> Vector:
    first = (QuadNum(m.m12, 0, lam.d), lam - m.m11)
    if first[0].sign() or first[1].sign():
        return first
    return (lam - m.m22, QuadNum(m.m21, 0, lam.d))


class LatticeOrder(ABC):
    """A bi-order on Z^2 given by its positive cone."""

    name: str = "lattice"

    @abstractmethod
    def sign(self, v: Point) -> Sign: ...

    def compare(self, v: Point, w: Point) -> int:
        return int(self.sign((v[0] - w[0], v[1] - w[1])))

    def ordering(self, v: Point, w: Point) -> Ordering:
        return Ordering(self.compare(v, w))

    def describe(self) -> str:
        return self.name


@dataclass(frozen=True)
class LexOrder(LatticeOrder):
    name = "lex"

    def sign(self, v: Point) -> Sign:
        return Sign.of(v[0]) if v[0] else Sign.of(v[1])


@dataclass(frozen=True)
class SwappedLexOrder(LatticeOrder):
    name = "swapped-lex"

    def sign(self, v: Point) -> Sign:
        return Sign.of(v[1]) if v[1] else Sign.of(v[0])


@dataclass(frozen=True)
class EigenOrder(LatticeOrder):
    matrix: IntMatrix2
    name = "eigen"

    def __post_init__(self):
        m = self.matrix
        if m.det != 1 or m.trace < 2:
            raise PreconditionError(
                f"eigen order needs det 1 and trace >= 2 (positive eigenvalues), got {m}"
            )

    @cached_property
    def basis(self) -> Tuple[Vector, Vector]:
        m = self.matrix
        if m.trace > 2:
            lam1, lam2 = _eigenvalues(m)
            return _eigenvector(m, lam1), _eigenvector(m, lam2)
        one, zero = QuadNum(1), QuadNum(0)
        if m == IntMatrix2.identity():
            return (one, zero), (zero, one)
        # parabolic: v2 any vector off the eigenline, v1 = (M - I) v2
        n = IntMatrix2(m.m11 - 1, m.m12, m.m21, m.m22 - 1)
        e = (1, 0) if n.apply((1, 0)) != (0, 0) else (0, 1)
        v1 = n.apply(e)
        return (QuadNum(v1[0]), QuadNum(v1[1])), (QuadNum(e[0]), QuadNum(e[1]))

    def coordinates(self, v: Point) -> Tuple[QuadNum, QuadNum]:
        v1, v2 = self.basis
        return _coordinates(v, v1, v2)

    def sign(self, v: Point) -> Sign:
        return _cached_sign(self, v)

    def _sign(self, v: Point) -> Sign:
        if v == (0, 0):
            return Sign.ZERO
        c1, c2 = self.coordinates(v)
        s2 = c2.sign()
        return s2 if s2 else c1.sign()

    def describe(self) -> str:
        return f"eigen({self.matrix})"


@dataclass(frozen=True)
class EigenlineOrder(LatticeOrder):
    matrix: IntMatrix2
    name = "eigenline"

    def __post_init__(self):
        m = self.matrix
        if m.det != -1 or m.trace == 0:
            raise PreconditionError(f"eigenline order needs det -1 and trace != 0, got {m}")

    @cached_property
    def basis(self) -> Tuple[Vector, Vector]:
        lam_pos, lam_neg = _eigenvalues(self.matrix)
        return _eigenvector(self.matrix, lam_pos), _eigenvector(self.matrix, lam_neg)

    def sign(self, v: Point) -> Sign:
        return _cached_sign(self, v)

    def _sign(self, v: Point) -> Sign:
        if v == (0, 0):
            return Sign.ZERO
        v_pos, v_neg = self.basis
        c_pos, _ = _coordinates(v, v_pos, v_neg)
        # the negative eigenline has irrational slope: c_pos = 0 only at the origin
        return c_pos.sign()

    def describe(self) -> str:
        return f"eigenline({self.matrix})"


@lru_cache(maxsize=65536)
def _cached_sign(order, v: Point) -> Sign:
    return order._sign(v)


LEX = LexOrder()
SWAPPED_LEX = SwappedLexOrder()


def lex_compare(v: Point, w: Point) -> Ordering:
    return LEX.ordering(v, w)


def eigen_sign(m: IntMatrix2, v: Point) -> Sign:
    return EigenOrder(m).sign(v)


class EigenClass(str, Enum):
    POSITIVE_PAIR = "positive-real-pair"
    NEGATIVE_PAIR = "negative-real-pair"
    MIXED_PAIR = "mixed-sign-pair"
    COMPLEX_PAIR = "complex-pair"
    REPEATED = "repeated"


@dataclass(frozen=True)
class LevittReport:
    preserves: bool
    trace: int
    det: int
    discriminant: int
    classification: EigenClass
    order: Optional[LatticeOrder] = None
    period: Optional[int] = None

    @property
    def verdict(self) -> str:
        return "preserves" if self.preserves else "does-not-preserve"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "trace": self.trace,
            "det": self.det,
            "discriminant": self.discriminant,
            "classification": self.classification.value,
            "order": self.order.describe() if self.order is not None else None,
            "period": self.period,
        }


def matrix_period(m: IntMatrix2) -> Optional[int]:
    """Finite order of m in GL(2, Z) (always one of 1, 2, 3, 4, 6) or None."""
    power = m
    for k in range(1, 7):
        if power == IntMatrix2.identity():
            return k
        power = power @ m
    return None


def levitt_check(m: IntMatrix2) -> LevittReport:
    """Decide whether m preserves some bi-order of Z^2 (exact, n = 2)."""
    det, tr, disc = m.det, m.trace, m.discriminant
    if det not in (1, -1):
        raise PreconditionError(f"determinant {det} is not +-1; {m} is not an automorphism of Z^2")
    order: Optional[LatticeOrder] = None
    if det == 1:
        if disc < 0:
            cls = EigenClass.COMPLEX_PAIR
        elif disc == 0:
            cls = EigenClass.REPEATED
        elif tr > 2:
            cls = EigenClass.POSITIVE_PAIR
        else:
            cls = EigenClass.NEGATIVE_PAIR
        preserves = tr >= 2
        if preserves:
            order = EigenOrder(m)
    else:
        cls = EigenClass.MIXED_PAIR
        # the negative eigenline is rational iff tr^2 + 4 is a square iff tr = 0
        preserves = tr != 0
        if preserves:
            order = EigenlineOrder(m)
    report = LevittReport(preserves, tr, det, disc, cls, order, matrix_period(m))
    _logger.info("levitt %s: %s (%s)", m, report.verdict, cls.value)
    return report


def lattice_points(radius: int) -> Iterator[Point]:
    """Nonzero points with max-norm <= radius, by increasing norm then lexicographically."""
    for r in range(1, radius + 1):
        for v in product(range(-r, r + 1), repeat=2):
            if max(abs(v[0]), abs(v[1])) == r:
                yield v


def find_violation(
    m: IntMatrix2, order: LatticeOrder, radius: Optional[int] = None
) -> Optional[Point]:
    """First lattice point whose sign under `order` changes when m is applied."""
    radius = settings.LEVITT_SEARCH_RADIUS if radius is None else radius
    for v in lattice_points(radius):
        if order.sign(m.apply(v)) != order.sign(v):
            return v
    return None


def order_catalog() -> List[LatticeOrder]:
    return [
        LEX,
        SWAPPED_LEX,
        EigenOrder(IntMatrix2(2, 1, 1, 1)),
        EigenOrder(IntMatrix2(1, 1, 1, 2)),
    ]


__all__ = [
    "QuadNum",
    "IntMatrix2",
    "LatticeOrder",
    "LexOrder",
    "SwappedLexOrder",
    "EigenOrder",
    "EigenlineOrder",
    "LEX",
    "SWAPPED_LEX",
    "EigenClass",
    "LevittReport",
    "lex_compare",
    "eigen_sign",
    "levitt_check",
    "matrix_period",
    "lattice_points",
    "find_violation",
    "order_catalog",
]
