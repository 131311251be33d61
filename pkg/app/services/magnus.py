"""Truncated noncommutative power series over Z and the Magnus map.

Variables are lattice points (i, j) standing for X_{i,j}; a monomial is a tuple
of variables and its degree is its length. A `TruncatedSeries` carries its
truncation degree D and never stores a term of degree > D or a zero coefficient.
Arithmetic between series of different D raises TruncationMismatchError rather
than silently truncating to the smaller one.
"""
from __future__ import annotations

from functools import cmp_to_key
from math import factorial
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Mapping, Optional, Protocol, Tuple, Union

from app.core.errors import NonUnitError, TruncationMismatchError, UnknownGeneratorError
from app.services.words import GenLabel, Word

Variable = Tuple[int, int]
Monomial = Tuple[Variable, ...]
VarMap = Union[Mapping[GenLabel, Variable], Callable[[GenLabel], Variable]]


class VariableOrder(Protocol):
    def compare(self, p: Variable, q: Variable) -> int: ...


class _LexVariables:
    def compare(self, p: Variable, q: Variable) -> int:
        return (p > q) - (p < q)


LEX_VARIABLES = _LexVariables()


def monomial_compare(m1: Monomial, m2: Monomial, order: VariableOrder = LEX_VARIABLES) -> int:
    """Degree first, then the first differing position decides under `order`."""
    if len(m1) != len(m2):
        return -1 if len(m1) < len(m2) else 1
    for p, q in zip(m1, m2):
        if p != q:
            return order.compare(p, q)
    return 0


def format_monomial(m: Monomial) -> str:
    return "·".join(f"X[{i},{j}]" for i, j in m)


class TruncatedSeries:
    __slots__ = ("_degree", "_terms")

    def __init__(self, degree: int, terms: Optional[Mapping[Monomial, int]] = None):
        if degree < 1:
            raise ValueError(f"truncation degree must be positive, got {degree}")
        self._degree = degree
        self._terms: Dict[Monomial, int] = {
            m: c for m, c in (terms or {}).items() if c != 0 and len(m) <= degree
        }

    @classmethod
    def constant(cls, value: int, degree: int) -> "TruncatedSeries":
        return cls(degree, {(): value})

    @classmethod
    def one(cls, degree: int) -> "TruncatedSeries":
        return cls.constant(1, degree)

    @classmethod
    def variable(cls, var: Variable, degree: int) -> "TruncatedSeries":
        return cls(degree, {(var,): 1})

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    @property
    def constant_term(self) -> int:
        return self._terms.get((), 0)

    @property
    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v in m)

    def nonconstant_terms(self) -> Iterable[Tuple[Monomial, int]]:
        return ((m, c) for m, c in self._terms.items() if m)

    def _check(self, other: "TruncatedSeries") -> None:
        if self._degree != other._degree:
            raise TruncationMismatchError(
                f"series truncated at {self._degree} and {other._degree} cannot be combined"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return TruncatedSeries(self._degree, acc)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self._degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        acc: Dict[Monomial, int] = {}
        bound = self._degree
        for m1, c1 in self._terms.items():
            room = bound - len(m1)
            for m2, c2 in other._terms.items():
                if len(m2) <= room:
                    m = m1 + m2
                    acc[m] = acc.get(m, 0) + c1 * c2
        return TruncatedSeries(bound, acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._degree == other._degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._degree, frozenset(self._terms.items())))

    def sorted_terms(self, order: VariableOrder = LEX_VARIABLES) -> list:
        key = cmp_to_key(lambda a, b: monomial_compare(a[0], b[0], order))
        return sorted(self._terms.items(), key=key)

    def format(self, order: VariableOrder = LEX_VARIABLES) -> str:
        parts: list[str] = []
        for m, c in self.sorted_terms(order):
            if not m:
                body = str(abs(c))
            elif abs(c) == 1:
                body = format_monomial(m)
            else:
                body = f"{abs(c)}·{format_monomial(m)}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"TruncatedSeries(D={self._degree}, {self.format()!r})"


def series_multiply(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s * t


def unit_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Inverse of a unit 1 + e via the geometric series 1 - e + e^2 - ... (to degree D)."""
    if s.constant_term != 1:
        raise NonUnitError(f"constant term is {s.constant_term}, expected 1")
    one = TruncatedSeries.one(s.degree)
    eps = s - one
    minus_eps = -eps
    result = one
    power = one
    # eps has no constant term, so eps^k vanishes past k = D
    for _ in range(s.degree):
        power = power * minus_eps
        if not power.terms:
            break
        result = result + power
    return result


def _binomial(e: int, k: int) -> int:
    num = 1
    for i in range(k):
        num *= e - i
    return num // factorial(k)


def _syllable_series(var: Variable, exp: int, degree: int) -> TruncatedSeries:
    # (1 + X)^e with the generalized binomial coefficient, valid for e < 0 too
    return TruncatedSeries(degree, {(var,) * k: _binomial(exp, k) for k in range(degree + 1)})


def index_varmap(label: GenLabel) -> Variable:
    if label.index is None:
        raise UnknownGeneratorError(f"generator {label} has no Magnus variable")
    return label.index


def _resolve(varmap: Optional[VarMap]) -> Callable[[GenLabel], Variable]:
    if varmap is None:
        return index_varmap
    if callable(varmap):
        return varmap
    mapping = varmap

    def lookup(label: GenLabel) -> Variable:
        try:
            return mapping[label]
        except KeyError:
            raise UnknownGeneratorError(f"generator {label} has no Magnus variable") from None

    return lookup


def magnus_expand(w: Word, degree: int, varmap: Optional[VarMap] = None) -> TruncatedSeries:
    """Image of `w` under x -> 1 + X, truncated at `degree`."""
    to_var = _resolve(varmap)
    result = TruncatedSeries.one(degree)
    for label, exp in w:
        result = result * _syllable_series(to_var(label), exp, degree)
    return result


def lowest_term(
    s: TruncatedSeries, order: VariableOrder = LEX_VARIABLES
) -> Optional[Tuple[Monomial, int]]:
    best: Optional[Tuple[Monomial, int]] = None
    for m, c in s.nonconstant_terms():
        if best is None or monomial_compare(m, best[0], order) < 0:
            best = (m, c)
    return best


__all__ = [
    "Variable",
    "Monomial",
    "VariableOrder",
    "LEX_VARIABLES",
    "TruncatedSeries",
    "monomial_compare",
    "format_monomial",
    "series_multiply",
    "unit_inverse",
    "magnus_expand",
    "lowest_term",
    "index_varmap",
]
