"""Order oracles and the extension combinator.

For a short exact sequence 1 -> F -> G -> H -> 1 with ordered F and H, the
positive cone P_G = p^-1(P_H) u P_F orders G: the sign of g is the sign of its
image in H, and only when that image is trivial, the sign of g as an element of
F. The result is always left-invariant. It is bi-invariant when both inputs are
and the F-order is invariant under conjugation by G; that last condition cannot
be checked here, so the caller asserts it (`conjugation_invariant=True`) and the
consuming modules back the assertion with randomized tests.

The Klein bottle group <x, y : x y x^-1 = y^-1> is the standard example that is
left-orderable but not bi-orderable; its order is built with the same combinator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Generic, Optional, TypeVar

from app.core.errors import ExtensionContractError, ParseError
from app.core.ordering import Ordering, Sign
from app.services.words import Word, X, Y
from app.services.zn_order import LatticeOrder, Point

E = TypeVar("E")
Q = TypeVar("Q")
K = TypeVar("K")


class Invariance(str, Enum):
    LEFT = "left-invariant"
    BI = "bi-invariant"


@dataclass(frozen=True)
class Decision:
    """The sign of an element plus which stage of the construction decided it."""

    sign: Sign
    stage: str
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"sign": int(self.sign), "stage": self.stage, "details": self.details}


@dataclass(frozen=True)
class OrderOracle(Generic[E]):
    decide: Callable[[E], Decision]
    multiply: Callable[[E, E], E]
    invert: Callable[[E], E]
    invariance: Invariance = Invariance.LEFT
    name: str = "order"

    def sign(self, g: E) -> Sign:
        return self.decide(g).sign

    def difference(self, u: E, v: E) -> E:
        return self.multiply(self.invert(u), v)

    def compare(self, u: E, v: E) -> Ordering:
        """u < v iff u^-1 v lies in the positive cone."""
        return Ordering.from_cone(self.sign(self.difference(u, v)))

    def explain(self, u: E, v: E) -> Decision:
        return self.decide(self.difference(u, v))

    @property
    def is_bi_invariant(self) -> bool:
        return self.invariance is Invariance.BI


@dataclass(frozen=True)
class ExtensionSpec(Generic[E, Q, K]):
    project: Callable[[E], Q]
    kernel_cast: Callable[[E], Optional[K]]
    quotient: OrderOracle[Q]
    kernel: OrderOracle[K]
    multiply: Callable[[E, E], E]
    invert: Callable[[E], E]
    conjugation_invariant: bool = False
    name: str = "extension"


def extend_order(spec: ExtensionSpec) -> OrderOracle:
    def decide(g) -> Decision:
        image = spec.project(g)
        top = spec.quotient.decide(image)
        if top.sign:
            return Decision(top.sign, "quotient", {"quotient_stage": top.stage, **top.details})
        inner = spec.kernel_cast(g)
        if inner is None:
            raise ExtensionContractError(
                f"{spec.name}: element with trivial image has no kernel representative"
            )
        bottom = spec.kernel.decide(inner)
        return Decision(bottom.sign, "kernel", {"kernel_stage": bottom.stage, **bottom.details})

    bi = (
        spec.quotient.is_bi_invariant
        and spec.kernel.is_bi_invariant
        and spec.conjugation_invariant
    )
    return OrderOracle(
        decide=decide,
        multiply=spec.multiply,
        invert=spec.invert,
        invariance=Invariance.BI if bi else Invariance.LEFT,
        name=spec.name,
    )


def integer_oracle(name: str = "Z") -> OrderOracle[int]:
    return OrderOracle(
        decide=lambda n: Decision(Sign.of(n), "integer", {"value": n}),
        multiply=lambda m, n: m + n,
        invert=lambda n: -n,
        invariance=Invariance.BI,
        name=name,
    )


def lattice_oracle(order: LatticeOrder) -> OrderOracle[Point]:
    """Any bi-order of Z^2 as an oracle on points; Z^2 is abelian so it is bi-invariant."""
    return OrderOracle(
        decide=lambda v: Decision(order.sign(v), "lattice", {"point": list(v), "order": order.describe()}),
        multiply=lambda v, w: (v[0] + w[0], v[1] + w[1]),
        invert=lambda v: (-v[0], -v[1]),
        invariance=Invariance.BI,
        name=order.describe(),
    )


# Klein bottle group


@dataclass(frozen=True)
class KleinElement:
    """x^m y^n; (x^m y^n)(x^m' y^n') = x^(m+m') y^((-1)^m' n + n')."""

    m: int = 0
    n: int = 0

    def __mul__(self, other: "KleinElement") -> "KleinElement":
        flip = -1 if other.m % 2 else 1
        return KleinElement(self.m + other.m, flip * self.n + other.n)

    def inverse(self) -> "KleinElement":
        flip = -1 if self.m % 2 else 1
        return KleinElement(-self.m, -flip * self.n)

    def __str__(self) -> str:
        return f"x^{self.m} y^{self.n}"


KLEIN_GENERATORS = (X, Y)


def klein_of_word(w: Word) -> KleinElement:
    result = KleinElement()
    for label, exp in w:
        if label == X:
            result = result * KleinElement(exp, 0)
        elif label == Y:
            result = result * KleinElement(0, exp)
        else:
            raise ParseError(f"generator {label} is not in the Klein bottle group")
    return result


def klein_oracle() -> OrderOracle[KleinElement]:
    spec = ExtensionSpec(
        project=lambda g: g.m,
        kernel_cast=lambda g: g.n if g.m == 0 else None,
        quotient=integer_oracle("x-exponent"),
        kernel=integer_oracle("y-exponent"),
        multiply=lambda g, h: g * h,
        invert=lambda g: g.inverse(),
        # conjugation by x negates y, so the kernel order is not conjugation invariant
        conjugation_invariant=False,
        name="klein",
    )
    return extend_order(spec)


_KLEIN = klein_oracle()


def klein_compare(u: Word, v: Word) -> Ordering:
    return _KLEIN.compare(klein_of_word(u), klein_of_word(v))


__all__ = [
    "Invariance",
    "Decision",
    "OrderOracle",
    "ExtensionSpec",
    "extend_order",
    "integer_oracle",
    "lattice_oracle",
    "KleinElement",
    "KLEIN_GENERATORS",
    "klein_of_word",
    "klein_oracle",
    "klein_compare",
]
