"""Sign and three-way ordering values used by every order oracle."""
from __future__ import annotations

from enum import IntEnum


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value) -> "Sign":
        if value > 0:
            return cls.POSITIVE
        if value < 0:
            return cls.NEGATIVE
        return cls.ZERO

    def __neg__(self) -> "Sign":  # type: ignore[override]
        return Sign(-int(self))


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def from_cone(cls, sign: Sign) -> "Ordering":
        """Ordering of (u, v) given the sign of u^-1 v: u < v iff u^-1 v is positive."""
        return cls(-int(sign))

    def reverse(self) -> "Ordering":
        return Ordering(-int(self))


__all__ = ["Sign", "Ordering"]
