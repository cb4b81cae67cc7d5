"""Ambient ring parameters and shared error types.

Everything in this package computes inside P_n = E(x_1,...,x_n) (x) F_p[y_1,...,y_n]
for an odd prime p: x_i has degree 1 and squares to zero, y_i has degree 2.
A Context pins (p, n); elements from different contexts never mix.
"""

from __future__ import annotations

from dataclasses import dataclass

# Exponents are kept below this bound so they always fit in a signed 64-bit
# word (numpy kernels rely on it).  Going past it raises, never wraps.
EXP_LIMIT = 1 << 62


class ContextMismatchError(ValueError):
    """Operands live in different (p, n) contexts."""


class ExponentOverflowError(OverflowError):
    """A y-exponent left the checked 64-bit range."""


class ExactDivisionError(ArithmeticError):
    """Division requested where the divisor does not divide exactly."""


class ParseError(ValueError):
    """Malformed textual input; carries a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Context:
    """The pair (p, n): odd prime coefficient field and number of generators."""

    p: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not _is_odd_prime(self.p):
            raise ValueError(
                f"p must be an odd prime (p = 2 is not supported), got {self.p!r}"
            )
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")

    # Convenience constructors; the real work happens in algebra.py.
    def zero(self):
        from . import algebra

        return algebra.Element(self, {})

    def one(self):
        from . import algebra

        return algebra.scalar(self, 1)

    def scalar(self, c: int):
        from . import algebra

        return algebra.scalar(self, c)

    def x(self, i: int):
        from . import algebra

        return algebra.make_generator(self, "x", i)

    def y(self, i: int):
        from . import algebra

        return algebra.make_generator(self, "y", i)

    def check_same(self, other: "Context") -> None:
        if self != other:
            raise ContextMismatchError(f"context mismatch: {self} vs {other}")

    def __str__(self) -> str:
        return f"(p={self.p}, n={self.n})"
