"""Coefficient fields: prime fields GF(p) and the rationals (p = 0)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """GF(p) for prime p, or QQ when ``p == 0``.

    Elements are plain Python values: ints in ``[0, p)`` for GF(p) and
    ``Fraction`` for QQ.  The field object only knows how to normalize and
    combine them.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p != 0 and not is_prime(p):
            raise ValueError(f"characteristic must be 0 or prime, got {p}")
        self.p = p

    def __repr__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, value):
        """Canonical representative of an int, Fraction or string."""
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * self.inv(value.denominator % self.p)) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_int(self, a) -> int | Fraction:
        """Symmetric representative, used for printing (``p - 1`` prints as ``-1``)."""
        if self.p == 0:
            return a if a.denominator != 1 else a.numerator
        return a - self.p if a > self.p // 2 else a


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


QQ = PrimeField(0)
