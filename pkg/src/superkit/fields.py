"""Ground field arithmetic: exact rationals or a prime field of odd order.

A FieldSpec with p == 0 works over Fraction; p >= 3 (odd prime) works over
ints reduced mod p.  Characteristic 2 is rejected because half of the sign
conventions in this package collapse there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]


def _is_prime(n: int) -> bool:
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


@dataclass(frozen=True)
class FieldSpec:
    """p == 0 means the rationals; otherwise an odd prime modulus."""

    p: int = 0

    def __post_init__(self):
        if self.p == 0:
            return
        if self.p == 2 or not _is_prime(self.p):
            raise ValueError(f"modulus must be 0 or an odd prime, got {self.p}")

    @property
    def char(self) -> int:
        return self.p

    def coerce(self, value) -> Scalar:
        """Bring an int / Fraction into canonical form for this field."""
        if self.p == 0:
            if isinstance(value, Fraction):
                return value
            return Fraction(value)
        if isinstance(value, Fraction):
            num = value.numerator % self.p
            den = value.denominator % self.p
            return (num * self.inv(den)) % self.p
        return int(value) % self.p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p else -a

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return Fraction(1) / a
        return pow(int(a), self.p - 2, self.p)

    def is_zero(self, a: Scalar) -> bool:
        return (a % self.p == 0) if self.p else a == 0

    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    def fmt(self, a: Scalar) -> str:
        return str(a)


RATIONALS = FieldSpec(0)
