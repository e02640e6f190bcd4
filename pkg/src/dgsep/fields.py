"""Exact scalar arithmetic over Q and the prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import DivisionByZero, FormatError

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class Field:
    """Arithmetic context for Q (``characteristic == 0``) or F_p.

    Elements of Q are ``Fraction`` instances, elements of F_p are ints in
    ``range(p)``. Both are canonical, so ``==`` is field equality.
    """

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or c < 0 or (c != 0 and not _is_prime(c)):
            raise FormatError(f"characteristic must be 0 or a prime, got {c!r}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x) -> Scalar:
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise DivisionByZero(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[Scalar]:
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return iter(range(self.characteristic))

    def random(self, rng, bound: int = 5) -> Scalar:
        if self.characteristic == 0:
            return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        return rng.randrange(self.characteristic)

    def is_invertible_integer(self, n: int) -> bool:
        return characteristic_is_invertible(self, n)

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def characteristic_is_invertible(field: Field, n: int) -> bool:
    """True iff ``n * 1`` is a unit of ``field``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return field.characteristic == 0 or n % field.characteristic != 0


def parse_field(name: str) -> Field:
    """Parse ``"Q"``, ``"F5"`` or ``"F_5"``."""
    s = name.strip().replace("_", "")
    if s in ("Q", "QQ"):
        return QQ
    if s[:1] in ("F", "f") and s[1:].isdigit():
        return Field(int(s[1:]))
    raise FormatError(f"unknown field {name!r}")
