"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

A :class:`FieldSpec` is a small immutable value describing the field all other
objects compute over.  Rational elements are ``fractions.Fraction`` (always
reduced); prime-field elements are plain ``int`` in canonical range ``0..p-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction or arithmetic (e.g. division by zero)."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "rational" if self.p is None else f"prime:{self.p}"

    # -- element constructors ------------------------------------------------

    def from_int(self, n: int):
        return Fraction(n) if self.p is None else n % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.is_zero(a):
            raise FieldError("division by zero")
        return 1 / a if self.p is None else pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b if self.p is None else (a - b) % self.p == 0

    # -- text ----------------------------------------------------------------

    def format_scalar(self, a) -> str:
        if self.p is None:
            f = Fraction(a)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        r = a % self.p
        # balanced representative: small negatives print as negatives
        return str(r - self.p) if r > self.p // 2 else str(r)

    def parse_scalar(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if self.p is None:
                return Fraction(int(num), int(den))
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(text))


RATIONALS = FieldSpec()


def parse_field(text: str) -> FieldSpec:
    """Parse ``rational`` or ``prime:<p>``."""
    text = text.strip().lower()
    if text in ("rational", "rationals", "qq", "q"):
        return RATIONALS
    if text.startswith("prime:"):
        return FieldSpec(p=int(text.split(":", 1)[1]))
    raise FieldError(f"unknown field {text!r} (expected 'rational' or 'prime:<p>')")


#: Classical computer-algebra default for fast modular runs.
DEFAULT_PRIME = 32003
