"""Dense homogeneous polynomials in two variables s, t over an exact field.

Coefficients are stored in descending powers of s: ``coeffs[i]`` multiplies
``s^(degree-i) * t^i``.  The strictly zero form has ``degree == -1`` and no
coefficients; an all-zero coefficient vector of degree D is also representable
and both answer ``is_zero()``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import FieldSpec


class DegreeError(ValueError):
    """Operands with incompatible degrees."""


@dataclass(frozen=True)
class BinaryForm:
    field: FieldSpec
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < -1:
            raise DegreeError(f"degree {self.degree} < -1")
        if self.degree == -1 and self.coeffs:
            raise DegreeError("strictly zero form carries no coefficients")
        if self.degree >= 0 and len(self.coeffs) != self.degree + 1:
            raise DegreeError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, got {len(self.coeffs)}"
            )

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(field: FieldSpec) -> "BinaryForm":
        return BinaryForm(field, -1, ())

    @staticmethod
    def zero_of_degree(field: FieldSpec, degree: int) -> "BinaryForm":
        return BinaryForm(field, degree, (field.zero,) * (degree + 1))

    @staticmethod
    def constant(field: FieldSpec, value) -> "BinaryForm":
        return BinaryForm(field, 0, (value,))

    @staticmethod
    def monomial(field: FieldSpec, degree: int, t_power: int, coeff=None) -> "BinaryForm":
        """The form c * s^(degree - t_power) * t^t_power."""
        if not 0 <= t_power <= degree:
            raise DegreeError(f"t-power {t_power} outside 0..{degree}")
        c = field.one if coeff is None else coeff
        coeffs = [field.zero] * (degree + 1)
        coeffs[t_power] = c
        return BinaryForm(field, degree, tuple(coeffs))

    @staticmethod
    def from_coeffs(field: FieldSpec, coeffs: Iterable) -> "BinaryForm":
        coeffs = tuple(coeffs)
        return BinaryForm(field, len(coeffs) - 1, coeffs)

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.degree == -1 or all(self.field.is_zero(c) for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def coeff(self, t_power: int):
        """Coefficient of s^(degree - t_power) t^t_power; zero outside range."""
        if self.degree == -1 or not 0 <= t_power <= self.degree:
            return self.field.zero
        return self.coeffs[t_power]

    # -- arithmetic -----------------------------------------------------------

    def add(self, other: "BinaryForm") -> "BinaryForm":
        return self._addsub(other, sub=False)

    def sub(self, other: "BinaryForm") -> "BinaryForm":
        return self._addsub(other, sub=True)

    def _addsub(self, other: "BinaryForm", sub: bool) -> "BinaryForm":
        K = self.field
        if self.degree == -1 and other.degree == -1:
            return self
        if self.degree == -1:
            return other.neg() if sub else other
        if other.degree == -1:
            return self
        if self.degree != other.degree:
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")
        op = K.sub if sub else K.add
        return BinaryForm(K, self.degree, tuple(op(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def neg(self) -> "BinaryForm":
        if self.degree == -1:
            return self
        return BinaryForm(self.field, self.degree, tuple(self.field.neg(c) for c in self.coeffs))

    def scale(self, scalar) -> "BinaryForm":
        if self.degree == -1:
            return self
        K = self.field
        return BinaryForm(K, self.degree, tuple(K.mul(scalar, c) for c in self.coeffs))

    def mul(self, other: "BinaryForm") -> "BinaryForm":
        K = self.field
        if self.degree == -1 or other.degree == -1:
            return BinaryForm.zero(K)
        out = [K.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if K.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = K.add(out[i + j], K.mul(a, b))
        return BinaryForm(K, self.degree + other.degree, tuple(out))

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __mul__(self, other):
        return self.mul(other)

    def __neg__(self):
        return self.neg()

    def equals(self, other: "BinaryForm") -> bool:
        """Equality of values: all zero forms are equal regardless of degree slot."""
        if self.is_zero() and other.is_zero():
            return True
        if self.is_zero() or other.is_zero():
            return False
        return self.degree == other.degree and all(
            self.field.eq(a, b) for a, b in zip(self.coeffs, other.coeffs)
        )

    # -- evaluation -----------------------------------------------------------

    def eval(self, point) -> object:
        """Exact evaluation at (s0, t0) != (0, 0)."""
        K = self.field
        s0, t0 = point
        if K.is_zero(s0) and K.is_zero(t0):
            raise ValueError("evaluation point (0, 0) is not a point of the projective line")
        if self.degree == -1:
            return K.zero
        # Horner in t/s-split form: sum c_i s^(d-i) t^i.
        acc = K.zero
        spow = K.one
        tpow = [K.one]
        for _ in range(self.degree):
            tpow.append(K.mul(tpow[-1], t0))
        for i in range(self.degree, -1, -1):
            acc = K.add(acc, K.mul(self.coeffs[i], K.mul(spow, tpow[i])))
            spow = K.mul(spow, s0)
        return acc

    # -- valuations and division ----------------------------------------------

    def t_valuation(self) -> int:
        """Largest k with t^k dividing the form (for nonzero forms)."""
        if self.is_zero():
            raise ValueError("zero form has no valuation")
        return next(i for i, c in enumerate(self.coeffs) if not self.field.is_zero(c))

    def s_valuation(self) -> int:
        if self.is_zero():
            raise ValueError("zero form has no valuation")
        last = max(i for i, c in enumerate(self.coeffs) if not self.field.is_zero(c))
        return self.degree - last

    def shift(self, s_power: int, t_power: int) -> "BinaryForm":
        """Multiply by the monomial s^s_power * t^t_power (powers may be negative
        when the corresponding valuation allows exact division)."""
        if self.degree == -1:
            return self
        if self.is_zero():
            d = self.degree + s_power + t_power
            return BinaryForm.zero_of_degree(self.field, d) if d >= 0 else BinaryForm.zero(self.field)
        if t_power < 0 and self.t_valuation() < -t_power:
            raise DegreeError("monomial division not exact in t")
        if s_power < 0 and self.s_valuation() < -s_power:
            raise DegreeError("monomial division not exact in s")
        K = self.field
        d = self.degree + s_power + t_power
        out = [K.zero] * (d + 1)
        for i, c in enumerate(self.coeffs):
            if not K.is_zero(c):
                out[i + t_power] = c
        return BinaryForm(K, d, tuple(out))

    def divexact(self, divisor: "BinaryForm") -> "BinaryForm":
        """Exact quotient self / divisor; raises DegreeError on nonzero remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            d = self.degree - divisor.degree
            return BinaryForm.zero(self.field) if self.degree == -1 or d < 0 else BinaryForm.zero_of_degree(self.field, d)
        K = self.field
        if self.degree < divisor.degree:
            raise DegreeError("quotient degree would be negative")
        # Long division on coefficient vectors, leading coefficient = lowest t-power.
        rem = list(self.coeffs)
        qdeg = self.degree - divisor.degree
        quot = [K.zero] * (qdeg + 1)
        dv = divisor.t_valuation()
        lead = divisor.coeffs[dv]
        for i in range(qdeg + 1):
            c = K.div(rem[i + dv], lead)
            quot[i] = c
            if not K.is_zero(c):
                for j in range(divisor.degree + 1):
                    rem[i + j] = K.sub(rem[i + j], K.mul(c, divisor.coeff(j)))
        if any(not K.is_zero(c) for c in rem):
            raise DegreeError("division not exact")
        return BinaryForm(K, qdeg, tuple(quot))

    def __repr__(self) -> str:
        return f"BinaryForm({format_binary_form(self)!r})"


def bf_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Greatest common divisor, monic in the dehomogenization at s = 1.

    Common powers of s and t are split off first; the remaining parts are
    reduced by the Euclidean algorithm on their dehomogenizations.
    """
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of strictly zero forms")
    K = nonzero[0].field
    s_val = min(f.s_valuation() for f in nonzero)
    t_val = min(f.t_valuation() for f in nonzero)

    def core(f: BinaryForm) -> list:
        # dehomogenization at s=1 of f stripped of its s- and t-power factors
        lo, hi = f.t_valuation(), f.degree - f.s_valuation()
        return list(f.coeffs[lo : hi + 1])

    g = core(nonzero[0])
    for f in nonzero[1:]:
        g = _poly_gcd(K, g, core(f))
        if len(g) == 1:
            break
    g = _poly_monic(K, g)
    deg = s_val + t_val + len(g) - 1
    coeffs = [K.zero] * (deg + 1)
    for i, c in enumerate(g):
        coeffs[t_val + i] = c
    return BinaryForm(K, deg, tuple(coeffs))


def _poly_trim(K: FieldSpec, a: list) -> list:
    while len(a) > 1 and K.is_zero(a[-1]):
        a.pop()
    if not a:
        a.append(K.zero)
    return a


def _poly_monic(K: FieldSpec, a: list) -> list:
    inv = K.inv(a[-1])
    return [K.mul(inv, c) for c in a]


def _poly_gcd(K: FieldSpec, a: list, b: list) -> list:
    a = _poly_trim(K, list(a))
    b = _poly_trim(K, list(b))
    while not (len(b) == 1 and K.is_zero(b[0])):
        a, b = b, _poly_mod(K, a, b)
    return a


def _poly_mod(K: FieldSpec, a: list, b: list) -> list:
    r = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(r) - 1 >= db and not (len(r) == 1 and K.is_zero(r[0])):
        c = K.div(r[-1], lead)
        off = len(r) - 1 - db
        for i in range(db + 1):
            r[off + i] = K.sub(r[off + i], K.mul(c, b[i]))
        r.pop()
        _poly_trim(K, r)
        if len(r) == 1 and K.is_zero(r[0]):
            break
    return _poly_trim(K, r)


# -- text grammar --------------------------------------------------------------
#
# Terms `c*s^a*t^b` joined by + / -, exponent omitted when 1, `*` optional,
# e.g. `-s^11+t^11`, `s^10*t`, `3*s*t^2`.

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[st])(?:\^(?P<exp>\d+))?|(?P<op>[+*-]))")


def parse_binary_form(text: str, field: FieldSpec, degree: int | None = None) -> BinaryForm:
    """Parse the textual form grammar; `degree` pins the slot for zero input."""
    terms = []  # (coeff, s_exp, t_exp)
    pos = 0
    sign = 1
    cur = None  # (coeff, s, t) of term under construction
    text = text.strip()
    if text in ("0", ""):
        if degree is None or degree < 0:
            return BinaryForm.zero(field)
        return BinaryForm.zero_of_degree(field, degree)

    def flush():
        nonlocal cur, sign
        if cur is not None:
            terms.append(cur)
        cur = None
        sign = 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"syntax error in binary form at position {pos}: {text[pos:]!r}")
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                if cur is None:
                    raise ValueError(f"unexpected '*' at position {m.start()}")
                continue
            flush()
            if op == "-":
                sign = -1
        elif m.group("num"):
            c = field.parse_scalar(m.group("num"))
            if sign < 0:
                c = field.neg(c)
            if cur is None:
                cur = (c, 0, 0)
            else:
                cur = (field.mul(cur[0], c), cur[1], cur[2])
        else:
            var, exp = m.group("var"), int(m.group("exp") or 1)
            if cur is None:
                c = field.one if sign > 0 else field.neg(field.one)
                cur = (c, 0, 0)
            cur = (cur[0], cur[1] + exp, cur[2]) if var == "s" else (cur[0], cur[1], cur[2] + exp)
    flush()
    if not terms:
        raise ValueError("empty binary form")
    deg = terms[0][1] + terms[0][2]
    for _, a, b in terms:
        if a + b != deg:
            raise ValueError(f"non-homogeneous binary form: degree {a + b} term among degree {deg}")
    if degree is not None and degree != deg:
        raise DegreeError(f"expected degree {degree}, parsed degree {deg}")
    coeffs = [field.zero] * (deg + 1)
    for c, _, b in terms:
        coeffs[b] = field.add(coeffs[b], c)
    return BinaryForm(field, deg, tuple(coeffs))


def format_binary_form(f: BinaryForm) -> str:
    if f.is_zero():
        return "0"
    K = f.field
    parts = []
    for i, c in enumerate(f.coeffs):
        if K.is_zero(c):
            continue
        sexp, texp = f.degree - i, i
        factors = []
        if sexp > 0:
            factors.append("s" if sexp == 1 else f"s^{sexp}")
        if texp > 0:
            factors.append("t" if texp == 1 else f"t^{texp}")
        txt = K.format_scalar(c)
        neg = txt.startswith("-")
        if neg:
            txt = txt[1:]
        if factors and txt == "1":
            body = "*".join(factors)
        else:
            body = "*".join([txt] + factors)
        parts.append(("-" if neg else "+", body))
    out = ""
    for sign, body in parts:
        if not out:
            out = body if sign == "+" else "-" + body
        else:
            out += sign + body
    return out
