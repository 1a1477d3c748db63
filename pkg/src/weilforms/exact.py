"""Exact rational, rational-mod-1, and cyclotomic arithmetic.

Rationals are ``fractions.Fraction`` throughout the package: arbitrary
precision, always in lowest terms, positive denominator.  This module adds
the two things the standard library does not have: residues mod 1 (``QmodZ``)
and exact elements of cyclotomic fields (``CyclotomicNumber``), which carry
all the transcendence in the library.  Stored q-expansion coefficients are
always plain rationals.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DomainError, ParseError

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (lowest terms not required on input)."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ParseError(f"not a rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    """Render in lowest terms, "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def mod1(x: Fraction) -> Fraction:
    return Fraction(x) % 1


@dataclass(frozen=True)
class QmodZ:
    """A rational residue mod 1, stored by its representative in [0, 1)."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", mod1(Fraction(self.value)))

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.value + other.value)

    def __neg__(self) -> "QmodZ":
        return QmodZ(-self.value)

    def __sub__(self, other: "QmodZ") -> "QmodZ":
        return self + (-other)

    def __mul__(self, n: int) -> "QmodZ":
        return QmodZ(self.value * n)

    __rmul__ = __mul__

    def __str__(self):
        return format_rational(self.value)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (den monic); coefficients ascending.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        out[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree."""
    if n < 1:
        raise DomainError(f"cyclotomic polynomial undefined for n={n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(order: int) -> tuple[tuple[Fraction, ...], ...]:
    """X^k mod Phi_order for k = 0 .. max(order, 2*phi-1), as phi-vectors."""
    phi_poly = cyclotomic_polynomial(order)
    phi = len(phi_poly) - 1
    top = max(order, 2 * phi - 1) + 1
    table: list[tuple[Fraction, ...]] = []
    current = [Fraction(0)] * phi
    if phi > 0:
        current[0] = Fraction(1)
    table.append(tuple(current))
    for _ in range(1, top):
        shifted = [Fraction(0)] + current[:]
        lead = shifted.pop()  # coefficient of X^phi
        if lead:
            for i in range(phi):
                shifted[i] -= lead * phi_poly[i]
        current = shifted
        table.append(tuple(current))
    return tuple(table)


class CyclotomicNumber:
    """An exact element of Q(zeta_L) in the power basis mod the L-th cyclotomic polynomial.

    Values of different orders combine by lifting both to the lcm of the
    orders; the order of a value is whatever it was constructed with and is
    never minimized.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise DomainError(f"cyclotomic order must be positive, got {order}")
        phi = len(cyclotomic_polynomial(order)) - 1
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > phi:
            # reduce the high-degree part through the power table
            table = _power_table(order)
            reduced = [Fraction(0)] * phi
            for k, c in enumerate(coeffs):
                if c:
                    row = table[k]
                    for i in range(phi):
                        reduced[i] += c * row[i]
            coeffs = reduced
        elif len(coeffs) < phi:
            coeffs = coeffs + [Fraction(0)] * (phi - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_rational(cls, x, order: int = 1) -> "CyclotomicNumber":
        return cls(order, [Fraction(x)])

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls(order, [])

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("not a rational value")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def lift(self, order2: int) -> "CyclotomicNumber":
        """Re-express in Q(zeta_order2); requires order | order2."""
        if order2 % self.order != 0:
            raise DomainError(f"cannot lift order {self.order} into order {order2}")
        if order2 == self.order:
            return self
        step = order2 // self.order
        table = _power_table(order2)
        phi2 = len(cyclotomic_polynomial(order2)) - 1
        out = [Fraction(0)] * phi2
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[i * step]
                for j in range(phi2):
                    out[j] += c * row[j]
        return CyclotomicNumber(order2, out)

    def _common(self, other: "CyclotomicNumber"):
        if self.order == other.order:
            return self, other
        l = self.order * other.order // gcd(self.order, other.order)
        return self.lift(l), other.lift(l)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other, 1)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [c * other for c in self.coeffs])
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        n = len(a.coeffs)
        conv = [Fraction(0)] * (2 * n - 1 if n else 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return CyclotomicNumber(a.order, conv)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative cyclotomic powers are not supported")
        result = CyclotomicNumber.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """The image under zeta -> zeta^{-1} (complex conjugation)."""
        table = _power_table(self.order)
        phi = len(self.coeffs)
        out = [Fraction(0)] * phi
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(self.order - i) % self.order]
                for j in range(phi):
                    out[j] += c * row[j]
        return CyclotomicNumber(self.order, out)

    def embed(self, conjugate: bool = False) -> complex:
        """Evaluate at zeta_L -> exp(2*pi*i/L) (or its conjugate)."""
        sign = -1.0 if conjugate else 1.0
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(sign * 2j * cmath.pi * i / self.order)
        return total

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other, 1)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CyclotomicNumber(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"

    def to_json_dict(self) -> dict:
        return {"order": self.order, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CyclotomicNumber":
        try:
            order = int(data["order"])
            coeffs = [parse_rational(c) for c in data["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad cyclotomic value: {data!r}") from exc
        return cls(order, coeffs)


def root_of_unity(num: int, den: int) -> CyclotomicNumber:
    """zeta_den^num as an element of order den."""
    if den < 1:
        raise DomainError(f"root of unity denominator must be >= 1, got {den}")
    table = _power_table(den)
    return CyclotomicNumber(den, list(table[num % den]))


def e_of(q) -> CyclotomicNumber:
    """e(q) = exp(2*pi*i*q) for rational q, exactly."""
    if isinstance(q, QmodZ):
        q = q.value
    q = Fraction(q)
    return root_of_unity(q.numerator % q.denominator, q.denominator)
