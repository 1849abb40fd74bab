"""Univariate polynomials in ``m`` with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class PolynomialQ:
    """Polynomial with ``Fraction`` coefficients in ascending degree.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def constant(cls, c) -> PolynomialQ:
        return cls([c])

    @classmethod
    def linear(cls, a, b) -> PolynomialQ:
        """``a*m + b``."""
        return cls([b, a])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, d: int) -> Fraction:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    @staticmethod
    def _coerce(x) -> PolynomialQ:
        return x if isinstance(x, PolynomialQ) else PolynomialQ([x])

    def __add__(self, other) -> PolynomialQ:
        other = self._coerce(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return PolynomialQ(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> PolynomialQ:
        return PolynomialQ(-c for c in self.coefficients)

    def __sub__(self, other) -> PolynomialQ:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> PolynomialQ:
        return self._coerce(other) - self

    def __mul__(self, other) -> PolynomialQ:
        other = self._coerce(other)
        if not self.coefficients or not other.coefficients:
            return PolynomialQ()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return PolynomialQ(out)

    __rmul__ = __mul__

    def divmod(self, other) -> tuple[PolynomialQ, PolynomialQ]:
        other = self._coerce(other)
        if not other.coefficients:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coefficients)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for d in range(len(rem) - 1, dq - 1, -1):
            f = rem[d] / other.leading
            quot[d - dq] = f
            if f:
                for i, b in enumerate(other.coefficients):
                    rem[d - dq + i] -= f * b
        return PolynomialQ(quot), PolynomialQ(rem[:dq])

    def exact_div(self, other) -> PolynomialQ:
        """Quotient; raises ``ArithmeticError`` if the division leaves a remainder."""
        q, r = self.divmod(other)
        if r.coefficients:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, PolynomialQ) else PolynomialQ()
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolynomialQ([other])
        if not isinstance(other, PolynomialQ):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"PolynomialQ({[str(c) for c in self.coefficients]})"

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if not c:
                continue
            mono = "" if d == 0 else ("m" if d == 1 else f"m^{d}")
            if d and c == 1:
                body = mono
            elif d and c == -1:
                body = "-" + mono
            else:
                body = f"({c})" if c.denominator != 1 else str(c)
                body = body + ("*" + mono if mono else "")
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ")


M = PolynomialQ([0, 1])
