"""Exact arithmetic in Q(phi), phi = (1 + sqrt 5) / 2."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class Golden:
    """The number ``a + b*phi`` with rational ``a``, ``b``.  phi**2 = phi + 1."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(x) -> Golden:
        if isinstance(x, Golden):
            return x
        if isinstance(x, (int, Fraction)):
            return Golden(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Golden(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Golden(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Golden(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        bd = self.b * o.b
        return Golden(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        # (a + b phi)(a + b phi') with phi' = 1 - phi
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> Golden:
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("Golden(0)")
        return Golden((self.a + self.b) / nrm, -self.b / nrm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def _sign(self) -> int:
        # sign of a + b*phi, decided exactly: compare a with -b*phi
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        # a + b phi > 0  <=>  2a + b > -b sqrt5
        lhs = 2 * a + b
        if b > 0:
            return 1 if lhs >= 0 or lhs * lhs < 5 * b * b else -1
        return 1 if lhs > 0 and lhs * lhs > 5 * b * b else -1

    def __lt__(self, other):
        return (self - other)._sign() < 0

    def __float__(self):
        return float(self.a) + float(self.b) * (1 + 5**0.5) / 2

    def __repr__(self):
        return f"Golden({self.a}, {self.b})"


PHI = Golden(0, 1)
