"""Closed forms and the f_k recursion, computed from type invariants alone."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from .diagram import CoxeterType, IrreducibleType, as_type, delete_vertex, invariants
from .polynomial import M, PolynomialQ


def _irreducible(t) -> IrreducibleType:
    if isinstance(t, IrreducibleType):
        return t
    t = as_type(t)
    if not t.is_irreducible:
        raise ValueError(f"{t} is not irreducible")
    return t.factors[0]


def _exact(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {x}")
    return x.numerator


# -- Fuss-Catalan numbers --------------------------------------------------------


def _fuss_catalan_irreducible(t: IrreducibleType, m):
    h, exps = t.coxeter_number, t.exponents
    denom = prod(e + 1 for e in exps)
    if isinstance(m, PolynomialQ):
        return prod((h * m + (e + 1) for e in exps), start=PolynomialQ.constant(1)) * Fraction(1, denom)
    return _exact(Fraction(prod(m * h + e + 1 for e in exps), denom), f"Cat^({m})({t})")


def fuss_catalan(t, m):
    """``prod (mh + e_i + 1)/(e_i + 1)``, multiplied over irreducible factors.

    ``m`` may be an int or a ``PolynomialQ`` (use ``polynomial.M`` for the
    indeterminate).
    """
    t = as_type(t)
    one = PolynomialQ.constant(1) if isinstance(m, PolynomialQ) else 1
    return prod((_fuss_catalan_irreducible(f, m) for f in t.factors), start=one)


def nc_closed(t) -> int:
    return fuss_catalan(t, 1)


# -- maximal chains --------------------------------------------------------------


def mc_closed(t) -> int:
    """``n! prod_s h_s / |W|``, with h_s the Coxeter number of the factor of s."""
    inv = invariants(as_type(t))
    return _exact(Fraction(factorial(inv.rank) * prod(inv.h_s), inv.order), f"MC({t})")


def mc_table(t) -> int:
    """Per-family values of the maximal chain count."""
    t = _irreducible(t)
    n = t.rank
    if t.family == "A":
        return (n + 1) ** (n - 1)
    if t.family == "B":
        return n**n
    if t.family == "D":
        return 2 * (n - 1) ** n
    if t.family == "I":
        return t.param
    table = {"E6": 41472, "E7": 1062882, "E8": 37968750, "F4": 432, "H3": 50, "H4": 1350}
    return table[t.name]


def m_mc_closed(t, m: int) -> int:
    """``n! (mh)^n / |W|`` (the product of the ``m h_s`` for reducible types)."""
    inv = invariants(as_type(t))
    return _exact(Fraction(factorial(inv.rank) * prod(m * h for h in inv.h_s), inv.order), f"MC^({m})({t})")


# -- edges and saturated chains -------------------------------------------------


def edge_closed(t) -> int:
    """``nh/(h+2) * NC``; checked against ``nh/|W| * prod_{i>=2}(h+e_i+1)``."""
    t = _irreducible(t)
    n, h, exps = t.rank, t.coxeter_number, t.exponents
    a = _exact(Fraction(n * h * nc_closed(t), h + 2), f"E({t})")
    b = _exact(Fraction(n * h * prod(h + e + 1 for e in exps[1:]), t.order), f"E({t})")
    if a != b:
        raise ArithmeticError(f"edge closed forms disagree for {t}: {a} != {b}")
    return a


def m_edge_closed(t, m: int) -> int:
    t = _irreducible(t)
    n, h = t.rank, t.coxeter_number
    return _exact(Fraction(n * m * h * fuss_catalan(t, m), m * h + 2), f"E^({m})({t})")


def sc_top_closed(t) -> int:
    """Saturated chains of length n-1: ``2 n! h^n / |W|``."""
    t = _irreducible(t)
    if t.rank < 1:
        raise ValueError("need rank >= 1")
    return _exact(Fraction(2 * factorial(t.rank) * t.coxeter_number**t.rank, t.order), f"SC_top({t})")


def obvious_formula(t, k: int) -> Fraction:
    """``n(n-1)...(n-k+1) h^k/|W| prod_{i=k+1}^n (h + e_i + 1)``, unrounded.

    Agrees with SC_k for k in {0, 1, n-1, n}; elsewhere it is only a guess.
    """
    t = _irreducible(t)
    n, h, exps = t.rank, t.coxeter_number, t.exponents
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    falling = prod(range(n - k + 1, n + 1))
    return Fraction(falling * h**k * prod(h + e + 1 for e in exps[k:]), t.order)


# -- the f_k recursion ---------------------------------------------------------


def _check_integer_valued(p: PolynomialQ, k: int, what: str) -> None:
    # a degree-k polynomial is integer valued iff it is integral at 0..k
    for x in range(k + 1):
        if p(x).denominator != 1:
            raise ArithmeticError(f"{what} is not integer valued: value {p(x)} at m={x}")


@lru_cache(maxsize=None)
def _fk(t: CoxeterType, k: int) -> PolynomialQ:
    if k == 0:
        return PolynomialQ.constant(1)
    if k > t.rank:
        return PolynomialQ()
    if not t.is_irreducible:
        first = CoxeterType(t.factors[:1])
        rest = CoxeterType(t.factors[1:])
        return sum((_fk(first, i) * _fk(rest, k - i) for i in range(k + 1)), PolynomialQ())
    h = t.factors[0].coxeter_number
    total = sum((_fk(delete_vertex(t, s), k - 1) for s in range(t.rank)), PolynomialQ())
    out = (h * M + 2) * total * Fraction(1, 2 * k)
    _check_integer_valued(out, k, f"f_{k}({t})")
    return out


def fk_polynomial(t, k: int) -> PolynomialQ:
    """``f_k(W, m)``: ``(mh+2)/(2k) sum_s f_{k-1}(W_<s>, m)`` for irreducible W,
    convolution over factors otherwise."""
    t = as_type(t).canonical()
    if not 0 <= k <= t.rank:
        raise ValueError(f"k={k} outside 0..{t.rank}")
    return _fk(t, k)


def tw_from_fk(t, k: int) -> int:
    """``k!`` times the ``m^k`` coefficient of ``f_k(W, m)``."""
    p = fk_polynomial(t, k)
    return _exact(factorial(k) * p.coefficient(k), f"TW_{k}({t}) from f_{k}")


def fk_value(t, k: int, m: int) -> int:
    return _exact(fk_polynomial(t, k)(m), f"f_{k}({t}, {m})")


def max_reducible(mc1: int, n1: int, mc2: int, n2: int) -> int:
    """Maximal chains of a product: shuffles of chains in the factors."""
    return comb(n1 + n2, n1) * mc1 * mc2

