"""Rational square classes."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from sympy import factorint


def _int_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def rational_sqrt(x) -> Fraction | None:
    x = Fraction(x)
    if x < 0:
        return None
    a, b = _int_sqrt(x.numerator), _int_sqrt(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def is_rational_square(x) -> bool:
    return rational_sqrt(x) is not None


def squarefree_part(x) -> int:
    """The squarefree integer in the class of x modulo (Q^*)^2."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


def rational_square_class(x) -> int:
    return squarefree_part(x)
