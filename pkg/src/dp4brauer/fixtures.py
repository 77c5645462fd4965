"""Reference surfaces used by the CLI, tests and scripts."""

from __future__ import annotations

from fractions import Fraction

from .pencil import Pencil, SymMat5

# Q = x0 x1 + x2 x3 + x4^2, Q~ = -x0^2 - 3 x1^2 + x2^2 - x2 x3 + 2 x3^2 + 2 x3 x4
EXAMPLE_Q = {"x0*x1": 1, "x2*x3": 1, "x4^2": 1}
EXAMPLE_Q_TILDE = {"x0^2": -1, "x1^2": -3, "x2^2": 1, "x2*x3": -1, "x3^2": 2, "x3*x4": 2}

# the reference generator is tangent to the rank-4 cone over Q(sqrt 3) at this point of X
EXAMPLE_POINT = [Fraction(-1), Fraction(0), Fraction(1), Fraction(0), Fraction(0)]

# x3 x4 = x2^2 - 5 x0^2, (x3 + x4)(x3 + 2 x4) = x2^2 - 5 x1^2
BSD_Q = {"x3*x4": 1, "x2^2": -1, "x0^2": 5}
BSD_Q_TILDE = {"x3^2": 1, "x3*x4": 3, "x4^2": 2, "x2^2": -1, "x1^2": 5}


def example_pencil() -> Pencil:
    return Pencil(SymMat5.from_monomials(EXAMPLE_Q), SymMat5.from_monomials(EXAMPLE_Q_TILDE))


def bsd_pencil() -> Pencil:
    return Pencil(SymMat5.from_monomials(BSD_Q), SymMat5.from_monomials(BSD_Q_TILDE))


NAMED = {"example": example_pencil, "bsd": bsd_pencil}
