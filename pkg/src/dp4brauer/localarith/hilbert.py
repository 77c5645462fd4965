"""Places of Q, Hilbert symbols and isotropy of diagonal quadratic forms over Q_v."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Sequence

from sympy import isprime


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q; p = 0 encodes the real place."""

    p: int = 0

    def __post_init__(self):
        if self.p and not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "inf" if self.is_real else str(self.p)

    @classmethod
    def parse(cls, s) -> "Place":
        if isinstance(s, Place):
            return s
        s = str(s).strip().lower()
        if s in ("inf", "oo", "real", "r", "0"):
            return REAL
        return cls(int(s))


REAL = Place(0)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _integral_class(x) -> int:
    """An integer in the same square class as the nonzero rational x."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    return x.numerator * x.denominator


def split(x: int, p: int) -> tuple[int, int]:
    v = valuation(x, p)
    return v, x // p**v


def legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert(a, b, v: Place) -> int:
    """(a, b)_v in {1, -1}."""
    a, b = _integral_class(a), _integral_class(b)
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, u = split(a, p)
    beta, w = split(b, p)
    if p != 2:
        s = 1
        if alpha * beta * ((p - 1) // 2) % 2:
            s = -s
        if beta % 2:
            s *= legendre(u, p)
        if alpha % 2:
            s *= legendre(w, p)
        return s
    eps = lambda z: ((z - 1) // 2) % 2
    omega = lambda z: ((z * z - 1) // 8) % 2
    e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return -1 if e % 2 else 1


def is_local_square(x, v: Place) -> bool:
    x = _integral_class(x)
    if v.is_real:
        return x > 0
    p = v.p
    k, u = split(x, p)
    if k % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def hasse_invariant(coeffs: Sequence, v: Place) -> int:
    s = 1
    for a, b in combinations(coeffs, 2):
        s *= hilbert(a, b, v)
    return s


def locally_solvable(coeffs: Sequence, v: Place) -> bool:
    """Whether sum a_i x_i^2 has a nontrivial zero over Q_v (zero coefficients are dropped)."""
    a = [Fraction(c) for c in coeffs if Fraction(c) != 0]
    n = len(a)
    if n < 3:
        raise ValueError("rank below 3 is not supported")
    if v.is_real:
        return any(c > 0 for c in a) and any(c < 0 for c in a)
    if n >= 5:
        return True
    d = reduce(lambda x, y: x * y, a, Fraction(1))
    e = hasse_invariant(a, v)
    if n == 3:
        return hilbert(-1, -d, v) == e
    # n == 4
    if not is_local_square(d, v):
        return True
    return e == hilbert(-1, -1, v)


def product_formula_primes(a, b) -> list[Place]:
    """Places where (a, b)_v can be -1."""
    from sympy import factorint

    ps = {2}
    for x in (_integral_class(a), _integral_class(b)):
        ps.update(factorint(abs(x)).keys())
    return [REAL] + [Place(p) for p in sorted(ps)]
