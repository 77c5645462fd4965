"""Factorization of univariate polynomials over Q.

Squarefree decomposition, then Zassenhaus: factor modulo a good prime, Hensel
lift to beyond the Mignotte bound, and recombine exhaustively. Degrees in this
package stay small (<= 10), so exhaustive recombination is cheap.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import isqrt

from sympy import nextprime

from . import modp
from .poly import UniPoly, squarefree_decomposition


def _int_poly_divides(g: list[int], f: list[int]) -> list[int] | None:
    """Exact division f / g over Z, or None if g does not divide f."""
    rem = list(f)
    dg = len(g) - 1
    if len(rem) - 1 < dg:
        return None
    quot = [0] * (len(rem) - dg)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c, r = divmod(rem[k + dg], g[-1])
        if r:
            return None
        quot[k] = c
        if c:
            for j, y in enumerate(g):
                rem[k + j] -= c * y
    if any(rem[:dg]):
        return None
    return quot


def _primitive(a: list[int]) -> list[int]:
    from math import gcd
    from functools import reduce

    g = reduce(gcd, a, 0)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def mignotte_bound(f: list[int]) -> int:
    n = len(f) - 1
    norm2 = isqrt(sum(c * c for c in f)) + 1
    return (1 << n) * norm2


def _hensel_step(f, g, h, s, t, m: int):
    """One quadratic Hensel step (f = g h mod m, s g + t h = 1 mod m, h monic) to modulus m^2."""
    M = m * m
    e = modp.sub(f, modp.mul(g, h, M), M)
    q, r = modp.divmod_poly(modp.mul(s, e, M), h, M)
    g1 = modp.add(g, modp.add(modp.mul(t, e, M), modp.mul(q, g, M), M), M)
    h1 = modp.add(h, r, M)
    b = modp.sub(modp.add(modp.mul(s, g1, M), modp.mul(t, h1, M), M), [1], M)
    c, d = modp.divmod_poly(modp.mul(s, b, M), h1, M)
    s1 = modp.sub(s, d, M)
    t1 = modp.sub(t, modp.add(modp.mul(t, b, M), modp.mul(c, g1, M), M), M)
    return g1, h1, s1, t1, M


def _lift_pair(f, g, h, p: int, target: int):
    """Lift f = g h (mod p) to modulus >= target. g carries lc(f), h is monic."""
    _, s, t = modp.xgcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t, m = _hensel_step(f, g, h, s, t, m)
    return g, h, m


def hensel_lift(f: list[int], factors: list[list[int]], p: int, target: int) -> tuple[list[list[int]], int]:
    """Lift monic modular factors of f (lc(f) a unit mod p) to a modulus >= target."""
    lifted = []
    rest = f
    lc = f[-1]
    fs = list(factors)
    modulus = p
    while len(fs) > 1:
        g0 = fs[0]
        h0 = [1]
        for fac in fs[1:]:
            h0 = modp.mul(h0, fac, p)
        # rest = (lc * g0) * h0 with h0 monic, then swap roles so the lifted monic piece is g0
        g_l, h_l, modulus = _lift_pair(rest, modp.scal(h0, rest[-1], p), g0, p, target)
        lifted.append(h_l)
        rest = modp.symmetric(g_l, modulus)
        fs = fs[1:]
    inv = pow(lc, -1, modulus)
    lifted.append(modp.reduce_mod(modp.scal(rest, inv, modulus), modulus))
    return lifted, modulus


def _good_prime(f: list[int]) -> int:
    p = 3
    while True:
        if f[-1] % p and modp.is_squarefree(f, p) and len(modp.reduce_mod(f, p)) == len(f):
            return p
        p = nextprime(p)


def factor_squarefree_integer(f: list[int]) -> list[list[int]]:
    """Irreducible factors over Z of a squarefree primitive integer polynomial."""
    if len(f) <= 2:
        return [f]
    p = _good_prime(f)
    modular = modp.factor_squarefree_modp(f, p)
    if len(modular) == 1:
        return [f]
    bound = 2 * abs(f[-1]) * mignotte_bound(f) + 1
    lifted, m = hensel_lift(f, modular, p, bound)
    found: list[list[int]] = []
    remaining = list(range(len(lifted)))
    F = f
    s = 1
    while 2 * s <= len(remaining):
        hit = False
        for subset in combinations(remaining, s):
            lc = F[-1]
            g = [lc % m]
            for i in subset:
                g = modp.mul(g, lifted[i], m)
            g = modp.symmetric(g, m)
            if not g:
                continue
            g = _primitive(g)
            q = _int_poly_divides(g, F)
            if q is None:
                continue
            found.append(g)
            F = _primitive(q)
            remaining = [i for i in remaining if i not in subset]
            hit = True
            break
        if not hit:
            s += 1
    found.append(F)
    return found


def factor_over_q(p: UniPoly) -> tuple[Fraction, list[tuple[UniPoly, int]]]:
    """Return (unit, [(monic irreducible factor, multiplicity)]) with p = unit * prod."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = p.lc
    out: list[tuple[UniPoly, int]] = []
    for part, mult in squarefree_decomposition(p):
        _, ints = part.primitive_integer()
        for fac in factor_squarefree_integer(ints):
            out.append((UniPoly(fac).monic(), mult))
    out.sort(key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coeffs], fm[1]))
    return unit, out


def is_irreducible(p: UniPoly) -> bool:
    if p.degree < 1:
        return False
    _, facs = factor_over_q(p)
    return len(facs) == 1 and facs[0][1] == 1
