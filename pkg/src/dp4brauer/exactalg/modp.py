"""Integer polynomial arithmetic modulo m, and factorization over F_p for odd p.

Polynomials are plain lists of ints, ascending degree, trimmed of leading zeros.
"""

from __future__ import annotations

import random


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_mod(a, m: int) -> list[int]:
    return trim([c % m for c in a])


def symmetric(a, m: int) -> list[int]:
    half = m // 2
    return trim([(c % m) - m if (c % m) > half else (c % m) for c in a])


def add(a, b, m: int) -> list[int]:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def sub(a, b, m: int) -> list[int]:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def mul(a, b, m: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % m for c in out])


def scal(a, c: int, m: int) -> list[int]:
    return trim([(x * c) % m for x in a])


def divmod_poly(a, b, m: int) -> tuple[list[int], list[int]]:
    """Division by b whose leading coefficient is a unit mod m."""
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, m)
    rem = [c % m for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], trim(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = (rem[k + db] * inv) % m
        quot[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - c * y) % m
    return trim(quot), trim(rem[:db])


def pmod(a, b, m: int) -> list[int]:
    return divmod_poly(a, b, m)[1]


def monic(a, p: int) -> list[int]:
    if not a:
        return a
    return scal(a, pow(a[-1], -1, p), p)


def gcd(a, b, p: int) -> list[int]:
    a, b = reduce_mod(a, p), reduce_mod(b, p)
    while b:
        a, b = b, pmod(a, b, p)
    return monic(a, p)


def xgcd(a, b, p: int) -> tuple[list[int], list[int], list[int]]:
    """Return (g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1 = reduce_mod(a, p), reduce_mod(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scal(r0, inv, p), scal(s0, inv, p), scal(t0, inv, p)


def powmod(base, e: int, f, p: int) -> list[int]:
    result = [1]
    base = pmod(base, f, p)
    while e:
        if e & 1:
            result = pmod(mul(result, base, p), f, p)
        base = pmod(mul(base, base, p), f, p)
        e >>= 1
    return result


def derivative(a, m: int) -> list[int]:
    return trim([(i * c) % m for i, c in enumerate(a)][1:])


def is_squarefree(f, p: int) -> bool:
    f = reduce_mod(f, p)
    return len(gcd(f, derivative(f, p), p)) == 1


def _equal_degree(f, d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [f]
    e = (p**d - 1) // 2
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = gcd(a, f, p)
        if 1 < len(g) < len(f):
            break
        b = sub(powmod(a, e, f, p), [1], p)
        g = gcd(b, f, p)
        if 1 < len(g) < len(f):
            break
    h = divmod_poly(f, g, p)[0]
    return _equal_degree(monic(g, p), d, p, rng) + _equal_degree(monic(h, p), d, p, rng)


def factor_squarefree_modp(f, p: int, seed: int = 0) -> list[list[int]]:
    """Monic irreducible factors of a squarefree f over F_p, p odd."""
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    rng = random.Random(seed)
    f = monic(reduce_mod(f, p), p)
    factors: list[list[int]] = []
    x = [0, 1]
    h = x
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, x, p), f, p)
        if len(g) > 1:
            factors.extend(_equal_degree(g, i, p, rng))
            f = divmod_poly(f, g, p)[0]
            h = pmod(h, f, p)
    if len(f) > 1:
        factors.append(monic(f, p))
    return sorted(factors)


def roots_modp(f, p: int) -> list[int]:
    """Distinct roots in F_p of f (any p, brute force for tiny p)."""
    f = reduce_mod(f, p)
    if not f:
        return list(range(p))
    if p < 50:
        return [r for r in range(p) if _eval(f, r, p) == 0]
    g = gcd(sub(powmod([0, 1], p, f, p), [0, 1], p), f, p)
    if len(g) == 1:
        return []
    out: list[int] = []
    for fac in factor_squarefree_modp(g, p):
        out.append((-fac[0]) % p)
    return sorted(out)


def _eval(f, r: int, m: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * r + c) % m
    return acc
