"""Brute-force oracles, independent of the closed formulas under test."""

from functools import lru_cache


def _v(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _reduce(a: int, p: int) -> int:
    """Strip p^2 factors so that v_p(a) is 0 or 1."""
    while a % (p * p) == 0:
        a //= p * p
    return a


def hilbert_by_enumeration(a: int, b: int, p: int) -> int:
    """(a, b)_p from primitive zeros of a x^2 + b y^2 - z^2 mod p^K with a Hensel certificate.

    K = 3 for odd p and 6 for p = 2, which covers derivative valuations up to 1 and 2.
    """
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    K = 6 if p == 2 else 3
    m = p ** (K + 2)
    return _hilbert_cached(_reduce(a, p) % m, _reduce(b, p) % m, p, K)


@lru_cache(maxsize=None)
def _hilbert_cached(a: int, b: int, p: int, K: int) -> int:
    q = p**K
    roots: dict[int, list[int]] = {}
    for z in range(q):
        roots.setdefault(z * z % q, []).append(z)
    seen_any = False
    for x in range(q):
        for y in range(q):
            r = (a * x * x + b * y * y) % q
            for z in roots.get(r, ()):
                if x % p == 0 and y % p == 0 and z % p == 0:
                    continue
                seen_any = True
                s = min(_v(d, p) if d % q else K for d in (2 * a * x, 2 * b * y, 2 * z))
                if 2 * s + 1 <= K:
                    return 1
    if not seen_any:
        return -1
    raise AssertionError(f"enumeration mod {p}^{K} undecided for ({a}, {b})")
