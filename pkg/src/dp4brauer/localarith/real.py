"""The real place: definite members of a pencil, and real points by Gauss-Newton projection."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from ..exactalg import linalg
from ..exactalg.poly import interpolate


def is_definite(G: Sequence[Sequence[Fraction]]) -> bool:
    """Exact Sylvester test for positive or negative definiteness."""
    n = len(G)
    minors = [linalg.det([list(r[:k]) for r in G[:k]]) for k in range(1, n + 1)]
    if all(m > 0 for m in minors):
        return True
    return all((m < 0) if k % 2 == 0 else (m > 0) for k, m in enumerate(minors))


def _real_roots(coeffs_desc: list[Fraction]) -> list[float]:
    while coeffs_desc and coeffs_desc[0] == 0:
        coeffs_desc = coeffs_desc[1:]
    if len(coeffs_desc) < 2:
        return []
    rts = np.roots([float(c) for c in coeffs_desc])
    return sorted(float(r.real) for r in rts if abs(r.imag) < 1e-7 * max(1.0, abs(r)))


def definite_member(A: Sequence[Sequence[Fraction]], B: Sequence[Sequence[Fraction]]) -> tuple | None:
    """A pencil member t A + B (or A) that is definite, if any.

    Definiteness can only change where det(tA + B) vanishes, so one rational
    test value per arc between consecutive real roots suffices.
    """
    n = len(A)
    ts = [Fraction(k) for k in range(n + 1)]
    vals = [linalg.det([[t * a + b for a, b in zip(r, s)] for r, s in zip(A, B)]) for t in ts]
    g = interpolate(ts, vals)
    roots = _real_roots(list(reversed(g.coeffs)))
    probes: list[Fraction] = []
    if roots:
        probes.append(Fraction(roots[0] - 1).limit_denominator(10**6))
        for r0, r1 in zip(roots, roots[1:]):
            probes.append(Fraction((r0 + r1) / 2).limit_denominator(10**9))
        probes.append(Fraction(roots[-1] + 1).limit_denominator(10**6))
    else:
        probes.append(Fraction(0))
    for t in probes:
        M = [[t * a + b for a, b in zip(r, s)] for r, s in zip(A, B)]
        if is_definite(M):
            return ("t", t)
    if is_definite([list(r) for r in A]):
        return ("inf", None)
    return None


@dataclass
class RealPoint:
    coords: list  # mpmath mpf
    residual: float
    sigma_min: float


def _eval(G, x):
    n = len(x)
    return mpmath.fsum(G[i][j] * x[i] * x[j] for i in range(n) for j in range(n))


def project_to_variety(grams, x0: Sequence[float], dps: int = 50, iters: int = 60) -> RealPoint | None:
    """Gauss-Newton: x <- x - J^T (J J^T)^{-1} F(x), normalised to the unit sphere."""
    with mpmath.workdps(dps):
        Gs = [[[mpmath.mpf(c.numerator) / c.denominator for c in r] for r in G] for G in grams]
        x = mpmath.matrix([mpmath.mpf(v) for v in x0])
        n = len(x0)
        for _ in range(iters):
            F = mpmath.matrix([_eval(G, x) for G in Gs])
            J = mpmath.matrix(len(Gs), n)
            for k, G in enumerate(Gs):
                for i in range(n):
                    J[k, i] = 2 * mpmath.fsum(G[i][j] * x[j] for j in range(n))
            try:
                step = J.T * mpmath.inverse(J * J.T) * F
            except ZeroDivisionError:
                return None
            x = x - step
            nx = mpmath.norm(x)
            if nx == 0:
                return None
            x = x / nx
            if mpmath.norm(F) < mpmath.mpf(10) ** (-(dps - 8)):
                break
        F = [_eval(G, x) for G in Gs]
        res = float(max(abs(v) for v in F))
        if res > 10.0 ** (-(dps - 10)):
            return None
        Jn = np.array([[float(2 * mpmath.fsum(G[i][j] * x[j] for j in range(n))) for i in range(n)] for G in Gs])
        smin = float(np.linalg.svd(Jn, compute_uv=False)[-1])
        if smin < 1e-6:
            return None
        return RealPoint([x[i] for i in range(n)], res, smin)


def sample_real_points(grams, count: int, rng: random.Random, dps: int = 50, tries: int | None = None) -> list[RealPoint]:
    n = len(grams[0])
    out: list[RealPoint] = []
    tries = tries or 20 * count
    for _ in range(tries):
        if len(out) >= count:
            break
        x0 = [rng.gauss(0, 1) for _ in range(n)]
        pt = project_to_variety(grams, x0, dps)
        if pt is not None:
            out.append(pt)
    return out
