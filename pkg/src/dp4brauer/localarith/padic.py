"""Zeros of systems of integral quadratic forms over Z_p.

A projective point is stored in a chart: coordinate `chart` equals 1 and all
earlier coordinates are divisible by p, so every point of P^{n-1}(Q_p) has a
unique representative. Lifting from p^k to p^(k+1) is linear in the correction
for k >= 1, and the generalised Hensel lemma certifies a true zero once
v(F(x)) > 2 v(det J_S(x)) for some 2x2 minor J_S.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd, lcm
from typing import Iterator, Sequence


@dataclass(frozen=True)
class IntQuadForm:
    """F(x) = sum_{i<=j} c[i][j] x_i x_j with integer coefficients (upper triangle used)."""

    c: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.c)

    @classmethod
    def from_gram(cls, G: Sequence[Sequence[Fraction]]) -> "IntQuadForm":
        n = len(G)
        raw = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            raw[i][i] = Fraction(G[i][i])
            for j in range(i + 1, n):
                raw[i][j] = 2 * Fraction(G[i][j])
        den = reduce(lcm, (x.denominator for r in raw for x in r), 1)
        ints = [[int(x * den) for x in r] for r in raw]
        g = reduce(gcd, (x for r in ints for x in r), 0) or 1
        return cls(tuple(tuple(x // g for x in r) for r in ints))

    def __call__(self, x: Sequence[int]) -> int:
        n = self.n
        s = 0
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            row = self.c[i]
            acc = row[i] * xi
            for j in range(i + 1, n):
                acc += row[j] * x[j]
            s += acc * xi
        return s

    def grad(self, x: Sequence[int]) -> list[int]:
        n = self.n
        out = [0] * n
        for i in range(n):
            for j in range(i, n):
                cij = self.c[i][j]
                if not cij:
                    continue
                if i == j:
                    out[i] += 2 * cij * x[i]
                else:
                    out[i] += cij * x[j]
                    out[j] += cij * x[i]
        return out

    def gram(self) -> list[list[Fraction]]:
        n = self.n
        G = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            G[i][i] = Fraction(self.c[i][i])
            for j in range(i + 1, n):
                G[i][j] = G[j][i] = Fraction(self.c[i][j], 2)
        return G


def vval(x: int, p: int, cap: int = 10**6) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# residues modulo p


class SqrtTable:
    def __init__(self, p: int):
        self.p = p
        self.table: dict[int, int] = {}
        for r in range(p):
            self.table.setdefault(r * r % p, r)

    def roots(self, a: int) -> list[int]:
        a %= self.p
        r = self.table.get(a)
        if r is None:
            return []
        return [r] if r == (-r) % self.p else [r, (-r) % self.p]


def _quad_roots(a: int, b: int, c: int, p: int, sq: SqrtTable | None) -> list[int] | None:
    """Roots of a w^2 + b w + c mod p; None means every residue is a root."""
    a, b, c = a % p, b % p, c % p
    if a == 0:
        if b == 0:
            return None if c == 0 else []
        return [(-c * pow(b, -1, p)) % p]
    if p == 2:
        return [w for w in range(2) if (a * w * w + b * w + c) % 2 == 0]
    disc = (b * b - 4 * a * c) % p
    inv = pow(2 * a, -1, p)
    return sorted({((-b + s) * inv) % p for s in sq.roots(disc)})


def _coeffs_in(F: IntQuadForm, x: list[int], u: int, w: int) -> tuple[int, int, int]:
    """F restricted to the line x + t e_w, as a quadratic in t (x[w] treated as 0)."""
    y = list(x)
    y[w] = 0
    c0 = F(y)
    g = F.grad(y)
    return F.c[w][w], g[w], c0


class ResidueSearch:
    """Enumerate or sample zeros modulo p of a pair of forms in a chart."""

    def __init__(self, forms: Sequence[IntQuadForm], p: int):
        self.forms = list(forms)
        self.p = p
        self.n = forms[0].n
        self.sq = SqrtTable(p) if p > 2 else None

    def _free(self, chart: int) -> list[int]:
        return [j for j in range(chart + 1, self.n)]

    def _solve_last_two(self, x: list[int], u: int, w: int) -> Iterator[list[int]]:
        p = self.p
        F1 = self.forms[0]
        for uu in range(p):
            x[u] = uu
            a, b, c = _coeffs_in(F1, x, u, w)
            roots = _quad_roots(a, b, c, p, self.sq)
            if roots is None:
                roots = range(p)
            for ww in roots:
                x[w] = ww
                if all(F(x) % p == 0 for F in self.forms[1:]):
                    yield list(x)
        x[u] = 0
        x[w] = 0

    def chart_points(self, chart: int) -> Iterator[list[int]]:
        """All zeros mod p with x_chart = 1 and earlier coordinates 0."""
        p = self.p
        free = self._free(chart)
        base = [0] * self.n
        base[chart] = 1
        if len(free) == 0:
            if all(F(base) % p == 0 for F in self.forms):
                yield base
            return
        if len(free) == 1:
            (w,) = free
            for ww in range(p):
                base[w] = ww
                if all(F(base) % p == 0 for F in self.forms):
                    yield list(base)
            return
        head, (u, w) = free[:-2], free[-2:]
        for vals in product(range(p), repeat=len(head)):
            x = list(base)
            for j, v in zip(head, vals):
                x[j] = v
            yield from self._solve_last_two(x, u, w)

    def all_points(self) -> Iterator[tuple[int, list[int]]]:
        for chart in range(self.n):
            for x in self.chart_points(chart):
                yield chart, x

    def random_points(self, rng: random.Random, tries: int) -> Iterator[tuple[int, list[int]]]:
        """Random zeros in chart 0, found by fixing all but two coordinates."""
        p = self.p
        n = self.n
        for _ in range(tries):
            x = [0] * n
            x[0] = 1
            for j in range(1, n - 2):
                x[j] = rng.randrange(p)
            u, w = n - 2, n - 1
            sols = list(self._solve_last_two(x, u, w))
            rng.shuffle(sols)
            for s in sols:
                yield 0, s


# ---------------------------------------------------------------------------
# lifting


def _minors(J: list[list[int]], cols: Sequence[int]) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Maximal minors of a Jacobian with one or two rows."""
    if len(J) == 1:
        for a in cols:
            yield J[0][a], (a,)
        return
    for a, b in combinations(cols, 2):
        d = J[0][a] * J[1][b] - J[0][b] * J[1][a]
        yield d, (a, b)


def hensel_data(forms: Sequence[IntQuadForm], x: Sequence[int], p: int, chart: int):
    """(e, columns) minimising the valuation of a maximal Jacobian minor off the chart coordinate."""
    J = [F.grad(x) for F in forms]
    cols = [j for j in range(len(x)) if j != chart]
    best = None
    for d, S in _minors(J, cols):
        if d == 0:
            continue
        e = vval(d, p)
        if best is None or e < best[0]:
            best = (e, S)
    return best


def hensel_ready(forms: Sequence[IntQuadForm], x: Sequence[int], p: int, chart: int):
    """Return (e, S) when the generalised Hensel criterion holds at the integer vector x."""
    hd = hensel_data(forms, x, p, chart)
    if hd is None:
        return None
    e, S = hd
    vF = min(vval(F(x), p) for F in forms)
    if vF >= 2 * e + 1:
        return e, S
    return None


def newton_lift(forms: Sequence[IntQuadForm], x: Sequence[int], p: int, S: tuple[int, ...], e: int,
                precision: int) -> list[int]:
    """Newton iteration in the coordinates S until F(x) = 0 mod p^(precision + 2e + 1)."""
    x = list(x)
    target = precision + 2 * e + 1
    mod = p ** (target + 2 * e + 2)
    for _ in range(200):
        vals = [F(x) for F in forms]
        if all(vval(v, p) >= target for v in vals):
            return [c % mod for c in x]
        J = [F.grad(x) for F in forms]
        if len(S) == 1:
            (a,) = S
            ev = vval(J[0][a], p)
            if vals[0] % p**ev:
                raise ArithmeticError("Hensel precondition violated")
            inv = pow(J[0][a] // p**ev, -1, mod)
            x[a] = (x[a] - (vals[0] // p**ev) * inv) % mod
            continue
        a, b = S
        det = J[0][a] * J[1][b] - J[0][b] * J[1][a]
        ev = vval(det, p)
        unit = det // p**ev
        inv = pow(unit, -1, mod)
        # delta = -J_S^{-1} F = -adj F / det
        na = J[1][b] * vals[0] - J[0][b] * vals[1]
        nb = -J[1][a] * vals[0] + J[0][a] * vals[1]
        if na % p**ev or nb % p**ev:
            raise ArithmeticError("Hensel precondition violated")
        x[a] = (x[a] - (na // p**ev) * inv) % mod
        x[b] = (x[b] - (nb // p**ev) * inv) % mod
    raise ArithmeticError("Newton iteration did not converge")


def _lift_step_solutions(forms, x: list[int], p: int, k: int, chart: int) -> list[list[int]] | None:
    """All delta mod p (delta_chart = 0) with F(x + p^k delta) = 0 mod p^(k+1); None if F(x) != 0 mod p^k."""
    pk = p**k
    rhs = []
    for F in forms:
        v = F(x)
        if v % pk:
            return None
        rhs.append((-(v // pk)) % p)
    J = [[g % p for g in F.grad(x)] for F in forms]
    cols = [j for j in range(len(x)) if j != chart]
    return _affine_solutions(J, rhs, cols, p, len(x))


def _affine_solutions(J, rhs, cols, p, n) -> list[list[int]]:
    rows = [[J[r][c] for c in cols] + [rhs[r]] for r in range(len(J))]
    m = len(cols)
    piv_cols = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][m] % p:
            return []
    free = [c for c in range(m) if c not in piv_cols]
    out = []
    for vals in product(range(p), repeat=len(free)):
        d = [0] * m
        for c, v in zip(free, vals):
            d[c] = v
        for i, pc in enumerate(piv_cols):
            d[pc] = (rows[i][m] - sum(rows[i][c] * d[c] for c in free)) % p
        full = [0] * n
        for c, v in zip(cols, d):
            full[c] = v
        out.append(full)
    return out


@dataclass
class LiftResult:
    point: list[int] | None
    chart: int
    e: int = 0
    columns: tuple[int, int] | None = None
    nodes: int = 0


def random_lift(forms, x: list[int], p: int, chart: int, precision: int, rng: random.Random,
                max_depth: int = 12, branch: int = 3, node_budget: int = 400) -> LiftResult:
    """Randomised depth-first lifting of a residue zero to a Hensel-certified point."""
    counter = [0]

    def dfs(y, k):
        counter[0] += 1
        if counter[0] > node_budget:
            return None
        hr = hensel_ready(forms, y, p, chart)
        if hr is not None:
            return y, hr
        if k >= max_depth:
            return None
        sols = _lift_step_solutions(forms, y, p, k, chart)
        if not sols:
            return None
        rng.shuffle(sols)
        pk = p**k
        for d in sols[:branch]:
            z = [a + pk * b for a, b in zip(y, d)]
            r = dfs(z, k + 1)
            if r is not None:
                return r
        return None

    r = dfs(list(x), 1)
    if r is None:
        return LiftResult(None, chart, nodes=counter[0])
    y, (e, S) = r
    pt = newton_lift(forms, y, p, S, e, precision)
    return LiftResult(pt, chart, e, S, counter[0])


@dataclass
class TreeResult:
    status: str  # "solvable" | "insolvable" | "unknown"
    depth: int = 0
    nodes: int = 0
    witness: list[int] | None = None
    note: str = ""


def exhaustive_tree(forms: Sequence[IntQuadForm], p: int, max_depth: int = 8, node_budget: int = 200_000) -> TreeResult:
    """Decide existence of a projective zero over Q_p by breadth-first residue lifting.

    Insolvable only when every residue class dies at some level (a proof);
    solvable when some class meets the Hensel criterion.
    """
    rs = ResidueSearch(forms, p)
    n = forms[0].n
    total = 0
    for chart in range(n):
        level = [x for x in rs.chart_points(chart)]
        total += len(level)
        k = 1
        while level:
            next_level = []
            for x in level:
                if hensel_ready(forms, x, p, chart) is not None:
                    return TreeResult("solvable", k, total, list(x), f"Hensel-certified in chart {chart}")
                if k >= max_depth:
                    continue
                sols = _lift_step_solutions(forms, x, p, k, chart)
                if not sols:
                    continue
                pk = p**k
                for d in sols:
                    next_level.append([a + pk * b for a, b in zip(x, d)])
                total += len(sols)
                if total > node_budget:
                    return TreeResult("unknown", k, total, None, "node budget exhausted")
            if k >= max_depth and level:
                return TreeResult("unknown", k, total, None, f"classes alive at depth {max_depth}")
            level = next_level
            k += 1
    return TreeResult("insolvable", 0, total, None, "all residue classes die")
