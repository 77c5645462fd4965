"""Pencils of quadrics in P^4: characteristic form, degeneracy scheme, block form.

Matrices are Gram matrices (off-diagonal entries halved), so Q(x) = x^T M x.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg import linalg
from .exactalg.factor import factor_over_q
from .exactalg.numberfield import NfElem, NumberField
from .exactalg.poly import UniPoly, discriminant, interpolate, resultant

N = 5


class SingularSurface(ValueError):
    """The pencil does not define a smooth del Pezzo surface of degree 4."""


class MalformedInput(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise MalformedInput("floating point entries are not accepted; use 'p/q' strings")
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational {x!r}") from exc


@dataclass(frozen=True)
class SymMat5:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != N or any(len(r) != N for r in self.entries):
            raise MalformedInput("expected a 5x5 matrix")
        for i in range(N):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise MalformedInput(f"matrix not symmetric at ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymMat5":
        return cls(tuple(tuple(_frac(c) for c in r) for r in rows))

    @classmethod
    def from_monomials(cls, terms: dict) -> "SymMat5":
        """Compile {"x0*x1": "1", "x2^2": "-3", ...} into a Gram matrix."""
        G = [[Fraction(0)] * N for _ in range(N)]
        for mono, coef in terms.items():
            idx = _parse_monomial(mono)
            c = _frac(coef)
            i, j = idx
            if i == j:
                G[i][i] += c
            else:
                G[i][j] += c / 2
                G[j][i] += c / 2
        return cls(tuple(tuple(r) for r in G))

    @classmethod
    def diagonal(cls, d: Sequence) -> "SymMat5":
        return cls(tuple(tuple(_frac(d[i]) if i == j else Fraction(0) for j in range(N)) for i in range(N)))

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __add__(self, other: "SymMat5") -> "SymMat5":
        return SymMat5(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def scale(self, c) -> "SymMat5":
        c = _frac(c)
        return SymMat5(tuple(tuple(c * a for a in r) for r in self.entries))

    def congruent(self, U) -> "SymMat5":
        """U^T M U."""
        return SymMat5.from_rows(linalg.matmul(linalg.transpose(U), linalg.matmul(self.rows(), U)))

    def value(self, x: Sequence):
        return linalg.quad_form(self.rows(), list(x))

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in r] for r in self.entries]

    def monomials(self) -> dict[str, str]:
        out = {}
        for i in range(N):
            for j in range(i, N):
                c = self.entries[i][j] * (1 if i == j else 2)
                if c:
                    out[f"x{i}^2" if i == j else f"x{i}*x{j}"] = str(c)
        return out


_MONO = re.compile(r"^\s*x([0-4])\s*(?:\^\s*2|\*\s*x([0-4]))\s*$")


def _parse_monomial(s: str) -> tuple[int, int]:
    m = _MONO.match(s)
    if not m:
        raise MalformedInput(f"cannot parse monomial {s!r}")
    i = int(m.group(1))
    j = int(m.group(2)) if m.group(2) is not None else i
    return (min(i, j), max(i, j))


@dataclass(frozen=True)
class Pencil:
    m: SymMat5
    m_tilde: SymMat5

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Pencil":
        try:
            if "m" in obj and "m_tilde" in obj:
                return cls(_load_quadric(obj["m"]), _load_quadric(obj["m_tilde"]))
            if "q" in obj and "q_tilde" in obj:
                return cls(_load_quadric(obj["q"]), _load_quadric(obj["q_tilde"]))
        except (TypeError, KeyError, AttributeError) as exc:
            raise MalformedInput(str(exc)) from exc
        raise MalformedInput("pencil JSON needs keys 'm' and 'm_tilde'")

    @classmethod
    def from_json(cls, text: str) -> "Pencil":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise MalformedInput("pencil JSON must be an object")
        return cls.from_json_obj(obj)

    def to_json_obj(self) -> dict:
        return {"m": self.m.to_json(), "m_tilde": self.m_tilde.to_json()}

    def member(self, lam, mu) -> list[list[Fraction]]:
        return [[lam * a + mu * b for a, b in zip(r, s)] for r, s in zip(self.m.entries, self.m_tilde.entries)]

    def change_coordinates(self, U) -> "Pencil":
        """The pencil of Q(Ux), Q~(Ux)."""
        return Pencil(self.m.congruent(U), self.m_tilde.congruent(U))

    def change_basis(self, a, b, c, d) -> "Pencil":
        """New generators (a M + b M~, c M + d M~)."""
        if a * d - b * c == 0:
            raise ValueError("pencil basis change must be invertible")
        return Pencil(self.m.scale(a) + self.m_tilde.scale(b), self.m.scale(c) + self.m_tilde.scale(d))

    def contains(self, x: Sequence) -> bool:
        return self.m.value(x) == 0 and self.m_tilde.value(x) == 0


def _load_quadric(obj) -> SymMat5:
    if isinstance(obj, dict):
        return SymMat5.from_monomials(obj)
    if isinstance(obj, list):
        return SymMat5.from_rows(obj)
    raise MalformedInput("quadric must be a matrix or a monomial map")


# ---------------------------------------------------------------------------
# characteristic form


@dataclass(frozen=True)
class BinaryQuintic:
    """sum_j c_j lambda^(5-j) mu^j."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != 6:
            raise ValueError("a binary quintic has six coefficients")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def dehomogenize(self) -> UniPoly:
        """f(lambda, 1)."""
        return UniPoly(reversed(self.coeffs))

    def __call__(self, lam, mu):
        return sum((c * lam ** (5 - j) * mu**j for j, c in enumerate(self.coeffs)), Fraction(0))

    def infinity_multiplicity(self) -> int:
        """Largest e with mu^e dividing f."""
        e = 0
        while e < 6 and self.coeffs[e] == 0:
            e += 1
        return e

    def scale(self, c) -> "BinaryQuintic":
        return BinaryQuintic(tuple(c * a for a in self.coeffs))

    def substitute(self, a, b, c, d) -> "BinaryQuintic":
        """g(lambda, mu) = f(a lambda + c mu, b lambda + d mu)."""
        lam_poly = UniPoly((c, a))  # as polynomials in lambda with mu = 1
        mu_poly = UniPoly((d, b))
        acc = UniPoly()
        for j, cj in enumerate(self.coeffs):
            acc = acc + (lam_poly ** (5 - j)) * (mu_poly**j) * cj
        cs = list(acc.coeffs) + [Fraction(0)] * (6 - len(acc.coeffs))
        return BinaryQuintic(tuple(reversed(cs[:6])))

    def discriminant(self) -> Fraction:
        """Discriminant of the binary form (zero iff a repeated root in P^1)."""
        e = self.infinity_multiplicity()
        if e >= 2:
            return Fraction(0)
        g = self.dehomogenize()
        if e == 0:
            return discriminant(g)
        # disc(f) = c_1^2 disc(g) when lambda^5 coefficient vanishes
        return self.coeffs[1] ** 2 * discriminant(g) if g.degree >= 1 else Fraction(1)

    def pretty(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(
                s for s in (_pw("λ", 5 - j), _pw("μ", j)) if s
            )
            terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _pw(v: str, k: int) -> str:
    if k == 0:
        return ""
    return v if k == 1 else f"{v}^{k}"


def char_form(p: Pencil) -> BinaryQuintic:
    """det(lambda M + mu M~) by interpolation of f(t, 1) at six points."""
    ts = [Fraction(t) for t in range(6)]
    vals = [linalg.det(p.member(t, 1)) for t in ts]
    g = interpolate(ts, vals)
    cs = list(g.coeffs) + [Fraction(0)] * (6 - len(g.coeffs))
    # det M is the lambda^5 coefficient; interpolation already recovers it
    f = BinaryQuintic(tuple(reversed(cs[:6])))
    if f.is_zero():
        raise SingularSurface("characteristic form vanishes identically (degenerate pencil)")
    return f


def hessian_char_form(f: BinaryQuintic) -> BinaryQuintic:
    """The same form in the Hessian convention (matrices of second partials): 2^5 f."""
    return f.scale(Fraction(32))


# ---------------------------------------------------------------------------
# degeneracy scheme


@dataclass(frozen=True)
class ClosedPoint:
    """A point of the degeneracy scheme.

    For a finite point, `factor` is the monic rational factor of f(lambda, 1)
    whose roots are t = lambda/mu, and coord = theta / scale in the field.
    """

    field: NumberField
    coord: NfElem | None
    factor: UniPoly | None
    scale: Fraction = Fraction(1)

    @property
    def at_infinity(self) -> bool:
        return self.coord is None

    @property
    def degree(self) -> int:
        return self.field.degree

    def label(self) -> str:
        if self.at_infinity:
            return "∞"
        return self.factor.pretty("t")

    def sort_key(self):
        return (self.degree, 0 if self.at_infinity else 1, [] if self.factor is None else self.factor.to_strings())

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "at_infinity": self.at_infinity,
            "factor": None if self.factor is None else self.factor.to_strings(),
            "field_min_poly": self.field.min_poly.to_strings(),
            "theta_scale": str(self.scale),
        }


@dataclass(frozen=True)
class DegeneracyScheme:
    points: tuple[ClosedPoint, ...]

    def degrees(self) -> list[int]:
        return [pt.degree for pt in self.points]

    def rational_points(self) -> list[ClosedPoint]:
        return [pt for pt in self.points if pt.degree == 1]


def closed_point_from_factor(g: UniPoly) -> ClosedPoint:
    K, D = NumberField.from_monic_factor(g)
    if K.degree == 1:
        coord = K(-g.monic().coeffs[0])
    else:
        coord = K.gen / D
    return ClosedPoint(K, coord, g.monic(), D)


def infinity_point() -> ClosedPoint:
    return ClosedPoint(NumberField.rationals(), None, None)


def degeneracy_scheme(f: BinaryQuintic) -> DegeneracyScheme:
    e = f.infinity_multiplicity()
    if e >= 2:
        raise SingularSurface(f"mu^{e} divides the characteristic form (repeated point at infinity)")
    unit, facs = factor_over_q(f.dehomogenize())
    for g, mult in facs:
        if mult > 1:
            raise SingularSurface(f"repeated factor ({g.pretty('t')})^{mult} in the characteristic form")
    pts = [closed_point_from_factor(g) for g, _ in facs]
    if e == 1:
        pts.append(infinity_point())
    pts.sort(key=ClosedPoint.sort_key)
    assert sum(p.degree for p in pts) == 5
    return DegeneracyScheme(tuple(pts))


def specialize(p: Pencil, t: ClosedPoint, check: bool = True) -> list[list[NfElem]]:
    """Gram matrix of Q_T = t M + M~ over kappa(T), or M at infinity."""
    K = t.field
    if t.at_infinity:
        G = [[K(a) for a in r] for r in p.m.entries]
    else:
        G = [[t.coord * a + b for a, b in zip(r, s)] for r, s in zip(p.m.entries, p.m_tilde.entries)]
    if check:
        r = linalg.rank(G)
        if r != 4:
            raise SingularSurface(f"degenerate quadric at {t.label()} has rank {r}, expected 4")
    return G


@dataclass
class SmoothnessResult:
    smooth: bool
    diagnostic: str

    def __bool__(self) -> bool:
        return self.smooth


def smoothness_check(p: Pencil) -> SmoothnessResult:
    try:
        f = char_form(p)
    except SingularSurface as exc:
        return SmoothnessResult(False, str(exc))
    try:
        ds = degeneracy_scheme(f)
        for t in ds.points:
            specialize(p, t)
    except SingularSurface as exc:
        return SmoothnessResult(False, str(exc))
    return SmoothnessResult(True, "char form squarefree of degree 5; all degenerate members have rank 4")


def kernel_vector(G) -> list:
    ker = linalg.kernel(G)
    if len(ker) != 1:
        raise SingularSurface(f"kernel of dimension {len(ker)}, expected 1")
    return ker[0]


# ---------------------------------------------------------------------------
# block diagonal form


@dataclass
class BlockForm:
    U: list[list[Fraction]]
    pencil: Pencil
    block_sizes: list[int]
    points: list[ClosedPoint] = field(default_factory=list)


def block_diagonalize(p: Pencil) -> BlockForm:
    """Change of basis over Q making M and M~ block diagonal, one block per closed point.

    For a point T of degree m with vertex v over kappa(T) = Q(theta), the
    columns Tr(theta^i v), i < m, span the sum of the Galois-conjugate
    vertices; vertices of distinct degenerate members are orthogonal for
    both forms, which gives the block structure.
    """
    ds = degeneracy_scheme(char_form(p))
    cols: list[list[Fraction]] = []
    sizes = []
    for t in ds.points:
        G = specialize(p, t)
        v = kernel_vector(G)
        K = t.field
        theta_pow = K.one()
        for _ in range(t.degree):
            w = [(theta_pow * c).trace() for c in v]
            cols.append(_primitive_rational(w))
            theta_pow = theta_pow * K.gen
        sizes.append(t.degree)
    U = linalg.transpose(cols)
    if linalg.det(U) == 0:
        raise SingularSurface("vertex traces do not span Q^5")
    bp = p.change_coordinates(U)
    _verify_blocks(bp, sizes)
    return BlockForm(U, bp, sizes, list(ds.points))


def _primitive_rational(w: list[Fraction]) -> list[Fraction]:
    from math import gcd, lcm
    from functools import reduce

    den = reduce(lcm, (c.denominator for c in w), 1)
    ints = [int(c * den) for c in w]
    g = reduce(gcd, ints, 0) or 1
    first = next((c for c in ints if c), 1)
    if first < 0:
        g = -g
    return [Fraction(c // g) for c in ints]


def _verify_blocks(bp: Pencil, sizes: list[int]) -> None:
    starts = []
    s = 0
    for k in sizes:
        starts.append((s, s + k))
        s += k
    owner = {}
    for b, (lo, hi) in enumerate(starts):
        for i in range(lo, hi):
            owner[i] = b
    for M in (bp.m, bp.m_tilde):
        for i in range(N):
            for j in range(N):
                if owner[i] != owner[j] and M.entries[i][j] != 0:
                    raise AssertionError("block structure failed")


def small_rational_points(p: Pencil, height_bound: int = 2, limit: int = 8) -> list[list[Fraction]]:
    """Primitive integer points of X with coordinates bounded by height_bound, sparsest first."""
    from itertools import combinations, product
    from math import gcd

    from .localarith.padic import IntQuadForm

    F1 = IntQuadForm.from_gram(p.m.rows())
    F2 = IntQuadForm.from_gram(p.m_tilde.rows())
    out = []
    for h in range(1, height_bound + 1):
        vals = [v for k in range(1, h + 1) for v in (k, -k)]
        for k in range(1, N + 1):
            for support in combinations(range(N), k):
                for vs in product(vals, repeat=k):
                    if vs[0] < 0 or max(abs(v) for v in vs) != h or gcd(*vs) != 1:
                        continue
                    x = [0] * N
                    for s, v in zip(support, vs):
                        x[s] = v
                    if F1(x) == 0 and F2(x) == 0:
                        out.append([Fraction(c) for c in x])
                        if len(out) >= limit:
                            return out
    return out
