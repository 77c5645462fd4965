"""Rank-4 quadrics over a residue field: vertex, discriminant, points, tangents, normal form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd, lcm
from typing import Iterator, Sequence

from .exactalg import linalg
from .exactalg.numberfield import NfElem, NumberField, nf_is_square, nf_sqrt
from .pencil import SingularSurface, kernel_vector

N = 5

LinearForm = list  # five NfElem coefficients


@dataclass
class Rank4Quadric:
    field: NumberField
    gram: list[list[NfElem]]
    vertex: list[NfElem]

    @classmethod
    def from_gram(cls, K: NumberField, gram) -> "Rank4Quadric":
        G = [[K(c) for c in r] for r in gram]
        return cls(K, G, vertex(G))

    def value(self, x: Sequence) -> NfElem:
        return linalg.quad_form(self.gram, list(x))

    def polar(self, x: Sequence, y: Sequence) -> NfElem:
        return linalg.dot(list(x), linalg.matvec(self.gram, list(y)))

    def hyperplane_index(self) -> int:
        return next(i for i, c in enumerate(self.vertex) if not c.is_zero())


def vertex(gram) -> list[NfElem]:
    """Kernel generator with first nonzero coordinate 1."""
    r = linalg.rank(gram)
    if r != 4:
        raise SingularSurface(f"quadric has rank {r}, expected 4")
    v = kernel_vector(gram)
    lead = next(c for c in v if c != 0)
    return [c / lead for c in v]


def discriminant_eps(q: Rank4Quadric) -> NfElem:
    """Gram determinant on the smallest-index coordinate hyperplane avoiding the vertex."""
    h = q.hyperplane_index()
    keep = [i for i in range(N) if i != h]
    sub = [[q.gram[i][j] for j in keep] for i in keep]
    return linalg.det(sub)


def eps_on_hyperplane(q: Rank4Quadric, i: int) -> NfElem:
    if q.vertex[i].is_zero():
        raise ValueError(f"hyperplane x{i} = 0 contains the vertex")
    keep = [j for j in range(N) if j != i]
    return linalg.det([[q.gram[a][b] for b in keep] for a in keep])


# ---------------------------------------------------------------------------
# linear forms


def form_value(form: Sequence, x: Sequence):
    return linalg.dot(list(form), list(x))


def normalize_form(form: Sequence[NfElem]) -> list[NfElem]:
    """Scale a form over kappa to integral coordinates with content 1 and a positive leading entry."""
    K = form[0].field
    ints: list[list[int]] = []
    den = reduce(lcm, (c.denominator for e in form for c in e.coords), 1)
    for e in form:
        ints.append([int(c * den) for c in e.coords])
    g = reduce(gcd, (c for row in ints for c in row), 0)
    if g == 0:
        raise ValueError("zero linear form")
    lead = next(c for row in ints for c in row if c)
    if lead < 0:
        g = -g
    return [NfElem(K, [Fraction(c, g) for c in row]) for row in ints]


def form_support(form: Sequence[NfElem]) -> int:
    return sum(1 for e in form if not e.is_zero())


def form_height(form: Sequence[NfElem]) -> int:
    return max(abs(c.numerator) for e in form for c in e.coords)


def form_pretty(form: Sequence[NfElem], var: str = "θ") -> str:
    parts = []
    for i, e in enumerate(form):
        if e.is_zero():
            continue
        if e.is_rational():
            c = e.coords[0]
            coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
        else:
            coef = f"({e.pretty(var)})*"
        parts.append(f"{coef}x{i}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def form_to_json(form: Sequence[NfElem]) -> list[list[str]]:
    return [[str(c) for c in e.coords] for e in form]


def form_from_json(K: NumberField, data) -> list[NfElem]:
    return [NfElem(K, [Fraction(c) for c in row]) for row in data]


# ---------------------------------------------------------------------------
# point search


def _shell(h: int, slots: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors of sup-norm exactly h, sparsest first, first nonzero entry positive."""
    if h == 0:
        return
    nonzero = [v for k in range(1, h + 1) for v in (k, -k)]
    for k in range(1, slots + 1):
        for support in combinations(range(slots), k):
            for vals in product(nonzero, repeat=k):
                if vals[0] < 0 or max(abs(v) for v in vals) != h:
                    continue
                vec = [0] * slots
                for s, v in zip(support, vals):
                    vec[s] = v
                yield tuple(vec)


def iter_smooth_points(q: Rank4Quadric, height_bound: int, max_candidates: int = 200_000) -> Iterator[list[NfElem]]:
    """Smooth kappa-points of V(Q), searched on the hyperplane avoiding the vertex.

    Three coordinates run over kappa-elements with integer theta-coefficients of
    growing height; the fourth solves the quadratic. Every yielded point
    satisfies Q(P) = 0 exactly and differs from the vertex.
    """
    K = q.field
    d = K.degree
    h_idx = q.hyperplane_index()
    coords = [i for i in range(N) if i != h_idx]
    G = q.gram
    # a coordinate with vanishing diagonal gives a point immediately
    for j in coords:
        if G[j][j].is_zero():
            P = [K.zero()] * N
            P[j] = K.one()
            yield P
    j = coords[0]
    for c in coords:
        if not G[c][c].is_zero():
            j = c
            break
    others = [c for c in coords if c != j]
    a = G[j][j]
    if a.is_zero():
        return
    two_a_inv = (a * 2).inverse()
    basis = [K.one()]
    for _ in range(d - 1):
        basis.append(basis[-1] * NfElem(K, (0, 1)))
    seen = 0
    for h in range(1, height_bound + 1):
        for vec in _shell(h, 3 * d):
            seen += 1
            if seen > max_candidates:
                return
            ys = []
            for k in range(3):
                chunk = vec[k * d : (k + 1) * d]
                ys.append(NfElem(K, chunk))
            L = K.zero()
            R = K.zero()
            for k1, c1 in enumerate(others):
                y1 = ys[k1]
                if y1.is_zero():
                    continue
                L = L + G[j][c1] * y1 * 2
                R = R + G[c1][c1] * y1 * y1
                for k2 in range(k1 + 1, 3):
                    y2 = ys[k2]
                    if not y2.is_zero():
                        R = R + G[c1][others[k2]] * y1 * y2 * 2
            disc = L * L - a * R * 4
            if disc.is_zero():
                roots = [-L * two_a_inv]
            else:
                s = nf_sqrt(disc)
                if s is None:
                    continue
                roots = [(-L + s) * two_a_inv, (-L - s) * two_a_inv]
            for yj in roots:
                P = [K.zero()] * N
                P[j] = yj
                for c, y in zip(others, ys):
                    P[c] = y
                assert q.value(P).is_zero()
                yield P


def find_smooth_point(q: Rank4Quadric, height_bound: int = 3, hints: Sequence = (), max_candidates: int = 200_000):
    """First smooth point found, or None (absence is not a proof of insolvability)."""
    for P in _hinted(q, hints):
        return P
    for P in iter_smooth_points(q, height_bound, max_candidates):
        return P
    return None


def _hinted(q: Rank4Quadric, hints: Sequence) -> Iterator[list[NfElem]]:
    K = q.field
    for h in hints:
        P = [K(c) for c in h]
        if all(c.is_zero() for c in P) or not q.value(P).is_zero():
            continue
        if linalg.rank([P, q.vertex]) < 2:
            continue
        yield P


# ---------------------------------------------------------------------------
# tangent data and normal form


@dataclass
class TangentDatum:
    point: list[NfElem]
    form: list[NfElem]


def tangent_form(q: Rank4Quadric, P: Sequence) -> TangentDatum:
    P = list(P)
    if not q.value(P).is_zero():
        raise ValueError("point is not on the quadric")
    grad = linalg.matvec(q.gram, P)
    if all(c.is_zero() for c in grad):
        raise ValueError("point is the vertex")
    form = normalize_form(grad)
    assert form_value(form, P).is_zero()
    return TangentDatum(P, form)


def best_tangent(q: Rank4Quadric, height_bound: int = 3, hints: Sequence = (), pool: int = 12,
                 max_candidates: int = 200_000) -> TangentDatum | None:
    """Among the first few points found, the tangent form with fewest terms, then least height."""
    best = None
    for P in _hinted(q, hints):
        return tangent_form(q, P)
    n = 0
    for P in iter_smooth_points(q, height_bound, max_candidates):
        td = tangent_form(q, P)
        key = (form_support(td.form), form_height(td.form))
        if best is None or key < best[0]:
            best = (key, td)
        n += 1
        if n >= pool:
            break
    return None if best is None else best[1]


@dataclass
class NormalForm:
    """c Q = l1 l2 - l3^2 + eps l4^2, with l1 the tangent form at the base point."""

    c: NfElem
    l1: list[NfElem]
    l2: list[NfElem]
    l3: list[NfElem]
    l4: list[NfElem]
    eps: NfElem
    point: list[NfElem]


def _outer_sym(u, v):
    return [[(u[i] * v[j] + u[j] * v[i]) / 2 for j in range(N)] for i in range(N)]


def _outer(u):
    return [[u[i] * u[j] for j in range(N)] for i in range(N)]


def normal_form_gram(nf: NormalForm):
    A = _outer_sym(nf.l1, nf.l2)
    B = _outer(nf.l3)
    C = _outer(nf.l4)
    return [[A[i][j] - B[i][j] + nf.eps * C[i][j] for j in range(N)] for i in range(N)]


def verify_normal_form(q: Rank4Quadric, nf: NormalForm) -> bool:
    lhs = [[nf.c * g for g in r] for r in q.gram]
    return lhs == normal_form_gram(nf)


def normal_form(q: Rank4Quadric, td: TangentDatum) -> NormalForm:
    """Split off the hyperbolic plane through the tangent datum and diagonalize the rest."""
    K = q.field
    G = q.gram
    P = td.point
    l1 = list(td.form)
    gp = linalg.matvec(G, P)
    k = next(i for i, c in enumerate(gp) if not c.is_zero())
    R = [K.one() if i == k else K.zero() for i in range(N)]
    b = form_value(l1, R)
    # Q(x) = l1(x) (2 B(x,R) - beta Q(R)) / b + Q(x - beta R), beta = l1(x)/b
    gR = linalg.matvec(G, R)
    qR = q.value(R)
    l2p = [(gR[i] * 2 - l1[i] * qR / b) / b for i in range(N)]
    # residual form q'(x) = Q(x - (l1(x)/b) R) has rank 2
    Tm = [[(K.one() if i == j else K.zero()) - R[i] * l1[j] / b for j in range(N)] for i in range(N)]
    Gp = linalg.matmul(linalg.transpose(Tm), linalg.matmul(G, Tm))
    e = next((i for i in range(N) if not Gp[i][i].is_zero()), None)
    if e is None:
        # all diagonal entries zero: use a sum of two basis vectors
        i0, j0 = next((i, j) for i in range(N) for j in range(i + 1, N) if not Gp[i][j].is_zero())
        w = [K.one() if t in (i0, j0) else K.zero() for t in range(N)]
    else:
        w = [K.one() if t == e else K.zero() for t in range(N)]
    a = linalg.quad_form(Gp, w)
    u = [c / a for c in linalg.matvec(Gp, w)]  # q' = a u^2 + q''
    Gpp = [[Gp[i][j] - a * u[i] * u[j] for j in range(N)] for i in range(N)]
    e2 = next((i for i in range(N) if not Gpp[i][i].is_zero()), None)
    if e2 is None:
        raise AssertionError("residual form does not have rank 2")
    w2 = [K.one() if t == e2 else K.zero() for t in range(N)]
    bp = linalg.quad_form(Gpp, w2)
    v = [c / bp for c in linalg.matvec(Gpp, w2)]
    c = (-a).inverse()
    nf = NormalForm(
        c=c,
        l1=l1,
        l2=[x * c for x in l2p],
        l3=u,
        l4=v,
        eps=-bp / a,
        point=list(P),
    )
    if not verify_normal_form(q, nf):
        raise AssertionError("normal form identity failed")
    return nf


def second_tangent_sheet(nf: NormalForm) -> list[NfElem]:
    return list(nf.l2)


def same_square_class(x: NfElem, y: NfElem) -> bool:
    return nf_is_square(x / y)
