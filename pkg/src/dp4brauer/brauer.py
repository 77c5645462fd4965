"""Brauer group modulo constants: condition (star), generators, vertical fibrations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactalg import linalg
from .exactalg.factor import factor_over_q
from .exactalg.numberfield import NfElem, NumberField, nf_is_square, nf_norm, rational_representative
from .exactalg.squareclass import is_rational_square, squarefree_part
from .pencil import (
    BinaryQuintic,
    ClosedPoint,
    DegeneracyScheme,
    Pencil,
    SingularSurface,
    char_form,
    degeneracy_scheme,
    small_rational_points,
    smoothness_check,
    specialize,
)
from .quadric import (
    NormalForm,
    Rank4Quadric,
    TangentDatum,
    best_tangent,
    discriminant_eps,
    form_pretty,
    form_to_json,
    normal_form,
    second_tangent_sheet,
    tangent_form,
)

N = 5


@dataclass(frozen=True)
class StarScheme:
    indices: tuple[int, ...]
    points: tuple[ClosedPoint, ...]
    eps: tuple[NfElem, ...]
    norm_product_class: int
    rational_eps: int

    def sort_key(self):
        return (
            tuple(p.degree for p in self.points),
            tuple(tuple(p.field.min_poly.to_strings()) if not p.at_infinity else ("inf",) for p in self.points),
            self.rational_eps,
        )

    def describe(self) -> str:
        return "{" + ", ".join(p.label() for p in self.points) + "}"


@dataclass
class CyclicAlgebraRep:
    """(Q(sqrt eps), prod Norm(l_T) / l^e) with e = denominator_exponent."""

    eps: int
    numerators: list[tuple[list[NfElem], NumberField]]
    denominator: list[Fraction]
    denominator_exponent: int = 2
    companions: list[list[NfElem] | None] = field(default_factory=list)
    label: str = ""

    def numerator_norm(self, x: Sequence, use_companion: Sequence[bool] = ()) -> Fraction:
        """prod_T Norm_{kappa(T)/Q}(l_T(x)) for rational x."""
        acc = Fraction(1)
        for k, (form, K) in enumerate(self.numerators):
            f = form
            if use_companion and use_companion[k]:
                f = self.companions[k]
            acc *= nf_norm(sum((c * xi for c, xi in zip(f, x)), K.zero()))
        return acc

    def numerator_degree(self) -> int:
        return sum(K.degree for _, K in self.numerators)

    def check_degree(self) -> bool:
        return self.numerator_degree() == self.denominator_exponent

    def pretty(self) -> str:
        nums = []
        for form, K in self.numerators:
            if K.degree == 1:
                nums.append(f"({form_pretty(form)})")
            else:
                nums.append(f"Norm[{form_pretty(form)}]")
        den = form_pretty([NumberField.rationals()(c) for c in self.denominator])
        return f"({self.eps}, {'*'.join(nums)} / ({den})^{self.denominator_exponent})"

    def to_json(self) -> dict:
        return {
            "eps": self.eps,
            "numerator_forms": [
                {"form": form_to_json(f), "min_poly": K.min_poly.to_strings()} for f, K in self.numerators
            ],
            "denominator": [str(c) for c in self.denominator],
            "denominator_exponent": self.denominator_exponent,
            "display": self.pretty(),
        }


@dataclass
class Fibration:
    l0: list[Fraction]
    l1: list[Fraction]
    source: str = ""
    note: str = ""

    def __post_init__(self):
        if linalg.rank([list(self.l0), list(self.l1)]) != 2:
            raise ValueError("fibration forms are linearly dependent")

    def pretty(self) -> str:
        Q = NumberField.rationals()
        return f"[{form_pretty([Q(c) for c in self.l0])} : {form_pretty([Q(c) for c in self.l1])}]"

    def to_json(self) -> dict:
        return {"l0": [str(c) for c in self.l0], "l1": [str(c) for c in self.l1], "source": self.source,
                "note": self.note}


@dataclass
class PointData:
    point: ClosedPoint
    quadric: Rank4Quadric
    eps: NfElem
    eps_is_square: bool
    tangent: TangentDatum | None = None
    normal: NormalForm | None = None


@dataclass
class BrauerReport:
    order: int
    generators: list[CyclicAlgebraRep]
    fibrations: list[Fibration]
    star_schemes: list[StarScheme]
    witness: ClosedPoint | None
    flags: list[str]
    char_form: BinaryQuintic
    scheme: DegeneracyScheme
    data: list[PointData]
    step: int
    chosen: StarScheme | None = None
    order4_points: tuple[int, int, int] | None = None
    pencil: Pencil | None = None

    @property
    def generator_available(self) -> bool:
        return self.order == 1 or len(self.generators) > 0

    def eps_list(self) -> list[NfElem]:
        return [d.eps for d in self.data]


# ---------------------------------------------------------------------------


def point_data(p: Pencil, ds: DegeneracyScheme) -> list[PointData]:
    out = []
    for T in ds.points:
        q = Rank4Quadric.from_gram(T.field, specialize(p, T))
        e = discriminant_eps(q)
        out.append(PointData(T, q, e, nf_is_square(e)))
    return out


def enumerate_star(ds: DegeneracyScheme, eps_map: Sequence[NfElem]) -> list[StarScheme]:
    """All degree-2 subschemes with nonsquare eps classes and square norm product."""
    pts = ds.points
    out = []
    for i in range(len(pts)):
        if pts[i].degree != 2:
            continue
        e = eps_map[i]
        if nf_is_square(e):
            continue
        n = nf_norm(e)
        if not is_rational_square(n):
            continue
        a = rational_representative(e)
        if a is None or nf_is_square(e * a) is False:
            continue
        out.append(StarScheme((i,), (pts[i],), (e,), squarefree_part(n), a))
    lin = [i for i in range(len(pts)) if pts[i].degree == 1]
    for i, j in combinations(lin, 2):
        ei, ej = eps_map[i].coords[0], eps_map[j].coords[0]
        if is_rational_square(ei) or is_rational_square(ej):
            continue
        prod = ei * ej
        if not is_rational_square(prod):
            continue
        out.append(StarScheme((i, j), (pts[i], pts[j]), (eps_map[i], eps_map[j]), squarefree_part(prod),
                              squarefree_part(ei)))
    out.sort(key=StarScheme.sort_key)
    return out


def product_norm_check(ds: DegeneracyScheme, eps_map: Sequence[NfElem]) -> bool:
    prod = Fraction(1)
    for e in eps_map:
        prod *= nf_norm(e)
    return squarefree_part(prod) == 1


def _rational_form(form: Sequence[NfElem]) -> list[Fraction]:
    if not all(c.is_rational() for c in form):
        raise ValueError("form is not rational")
    return [c.coords[0] for c in form]


def _ensure_tangent(d: PointData, height_bound: int, hints, max_candidates: int) -> bool:
    if d.tangent is None:
        d.tangent = best_tangent(d.quadric, height_bound, hints=hints, max_candidates=max_candidates)
    if d.tangent is not None and d.normal is None:
        d.normal = normal_form(d.quadric, d.tangent)
    return d.tangent is not None


def _default_denominator(numerators: Sequence[list[NfElem]]) -> list[Fraction]:
    """Lowest-index x_i whose hyperplane is not a component of a numerator norm."""
    for i in range(N):
        ok = True
        for form in numerators:
            support = [k for k, c in enumerate(form) if not c.is_zero()]
            if support == [i]:
                ok = False
        if ok:
            return [Fraction(1) if k == i else Fraction(0) for k in range(N)]
    raise AssertionError("no admissible denominator")


def build_algebra(ss: StarScheme, data: Sequence[PointData]) -> CyclicAlgebraRep:
    ds = [data[i] for i in ss.indices]
    if any(d.tangent is None for d in ds):
        raise ValueError("missing tangent data")
    if is_rational_square(ss.rational_eps):
        raise ValueError("eps must be a nonsquare")
    nums = [(list(d.tangent.form), d.point.field) for d in ds]
    comps = [_companion(d) for d in ds]
    if len(ds) == 2:
        den = _rational_form(ds[1].tangent.form)
        label = "(eps, l0/l1)"
    else:
        den = _default_denominator([f for f, _ in nums])
        label = "(eps, Norm(l_T)/l^2)"
    return CyclicAlgebraRep(ss.rational_eps, nums, den, 2, comps, label)


def _companion(d: PointData):
    """The second sheet l2, scaled like the tangent so that form * companion = k^2 l1 l2.

    On X, l1 l2 is a norm from kappa(sqrt eps), so any further constant rescaling
    would shift local invariants by a constant symbol.
    """
    if d.normal is None:
        return None
    l1, form = d.normal.l1, list(d.tangent.form)
    i = next(j for j, c in enumerate(l1) if c != 0)
    k = form[i] / l1[i]
    if any(f != k * c for f, c in zip(form, l1)):
        raise ValueError("tangent form is not proportional to l1")
    return [k * c for c in second_tangent_sheet(d.normal)]


def _pair_algebra(eps: int, d_num: PointData, d_den: PointData, label: str) -> CyclicAlgebraRep:
    nums = [(list(d_num.tangent.form), d_num.point.field), (list(d_den.tangent.form), d_den.point.field)]
    comps = [_companion(d) for d in (d_num, d_den)]
    return CyclicAlgebraRep(eps, nums, _rational_form(d_den.tangent.form), 2, comps, label)


def vertical_fibration(ss: StarScheme, data: Sequence[PointData]) -> Fibration:
    ds = [data[i] for i in ss.indices]
    if any(d.tangent is None for d in ds):
        raise ValueError("missing tangent data")
    if len(ds) == 2:
        return Fibration(_rational_form(ds[0].tangent.form), _rational_form(ds[1].tangent.form),
                         source=ss.describe(), note="A_T = (L, l0/l1)")
    d = ds[0]
    K = d.point.field
    b, D = K.quadratic_data
    A = [c.coords[0] for c in d.tangent.form]
    B = [c.coords[1] for c in d.tangent.form]
    # theta = (-b + sqrt(D))/2, sqrt(D) = s sqrt(dsf)
    dsf = squarefree_part(D)
    s2 = D / dsf
    from .exactalg.squareclass import rational_sqrt

    s = rational_sqrt(s2)
    l0 = [a - b * bb / 2 for a, bb in zip(A, B)]
    l1 = [bb * s / 2 for bb in B]
    p0, p1 = _primitive(l0), _primitive(l1)
    r = dsf * (_ratio(l1, p1) / _ratio(l0, p0)) ** 2
    return Fibration(p0, p1, source=ss.describe(),
                     note=f"Norm(l_T) is proportional to l0^2 - {r}*l1^2")


def _ratio(v: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
    k = next(i for i, c in enumerate(w) if c != 0)
    return Fraction(v[k]) / w[k]


def _primitive(v: Sequence[Fraction]) -> list[Fraction]:
    from .pencil import _primitive_rational

    return _primitive_rational(list(v))


def brauer_group(p: Pencil, height_bound: int = 3, hints: Sequence = (), max_candidates: int = 200_000,
                 tangent_all: bool = False, rational_height: int = 2) -> BrauerReport:
    """Decide Br X / Br_0 X by the five-step procedure and build explicit generators.

    `hints` are known rational points of X; they are smooth points of every
    degenerate member and are tried before any search.
    """
    sm = smoothness_check(p)
    if not sm:
        raise SingularSurface(sm.diagnostic)
    # rational points of X are smooth points of every degenerate member
    hints = list(hints) + small_rational_points(p, rational_height)
    f = char_form(p)
    ds = degeneracy_scheme(f)
    data = point_data(p, ds)
    eps_map = [d.eps for d in data]
    flags: list[str] = []
    degs = ds.degrees()

    def finish(order, gens, fibs, stars, witness, step, chosen=None, o4=None):
        if tangent_all:
            for d in data:
                _ensure_tangent(d, height_bound, hints, max_candidates)
        return BrauerReport(order, gens, fibs, stars, witness, flags, f, ds, data, step, chosen, o4, p)

    if 5 in degs or 4 in degs:
        return finish(1, [], [], [], None, 2)

    stars = enumerate_star(ds, eps_map)

    lin = [i for i, pt in enumerate(ds.points) if pt.degree == 1]
    for trip in combinations(lin, 3):
        es = [eps_map[i].coords[0] for i in trip]
        if any(is_rational_square(e) for e in es):
            continue
        if all(is_rational_square(es[a] * es[b]) for a, b in combinations(range(3), 2)):
            i0, i1, i2 = trip
            eps = squarefree_part(es[0])
            ok = all(_ensure_tangent(data[i], height_bound, hints, max_candidates) for i in trip)
            gens, fibs = [], []
            if ok:
                d0, d1, d2 = data[i0], data[i1], data[i2]
                gens = [
                    _pair_algebra(eps, d0, d1, "(eps_T0, l0/l1)"),
                    _pair_algebra(eps, d0, d2, "(eps_T0, l0/l2)"),
                    _pair_algebra(eps, d2, d1, "(eps_T0, l2/l1)"),
                ]
                for ss in stars:
                    if len(ss.indices) == 2 and set(ss.indices) <= set(trip):
                        fibs.append(vertical_fibration(ss, data))
            else:
                flags.append("generator unavailable: smooth point search exhausted")
            return finish(4, gens, fibs, stars, None, 3, None, trip)

    for ss in stars:
        witness = next(
            (i for i in range(len(ds.points)) if i not in ss.indices and not data[i].eps_is_square), None
        )
        if witness is None:
            continue
        gens, fibs = [], []
        if all(_ensure_tangent(data[i], height_bound, hints, max_candidates) for i in ss.indices):
            gens = [build_algebra(ss, data)]
            fibs = [vertical_fibration(ss, data)]
        else:
            flags.append("generator unavailable: smooth point search exhausted")
        return finish(2, gens, fibs, stars, ds.points[witness], 4, ss)

    return finish(1, [], [], stars, None, 5)


# ---------------------------------------------------------------------------
# fibres and the order-4 projection


def hyperplane_basis(form: Sequence[Fraction]) -> list[list[Fraction]]:
    """Integral basis (as columns of a 5x4 matrix) of the kernel of a rational linear form."""
    ker = linalg.kernel([list(form)])
    return linalg.transpose([_primitive(v) for v in ker])


def fiber_pencil(p: Pencil, fib: Fibration, t) -> tuple[list[list[Fraction]], list[list[Fraction]], list[list[Fraction]]]:
    """Gram matrices of the two quadrics restricted to l0 - t l1 = 0 (t = None means l1 = 0)."""
    if t is None:
        form = list(fib.l1)
    else:
        t = Fraction(t)
        form = [a - t * b for a, b in zip(fib.l0, fib.l1)]
    B = hyperplane_basis(form)
    Bt = linalg.transpose(B)
    A1 = linalg.matmul(Bt, linalg.matmul(p.m.rows(), B))
    A2 = linalg.matmul(Bt, linalg.matmul(p.m_tilde.rows(), B))
    return A1, A2, B


def binary_quartic_disc(A1, A2) -> Fraction:
    from .exactalg.poly import interpolate

    ts = [Fraction(k) for k in range(5)]
    vals = [linalg.det([[t * a + b for a, b in zip(r, s)] for r, s in zip(A1, A2)]) for t in ts]
    g = interpolate(ts, vals)
    cs = list(g.coeffs) + [Fraction(0)] * (5 - len(g.coeffs))
    form = list(reversed(cs[:5]))  # c_j lambda^(4-j) mu^j
    return _binary_disc(form)


def _binary_disc(form: list[Fraction]) -> Fraction:
    from .exactalg.poly import UniPoly, discriminant

    n = len(form) - 1
    e = 0
    while e <= n and form[e] == 0:
        e += 1
    if e >= 2 or e > n:
        return Fraction(0)
    g = UniPoly(reversed(form))
    if g.degree < 1:
        return Fraction(1)
    d = discriminant(g)
    return d if e == 0 else form[1] ** 2 * d


@dataclass
class FiberDiagnostic:
    t: Fraction | None
    smooth: bool
    discriminant: Fraction

    def to_json(self) -> dict:
        return {"t": "inf" if self.t is None else str(self.t), "smooth": self.smooth,
                "discriminant": str(self.discriminant)}


def fiber_scan(p: Pencil, fib: Fibration, samples: Sequence) -> list[FiberDiagnostic]:
    out = []
    for t in samples:
        A1, A2, _ = fiber_pencil(p, fib, t)
        d = binary_quartic_disc(A1, A2)
        out.append(FiberDiagnostic(None if t is None else Fraction(t), d != 0, d))
    return out


@dataclass
class Order4Projection:
    fibration: Fibration | None
    span_rank: int
    retry: bool
    note: str = ""


def order4_projection(p: Pencil, report: BrauerReport, P: Sequence) -> Order4Projection:
    """Tangent forms at a rational point P of X to the three split cones; the third lies in the span."""
    P = [Fraction(c) for c in P]
    if not p.contains(P):
        raise ValueError("point is not on X")
    if report.order4_points is None:
        raise ValueError("not an order-4 report")
    forms = []
    for i in report.order4_points:
        q = report.data[i].quadric
        g = linalg.matvec(q.gram, P)
        forms.append([c.coords[0] for c in g])
    if any(all(c == 0 for c in f) for f in forms):
        return Order4Projection(None, linalg.rank(forms), True, "P is a vertex")
    r01 = linalg.rank(forms[:2])
    r = linalg.rank(forms)
    if r01 < 2:
        return Order4Projection(None, r, True, "l0 and l1 proportional at P")
    fib = Fibration(_primitive(forms[0]), _primitive(forms[1]), source="order-4 projection",
                    note="Br X = Br_vert for this map")
    return Order4Projection(fib, r, False)


# ---------------------------------------------------------------------------
# reports


def char_form_factors(f: BinaryQuintic) -> tuple[Fraction, list[tuple[list[Fraction], int]]]:
    """f = unit * prod h_i^m_i with h_i binary forms (lambda-leading coefficient 1, or mu)."""
    e = f.infinity_multiplicity()
    unit, facs = factor_over_q(f.dehomogenize())
    out = [(list(g.coeffs), m) for g, m in facs]  # ascending in t = lambda/mu
    if e:
        out.append(([Fraction(1), Fraction(0)], e))  # the form mu, ascending in mu/lambda
    return unit, out


def factored_pretty(f: BinaryQuintic) -> str:
    e = f.infinity_multiplicity()
    unit, facs = factor_over_q(f.dehomogenize())
    parts = []
    for g, m in facs:
        d = g.degree
        terms = []
        for k in range(d, -1, -1):
            c = g.coeffs[k]
            if c == 0:
                continue
            mono = "*".join(s for s in (_pw("λ", k), _pw("μ", d - k)) if s)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        s = " + ".join(terms).replace("+ -", "- ")
        parts.append(f"({s})" + (f"^{m}" if m > 1 else ""))
    if e:
        parts.append("μ" + (f"^{e}" if e > 1 else ""))
    return f"{unit}*" + "*".join(parts)


def _pw(v: str, k: int) -> str:
    if k == 0:
        return ""
    return v if k == 1 else f"{v}^{k}"


def report_to_json(r: BrauerReport) -> dict:
    pts = []
    for d in r.data:
        e = d.eps
        entry = {
            "label": d.point.label(),
            **d.point.to_json(),
            "eps": e.pretty(),
            "eps_is_square": d.eps_is_square,
            "eps_norm_class": squarefree_part(nf_norm(e)),
        }
        if d.point.degree == 1:
            entry["eps_class"] = squarefree_part(e.coords[0])
        elif d.point.degree == 2 and is_rational_square(nf_norm(e)) and not d.eps_is_square:
            entry["rational_representative"] = rational_representative(e)
        if d.tangent is not None:
            entry["tangent_point"] = [c.pretty() for c in d.tangent.point]
            entry["tangent_form"] = form_pretty(d.tangent.form)
        pts.append(entry)
    return {
        "char_form": r.char_form.to_json(),
        "char_form_display": r.char_form.pretty(),
        "char_form_factored": factored_pretty(r.char_form),
        "char_form_hessian_factored": factored_pretty(r.char_form.scale(Fraction(32))),
        "degeneracy_degrees": r.scheme.degrees(),
        "points": pts,
        "star_schemes": [s.describe() for s in r.star_schemes],
        "chosen_scheme": None if r.chosen is None else r.chosen.describe(),
        "witness": None if r.witness is None else r.witness.label(),
        "order": r.order,
        "decided_at_step": r.step,
        "generators": [g.to_json() for g in r.generators],
        "fibrations": [fb.to_json() for fb in r.fibrations],
        "product_norm_check": product_norm_check(r.scheme, r.eps_list()),
        "flags": list(r.flags),
    }
