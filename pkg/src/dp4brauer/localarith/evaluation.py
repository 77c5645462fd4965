"""Local points on X, evaluation of cyclic algebras, Brauer-Manin scans and fibre solvability."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm, prod
from typing import Sequence

import mpmath
from sympy import factorint, nextprime

from ..brauer import BrauerReport, CyclicAlgebraRep, Fibration, binary_quartic_disc, fiber_pencil
from ..exactalg.numberfield import NfElem, nf_norm
from ..pencil import Pencil
from .hilbert import REAL, Place, hilbert
from .padic import IntQuadForm, ResidueSearch, exhaustive_tree, newton_lift, random_lift, vval
from .real import definite_member, project_to_variety, sample_real_points

HALF = Fraction(1, 2)


@dataclass
class LocalPoint:
    place: Place
    coords: list
    precision: int
    certificate: str
    chart: int = 0
    e: int = 0
    columns: tuple[int, int] | None = None

    def to_json(self) -> dict:
        if self.place.is_real:
            cs = [mpmath.nstr(c, 20) for c in self.coords]
        else:
            cs = [str(c) for c in self.coords]
        return {"place": str(self.place), "coords": cs, "precision": self.precision,
                "certificate": self.certificate}


def pencil_int_forms(p: Pencil) -> list[IntQuadForm]:
    return [IntQuadForm.from_gram(p.m.rows()), IntQuadForm.from_gram(p.m_tilde.rows())]


def _small_enough_for_enumeration(p: int, n: int) -> bool:
    return p ** (n - 2) <= 6000


def sample_local_points(pencil: Pencil, v: Place, count: int = 20, precision: int = 12, seed: int = 0,
                        max_tries: int | None = None) -> tuple[list[LocalPoint], str]:
    """Up to `count` certified local points on X at v, and a note."""
    rng = random.Random(f"{seed}:{v}")
    if v.is_real:
        grams = [pencil.m.rows(), pencil.m_tilde.rows()]
        dm = definite_member(*grams)
        if dm is not None:
            return [], f"X(R) empty: definite member {dm}"
        pts = sample_real_points(grams, count, rng, tries=max_tries or 30 * count)
        out = [LocalPoint(v, pt.coords, 40, f"Gauss-Newton residual {pt.residual:.1e}, sigma_min {pt.sigma_min:.2e}")
               for pt in pts]
        note = "ok" if len(out) >= count else f"found {len(out)} of {count}"
        return out, note
    p = v.p
    forms = pencil_int_forms(pencil)
    rs = ResidueSearch(forms, p)
    n = forms[0].n
    if _small_enough_for_enumeration(p, n):
        residues = list(rs.all_points())
        rng.shuffle(residues)
        source = itertools.cycle(residues) if residues else iter(())
    else:
        source = rs.random_points(rng, max_tries or 60 * count)
    out: list[LocalPoint] = []
    seen = set()
    attempts = 0
    limit = max_tries or 60 * count
    for chart, x in source:
        attempts += 1
        if attempts > limit or len(out) >= count:
            break
        res = random_lift(forms, x, p, chart, precision, rng)
        if res.point is None:
            continue
        key = tuple(c % p ** min(precision, 3) for c in res.point)
        if key in seen and len(seen) < count:
            # prefer distinct residues while they last
            if rng.random() < 0.7:
                continue
        seen.add(key)
        out.append(LocalPoint(v, res.point, precision, f"Hensel e={res.e} on columns {res.columns}",
                              chart, res.e, res.columns))
    note = "ok" if len(out) >= count else f"found {len(out)} of {count}"
    return out, note


def refine(pencil: Pencil, pt: LocalPoint, precision: int) -> LocalPoint:
    if pt.place.is_real or pt.columns is None:
        return pt
    forms = pencil_int_forms(pencil)
    x = newton_lift(forms, pt.coords, pt.place.p, pt.columns, pt.e, precision)
    return LocalPoint(pt.place, x, precision, pt.certificate, pt.chart, pt.e, pt.columns)


# ---------------------------------------------------------------------------
# evaluation


def _factor_values_exact(alg: CyclicAlgebraRep, x: Sequence[int], companions: Sequence[bool]) -> list[Fraction]:
    vals = []
    for k, (form, K) in enumerate(alg.numerators):
        f = alg.companions[k] if companions[k] else form
        vals.append(nf_norm(sum((c * xi for c, xi in zip(f, x)), K.zero())))
    return vals


def _embeddings(K, dps: int):
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(K.min_poly.coeffs)]
        if K.degree == 1:
            return [-cs[1] / cs[0]]
        return mpmath.polyroots(cs, maxsteps=200, extraprec=2 * dps)


def _factor_values_real(alg: CyclicAlgebraRep, x: Sequence, companions: Sequence[bool], dps: int = 40):
    vals = []
    with mpmath.workdps(dps):
        for k, (form, K) in enumerate(alg.numerators):
            f = alg.companions[k] if companions[k] else form
            acc = mpmath.mpc(1)
            for r in _embeddings(K, dps):
                s = mpmath.mpc(0)
                for c, xi in zip(f, x):
                    e = mpmath.mpc(0)
                    for j, cj in enumerate(c.coords):
                        if cj:
                            e += (mpmath.mpf(cj.numerator) / cj.denominator) * r**j
                    s += e * xi
                acc *= s
            vals.append(acc.real)
    return vals


class Indeterminate(ArithmeticError):
    pass


def evaluate(alg: CyclicAlgebraRep, pt: LocalPoint, pencil: Pencil | None = None) -> Fraction:
    """inv_v of the algebra at the point: 0 or 1/2."""
    v = pt.place
    n = len(alg.numerators)
    choices = [[False] * n]
    for k in range(n):
        if alg.companions and alg.companions[k] is not None:
            c = [False] * n
            c[k] = True
            choices.append(c)
    if all(alg.companions[k] is not None for k in range(n)) and n > 1:
        choices.append([True] * n)
    if v.is_real:
        for comp in choices:
            vals = _factor_values_real(alg, pt.coords, comp)
            if all(abs(x) > mpmath.mpf(10) ** -20 for x in vals):
                sign = 1 if prod(1 if x > 0 else -1 for x in vals) > 0 else -1
                return Fraction(0) if hilbert(alg.eps, sign, v) == 1 else HALF
        raise Indeterminate("all representatives vanish at this real point")
    p = v.p
    slack = 3 if p == 2 else 1
    point = pt
    for _ in range(4):
        finer = None
        for comp in choices:
            vals = _factor_values_exact(alg, point.coords, comp)
            if any(x == 0 for x in vals):
                continue
            total = prod(vals)
            vv = vval(total.numerator, p) - vval(total.denominator, p)
            if vv + slack > point.precision - point.e:
                continue
            h = hilbert(alg.eps, total, v)
            if pencil is not None and point.columns is not None:
                # forms with p in their denominators lose digits; require stability under refinement
                finer = finer or refine(pencil, point, point.precision + 8)
                hi = _factor_values_exact(alg, finer.coords, comp)
                if any(_val(a, p) != _val(b, p) for a, b in zip(vals, hi)) or hilbert(alg.eps, prod(hi), v) != h:
                    continue
            return Fraction(0) if h == 1 else HALF
        if pencil is None or point.columns is None:
            break
        point = refine(pencil, point, 2 * point.precision)
    raise Indeterminate(f"square class not stable at {v}")


def _val(x: Fraction, p: int) -> int | None:
    return None if x == 0 else vval(x.numerator, p) - vval(x.denominator, p)


def evaluate_rational(alg: CyclicAlgebraRep, x: Sequence[Fraction], v: Place) -> Fraction:
    """Exact evaluation at a rational point of X."""
    den = reduce(lcm, (Fraction(c).denominator for c in x), 1)
    xi = [int(Fraction(c) * den) for c in x]
    n = len(alg.numerators)
    options = [[False] * n] + [[k == j for k in range(n)] for j in range(n)] + [[True] * n]
    for comp in options:
        if any(comp[k] and alg.companions[k] is None for k in range(n)):
            continue
        vals = _factor_values_exact(alg, xi, comp)
        if all(x != 0 for x in vals):
            return Fraction(0) if hilbert(alg.eps, prod(vals), v) == 1 else HALF
    raise Indeterminate("all representatives vanish at the point")


# ---------------------------------------------------------------------------
# relevant places and scans


def _primes_of(x) -> set[int]:
    x = Fraction(x)
    if x == 0:
        return set()
    out = set()
    for n in (abs(x.numerator), x.denominator):
        if n > 1:
            out.update(factorint(n).keys())
    return out


def fixed_divisor_primes(alg: CyclicAlgebraRep, rng: random.Random, trials: int = 24) -> set[int]:
    g = 0
    for _ in range(trials):
        x = [rng.randint(-50, 50) for _ in range(5)]
        vals = _factor_values_exact(alg, x, [False] * len(alg.numerators))
        val = prod(vals)
        if val:
            g = gcd(g, int(val.numerator))
    return _primes_of(g) if g else set()


def relevant_places(pencil: Pencil, report: BrauerReport, seed: int = 0) -> list[Place]:
    ps: set[int] = {2}
    for M in (pencil.m, pencil.m_tilde):
        for r in M.entries:
            for c in r:
                ps |= _primes_of(Fraction(c.denominator))
    f = report.char_form
    ps |= _primes_of(f.discriminant())
    for c in (f.coeffs[0], f.coeffs[5]):
        ps |= _primes_of(c)
    for d in report.data:
        ps |= _primes_of(nf_norm(d.eps))
        K = d.point.field
        if K.degree > 1:
            from ..exactalg.poly import discriminant

            ps |= _primes_of(discriminant(K.min_poly))
    rng = random.Random(seed)
    for g in report.generators:
        ps |= _primes_of(g.eps)
        ps |= fixed_divisor_primes(g, rng)
    return [REAL] + [Place(p) for p in sorted(ps)]


def spot_check_places(relevant: Sequence[Place], k: int = 3, start: int = 2) -> list[Place]:
    rel = {pl.p for pl in relevant}
    out = []
    p = start
    while len(out) < k:
        p = nextprime(p)
        if p not in rel:
            out.append(Place(p))
    return out


@dataclass
class PlaceTable:
    place: Place
    values: list[Fraction]
    note: str

    @property
    def observed(self) -> set[Fraction]:
        return set(self.values)

    def to_json(self) -> dict:
        return {"observed": sorted(str(x) for x in self.observed), "samples": len(self.values),
                "certificate": self.note}


@dataclass
class ScanResult:
    verdict: str
    tables: list[dict[Place, PlaceTable]]
    spot_checks: list[dict[Place, PlaceTable]]
    combinations: int
    forced_totals: list[Fraction | None]
    relevant: list[Place]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "combinations": self.combinations,
            "relevant_places": [str(p) for p in self.relevant],
            "generators": [
                {
                    "places": {str(pl): t.to_json() for pl, t in tab.items()},
                    "spot_checks": {str(pl): t.to_json() for pl, t in sc.items()},
                    "forced_total": None if tot is None else str(tot),
                }
                for tab, sc, tot in zip(self.tables, self.spot_checks, self.forced_totals)
            ],
        }


def place_values(pencil: Pencil, alg: CyclicAlgebraRep, v: Place, count: int, precision: int, seed: int,
                 points: list[LocalPoint] | None = None) -> PlaceTable:
    if points is None:
        # a few spare points stand in for indeterminate ones
        points, note = sample_local_points(pencil, v, count + count // 4 + 2, precision, seed)
        note = "ok" if len(points) >= count else f"found {len(points)} of {count}"
    else:
        note = "ok"
    vals = []
    skipped = 0
    for pt in points:
        if len(vals) >= count:
            break
        try:
            vals.append(evaluate(alg, pt, pencil))
        except Indeterminate:
            skipped += 1
    if skipped:
        note += f"; {skipped} indeterminate skipped"
    return PlaceTable(v, vals, note)


TRIVIAL = "trivially unobstructed by Br"
OBSTRUCTED = "obstructed (sampled)"
NO_OBSTRUCTION = "no obstruction at samples"
INCONCLUSIVE = "inconclusive at budget"


def bm_scan(pencil: Pencil, report: BrauerReport, place_budget: int = 12, sample_budget: int = 20,
            precision: int = 10, seed: int = 0, spot_checks: int = 3, prime_bound: int | None = None) -> ScanResult:
    """Tabulate local invariants of every generator over the relevant places.

    Constant values at every relevant place force the total; 1/2 means the
    sampled adelic points are all obstructed. A place with two observed values
    lets the total be adjusted to 0.
    """
    if report.order == 1:
        return ScanResult(TRIVIAL, [], [], 0, [], [])
    if not report.generators:
        return ScanResult(INCONCLUSIVE, [], [], 0, [], [])
    rel = relevant_places(pencil, report, seed)
    if prime_bound is not None:
        rel = [pl for pl in rel if pl.is_real or pl.p <= prime_bound]
    rel = rel[: place_budget + 1]
    points = {}
    notes = {}
    spare = sample_budget + sample_budget // 4 + 2
    for pl in rel:
        points[pl], _ = sample_local_points(pencil, pl, spare, precision, seed)
        notes[pl] = "ok" if len(points[pl]) >= sample_budget else f"found {len(points[pl])} of {sample_budget}"
    checks = spot_check_places(relevant_places(pencil, report, seed), spot_checks)
    check_points = {pl: sample_local_points(pencil, pl, spare, precision, seed)[0] for pl in checks}
    tables, spots, totals = [], [], []
    verdicts = []
    combos = 0
    for alg in report.generators:
        tab = {}
        for pl in rel:
            t = place_values(pencil, alg, pl, sample_budget, precision, seed, points[pl])
            t.note = notes[pl] + ("" if t.note == "ok" else "; " + t.note)
            tab[pl] = t
        sc = {pl: place_values(pencil, alg, pl, sample_budget, precision, seed, check_points[pl]) for pl in checks}
        tables.append(tab)
        spots.append(sc)
        n_comb = prod(len(t.values) for t in tab.values())
        combos = max(combos, n_comb)
        if any(len(t.values) == 0 for t in tab.values()):
            totals.append(None)
            verdicts.append(INCONCLUSIVE)
            continue
        spot_bad = any(t.observed - {Fraction(0)} for t in sc.values())
        if any(len(t.observed) > 1 for t in tab.values()):
            totals.append(None)
            verdicts.append(NO_OBSTRUCTION if not spot_bad else INCONCLUSIVE)
            continue
        total = sum((next(iter(t.observed)) for t in tab.values()), Fraction(0)) % 1
        totals.append(total)
        if spot_bad:
            verdicts.append(INCONCLUSIVE)
        else:
            verdicts.append(OBSTRUCTED if total == HALF else NO_OBSTRUCTION)
    if OBSTRUCTED in verdicts:
        verdict = OBSTRUCTED
    elif INCONCLUSIVE in verdicts:
        verdict = INCONCLUSIVE
    else:
        verdict = NO_OBSTRUCTION
    return ScanResult(verdict, tables, spots, combos, totals, rel)


# ---------------------------------------------------------------------------
# reciprocity at global points


@dataclass
class ReciprocityResult:
    ok: bool
    sums: list[Fraction]
    per_place: list[dict[Place, Fraction]]


def reciprocity_check(pencil: Pencil, report: BrauerReport, x: Sequence, places: Sequence[Place] | None = None,
                      seed: int = 0) -> ReciprocityResult:
    """Sum of invariants over the relevant places at a rational point of X; 0 for a correct generator."""
    x = [Fraction(c) for c in x]
    if not pencil.contains(x):
        raise ValueError("point is not on X")
    rel = list(places) if places is not None else relevant_places(pencil, report, seed)
    sums, per = [], []
    for alg in report.generators:
        d = {pl: evaluate_rational(alg, x, pl) for pl in rel}
        per.append(d)
        sums.append(sum(d.values(), Fraction(0)) % 1)
    return ReciprocityResult(all(s == 0 for s in sums), sums, per)


# ---------------------------------------------------------------------------
# fibres


@dataclass
class FiberSolvability:
    t: Fraction | None
    place: Place
    status: bool | None
    certificate: str

    def to_json(self) -> dict:
        return {"t": "inf" if self.t is None else str(self.t), "place": str(self.place),
                "solvable": self.status, "certificate": self.certificate}


def fiber_forms(pencil: Pencil, fib: Fibration, t) -> list[IntQuadForm]:
    A1, A2, _ = fiber_pencil(pencil, fib, t)
    return [IntQuadForm.from_gram(A1), IntQuadForm.from_gram(A2)]


def fiber_bad_places(pencil: Pencil, fib: Fibration, t) -> list[Place]:
    forms = fiber_forms(pencil, fib, t)
    A1, A2 = forms[0].gram(), forms[1].gram()
    d = binary_quartic_disc(A1, A2)
    if d == 0:
        raise ValueError("fiber is singular; every place is suspect")
    ps = {2} | _primes_of(d)
    return [REAL] + [Place(p) for p in sorted(ps)]


def fiber_local_solvability(pencil: Pencil, fib: Fibration, t, v: Place, precision: int = 8,
                            node_budget: int = 200_000) -> FiberSolvability:
    """Existence of a Q_v-point on the genus-one fibre over t, with a certificate or 'unknown'."""
    tt = None if t is None else Fraction(t)
    forms = fiber_forms(pencil, fib, tt)
    if v.is_real:
        A1, A2 = forms[0].gram(), forms[1].gram()
        dm = definite_member(A1, A2)
        if dm is not None:
            return FiberSolvability(tt, v, False, f"definite pencil member {dm}")
        pt = None
        rng = random.Random(0)
        for _ in range(40):
            pt = project_to_variety([A1, A2], [rng.gauss(0, 1) for _ in range(4)])
            if pt is not None:
                return FiberSolvability(tt, v, True, "real point by Gauss-Newton with full-rank Jacobian")
        return FiberSolvability(tt, v, None, "no definite member tested and no real point found")
    p = v.p
    A1, A2 = forms[0].gram(), forms[1].gram()
    d = binary_quartic_disc(A1, A2)
    if p != 2 and d != 0 and Fraction(d).numerator % p != 0 and Fraction(d).denominator % p != 0:
        return FiberSolvability(tt, v, True, "good reduction: smooth genus-one curve has F_p-points (Hasse-Weil), Hensel")
    res = exhaustive_tree(forms, p, max_depth=precision, node_budget=node_budget)
    if res.status == "solvable":
        return FiberSolvability(tt, v, True, res.note)
    if res.status == "insolvable":
        return FiberSolvability(tt, v, False, f"no residue class survives lifting ({res.nodes} nodes)")
    return FiberSolvability(tt, v, None, res.note)
