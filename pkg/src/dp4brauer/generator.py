"""Seeded test surfaces: block (2,3) samples, BSD-type presets, planted points, random pencils."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg import linalg
from .exactalg.poly import interpolate
from .exactalg.squareclass import is_rational_square, squarefree_part
from .pencil import N, Pencil, SingularSurface, SymMat5, smoothness_check

KINDS = ("block23", "bsd_type", "planted_point", "random")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    coefficient_bound: int = 10
    seed: int = 0
    target_order: int | None = None
    budget: int = 20_000

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if self.coefficient_bound < 1:
            raise ValueError("coefficient_bound must be at least 1")
        if self.target_order not in (None, 1, 2, 4):
            raise ValueError("target_order must be 1, 2 or 4")


@dataclass
class Generated:
    pencil: Pencil
    provenance: dict
    point: list[Fraction] | None = None

    def to_json_obj(self) -> dict:
        obj = self.pencil.to_json_obj()
        obj["monomials"] = {"q": self.pencil.m.monomials(), "q_tilde": self.pencil.m_tilde.monomials()}
        if self.point is not None:
            obj["point"] = [str(c) for c in self.point]
        obj["provenance"] = self.provenance
        return obj


def _rng(spec: GenSpec) -> random.Random:
    return random.Random(f"{spec.kind}:{spec.seed}:{spec.coefficient_bound}:{spec.target_order}")


def _pencil(q: dict, qt: dict) -> Pencil:
    return Pencil(SymMat5.from_monomials(q), SymMat5.from_monomials(qt))


# ---------------------------------------------------------------------------
# block (2,3) parameter space


def _bottom_hessian(coeffs: dict) -> list[list[Fraction]]:
    H = [[Fraction(0)] * 3 for _ in range(3)]
    for (i, j), c in coeffs.items():
        if i == j:
            H[i - 2][i - 2] = Fraction(2 * c)
        else:
            H[i - 2][j - 2] = H[j - 2][i - 2] = Fraction(c)
    return H


def cover_value(a_low: dict, b_low: dict, b11) -> Fraction:
    """det(2r A~ + B~) det(-2r A~ + B~) with r^2 = b11, as an exact rational.

    A~, B~ are the Hessians of the lower blocks (variables x2, x3, x4).
    """
    A, B = _bottom_hessian(a_low), _bottom_hessian(b_low)
    n = len(A) + 1
    ss = [Fraction(k) for k in range(n)]
    D = interpolate(ss, [linalg.det([[s * a + b for a, b in zip(r, q)] for r, q in zip(A, B)]) for s in ss])
    d = list(D.coeffs) + [Fraction(0)] * (n - len(D.coeffs))
    b11 = Fraction(b11)
    even = sum((d[k] * 4 ** (k // 2) * b11 ** (k // 2) for k in range(0, n, 2)), Fraction(0))
    odd = sum((d[k] * 2**k * b11 ** (k // 2) for k in range(1, n, 2)), Fraction(0))
    return even * even - b11 * odd * odd


def sample_block23(spec: GenSpec) -> Generated:
    """A pencil in block (2,3) form with a00 = a11 = b01 = 0, a01 = b00 = 1, b11 != 0.

    Samples are kept only when the norm of eps_T is a rational square; eps_T and
    eps_T' being nonsquares is generic, not guaranteed.
    """
    if spec.kind != "block23":
        raise ValueError("spec.kind must be block23")
    rng = _rng(spec)
    B = spec.coefficient_bound
    pairs = [(i, j) for i in range(2, N) for j in range(i, N)]
    rejected = {"b11": 0, "b11 square": 0, "cover": 0, "singular": 0}
    for attempt in range(1, spec.budget + 1):
        b11 = rng.randint(-B, B)
        a_low = {ij: rng.randint(-B, B) for ij in pairs}
        b_low = {ij: rng.randint(-B, B) for ij in pairs}
        if b11 == 0:
            rejected["b11"] += 1
            continue
        if is_rational_square(Fraction(b11)):
            # the top block would split into two rational points
            rejected["b11 square"] += 1
            continue
        w2 = cover_value(a_low, b_low, b11)
        if w2 == 0 or not is_rational_square(w2):
            rejected["cover"] += 1
            continue
        q = {"x0*x1": 1, **{_mono(i, j): c for (i, j), c in a_low.items()}}
        qt = {"x0^2": 1, "x1^2": b11, **{_mono(i, j): c for (i, j), c in b_low.items()}}
        p = _pencil(q, qt)
        if not smoothness_check(p):
            rejected["singular"] += 1
            continue
        prov = {
            "kind": "block23",
            "seed": spec.seed,
            "coefficient_bound": B,
            "attempts": attempt,
            "rejected": rejected,
            "b11": b11,
            "cover_w_squared": str(w2),
            "note": "nontriviality is generic, not guaranteed",
        }
        return Generated(p, prov)
    raise LookupError(f"no block23 sample within budget {spec.budget}; rejections {rejected}")


def _mono(i: int, j: int) -> str:
    return f"x{i}^2" if i == j else f"x{i}*x{j}"


# ---------------------------------------------------------------------------
# BSD-type preset


BSD_PERMUTATION = (1, 0, 2, 3, 4)


def bsd_type(a, b, c, eps) -> Generated:
    """c x3 x4 = x2^2 - eps x1^2 and (x3 + x4)(a x3 + b x4) = x2^2 - eps x0^2.

    The Birch--Swinnerton-Dyer surface is (1, 2, 1, 5) after swapping x0 and x1;
    the swap is recorded in the provenance.
    """
    a, b, c, eps = (Fraction(v) for v in (a, b, c, eps))
    q = {"x3*x4": c, "x2^2": -1, "x1^2": eps}
    qt = {"x3^2": a, "x3*x4": a + b, "x4^2": b, "x2^2": -1, "x0^2": eps}
    p = _pencil(q, qt)
    sm = smoothness_check(p)
    if not sm:
        raise SingularSurface(sm.diagnostic)
    prov = {
        "kind": "bsd_type",
        "parameters": {"a": str(a), "b": str(b), "c": str(c), "eps": str(eps)},
        "coordinate_permutation": list(BSD_PERMUTATION),
        "note": "apply the permutation (swap x0 and x1) to put x0 in the first quadric",
    }
    return Generated(p, prov)


def permute(p: Pencil, perm: Sequence[int]) -> Pencil:
    """Substitute x_i -> x_perm[i]."""
    U = [[Fraction(1) if perm[j] == i else Fraction(0) for j in range(N)] for i in range(N)]
    return p.change_coordinates(U)


# ---------------------------------------------------------------------------
# planted points and random pencils


def _random_point(rng: random.Random) -> tuple[list[int], int]:
    P = [rng.randint(-2, 2) for _ in range(N)]
    k = rng.randrange(N)
    P[k] = 1
    return P, k


def _random_quadric(rng: random.Random, bound: int) -> dict:
    return {_mono(i, j): rng.randint(-bound, bound) for i in range(N) for j in range(i, N)}


def _plant(q: dict, P: Sequence[int], k: int) -> dict:
    """Adjust the x_k^2 coefficient so that q(P) = 0 (P[k] = 1)."""
    q = dict(q)
    q[_mono(k, k)] = 0
    val = sum(c * _eval_mono(m, P) for m, c in q.items())
    q[_mono(k, k)] = -val
    return q


def _eval_mono(m: str, P: Sequence[int]) -> int:
    if "^" in m:
        i = int(m[1])
        return P[i] * P[i]
    i, j = int(m[1]), int(m[4])
    return P[i] * P[j]


def random_pencil(spec: GenSpec, plant: bool = False) -> Generated:
    """A smooth pencil with coefficients in the box, optionally through a planted point."""
    rng = _rng(spec)
    B = spec.coefficient_bound
    for attempt in range(1, spec.budget + 1):
        q, qt = _random_quadric(rng, B), _random_quadric(rng, B)
        P = None
        if plant:
            P, k = _random_point(rng)
            q, qt = _plant(q, P, k), _plant(qt, P, k)
        p = _pencil(q, qt)
        if not smoothness_check(p):
            continue
        prov = {"kind": "planted_point" if plant else "random", "seed": spec.seed, "coefficient_bound": B,
                "attempts": attempt}
        pt = [Fraction(c) for c in P] if P is not None else None
        if pt is not None:
            assert p.contains(pt)
        return Generated(p, prov, pt)
    raise LookupError(f"no smooth pencil within budget {spec.budget}")


def _diagonal_classes(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """Square classes of eps_i for the diagonal pencil (sum a x^2, sum b x^2)."""
    ts = []
    for ai, bi in zip(a, b):
        if ai == 0:
            return None
        ts.append(Fraction(-bi, ai))
    if len(set(ts)) < N:
        return None
    out = []
    for i in range(N):
        e = Fraction(1)
        for j in range(N):
            if j != i:
                e *= ts[i] * a[j] + b[j]
        out.append(squarefree_part(e))
    return out


def _diagonal_order(classes: Sequence[int]) -> int:
    groups: dict[int, int] = {}
    for c in classes:
        if c != 1:
            groups[c] = groups.get(c, 0) + 1
    if any(n >= 3 for n in groups.values()):
        return 4
    pairs = [c for c, n in groups.items() if n == 2]
    for c in pairs:
        if any(d != c for d in classes if d != 1):
            return 2
    return 1


def planted_point(spec: GenSpec) -> Generated:
    """Two quadrics through a small rational point P.

    With a target order, diagonal pencils sum a_i x_i^2, sum b_i x_i^2 are
    rejection-sampled until the all-rational degeneracy scheme has the wanted
    pattern of eps classes; the order is then confirmed by brauer_group.
    """
    if spec.target_order is None:
        return random_pencil(spec, plant=True)
    from .brauer import brauer_group

    rng = _rng(spec)
    B = spec.coefficient_bound
    for attempt in range(1, spec.budget + 1):
        P, k = _random_point(rng)
        a = [rng.randint(-B, B) for _ in range(N)]
        b = [rng.randint(-B, B) for _ in range(N)]
        a[k] = b[k] = 0
        a[k] = -sum(ai * x * x for ai, x in zip(a, P))
        b[k] = -sum(bi * x * x for bi, x in zip(b, P))
        if max(abs(a[k]), abs(b[k])) > 4 * B:
            continue
        classes = _diagonal_classes(a, b)
        if classes is None or _diagonal_order(classes) != spec.target_order:
            continue
        p = Pencil(SymMat5.diagonal(a), SymMat5.diagonal(b))
        if not smoothness_check(p):
            continue
        pt = [Fraction(c) for c in P]
        rep = brauer_group(p, hints=[pt])
        if rep.order != spec.target_order:
            continue
        prov = {"kind": "planted_point", "seed": spec.seed, "coefficient_bound": B, "attempts": attempt,
                "target_order": spec.target_order, "diagonal": {"a": a, "b": b}, "eps_classes": classes}
        return Generated(p, prov, pt)
    raise LookupError(f"no planted instance of order {spec.target_order} within budget {spec.budget}")


def generate(spec: GenSpec) -> Generated:
    if spec.kind == "block23":
        return sample_block23(spec)
    if spec.kind == "bsd_type":
        return bsd_type(1, 2, 1, 5)
    if spec.kind == "planted_point":
        return planted_point(spec)
    return random_pencil(spec)
