"""Number fields Q[y]/(m(y)) with m monic integral irreducible, and their elements."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import isqrt

from .factor import factor_over_q
from .poly import UniPoly, interpolate, poly_xgcd, resultant
from .squareclass import is_rational_square, rational_sqrt, squarefree_part


class NumberField:
    """Residue field presented by a monic integral irreducible polynomial."""

    def __init__(self, min_poly: UniPoly, check: bool = True):
        if min_poly.lc != 1 or not min_poly.is_integral():
            raise ValueError("minimal polynomial must be monic with integer coefficients")
        if min_poly.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        if check and min_poly.degree > 1:
            _, facs = factor_over_q(min_poly)
            if len(facs) != 1 or facs[0][1] != 1:
                raise ValueError(f"{min_poly} is reducible over Q")
        self.min_poly = min_poly
        self.degree = min_poly.degree

    @classmethod
    def rationals(cls) -> "NumberField":
        return cls(UniPoly((0, 1)), check=False)

    @classmethod
    def from_monic_factor(cls, g: UniPoly) -> tuple["NumberField", Fraction]:
        """Present Q[y]/(g) with an integral generator theta = D*y; returns (field, D).

        A root y of g is theta / D.
        """
        g = g.monic()
        d = g.degree
        L = g.denominator_lcm()
        # smallest divisor D of L with D^d g(z/D) integral
        for D in sorted(k for k in range(1, isqrt(L) + 1) if L % k == 0 for k in {k, L // k}):
            m = g.scale_var(Fraction(1, D)) * (Fraction(D) ** d)
            if m.is_integral():
                return cls(m, check=False), Fraction(D)
        raise AssertionError("unreachable: D = L always clears denominators")

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self) -> int:
        return hash(self.min_poly)

    def __repr__(self) -> str:
        return f"NumberField({self.min_poly.pretty('y')})"

    def __call__(self, c) -> "NfElem":
        if isinstance(c, NfElem):
            return c
        if isinstance(c, (list, tuple)):
            return NfElem(self, c)
        return NfElem(self, (c,))

    @property
    def gen(self) -> "NfElem":
        if self.degree == 1:
            return NfElem(self, (-self.min_poly.coeffs[0],))
        return NfElem(self, (0, 1))

    def zero(self) -> "NfElem":
        return NfElem(self, ())

    def one(self) -> "NfElem":
        return NfElem(self, (1,))

    @cached_property
    def _reduction(self) -> list[tuple[Fraction, ...]]:
        # theta^k for k = d .. 2d-2 written in the power basis
        d = self.degree
        m = self.min_poly.coeffs
        rows = []
        cur = [-m[i] for i in range(d)]
        for _ in range(max(d - 1, 1)):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [cur[i] - top * m[i] for i in range(d)]
        return rows

    @cached_property
    def _traces(self) -> list[Fraction]:
        # trace of theta^i, i < d, from the companion matrix
        d = self.degree
        out = []
        for i in range(d):
            t = Fraction(0)
            for j in range(d):
                t += (NfElem(self, [0] * (i + j) + [1]) if i + j < d else _power(self, i + j)).coords[j]
            out.append(t)
        return out

    @cached_property
    def quadratic_data(self) -> tuple[Fraction, Fraction] | None:
        """For degree 2 with m = y^2 + b y + c: (b, D) where theta = (-b + sqrt(D))/2."""
        if self.degree != 2:
            return None
        c, b, _ = self.min_poly.coeffs
        return b, b * b - 4 * c


def _power(K: NumberField, k: int) -> "NfElem":
    x = K.one()
    t = NfElem(K, (0, 1)) if K.degree > 1 else K.gen
    for _ in range(k):
        x = x * t
    return x


class NfElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        d = field.degree
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coords]
        if len(cs) > d:
            # reduce a raw polynomial in theta
            cs = _reduce_raw(field, cs)
        cs += [Fraction(0)] * (d - len(cs))
        self.field = field
        self.coords: tuple[Fraction, ...] = tuple(cs)

    # arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "NfElem | None":
        if isinstance(other, NfElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NfElem(self.field, (other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NfElem(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return NfElem(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NfElem(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NfElem(self.field, [a * other for a in self.coords])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return NfElem(self.field, (self.coords[0] * o.coords[0],))
        raw = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        raw[i + j] += a * b
        return NfElem(self.field, _reduce_raw(self.field, raw))

    __rmul__ = __mul__

    def inverse(self) -> "NfElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.field.degree == 1:
            return NfElem(self.field, (1 / self.coords[0],))
        g, s, _ = poly_xgcd(self.as_poly(), self.field.min_poly)
        assert g.degree == 0
        return NfElem(self.field, s.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return NfElem(self.field, [a / other for a in self.coords])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, NfElem):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and all(c == 0 for c in self.coords[1:])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"NfElem({self.pretty()})"

    def pretty(self, var: str = "θ") -> str:
        return self.as_poly().pretty(var)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_poly(self) -> UniPoly:
        return UniPoly(self.coords)

    def norm(self) -> Fraction:
        return nf_norm(self)

    def trace(self) -> Fraction:
        return sum((c * t for c, t in zip(self.coords, self.field._traces)), Fraction(0))


def _reduce_raw(K: NumberField, raw: list[Fraction]) -> list[Fraction]:
    d = K.degree
    if d == 1:
        # Q presented as Q[y]/(y - r): theta = r
        r = -K.min_poly.coeffs[0]
        acc = Fraction(0)
        for c in reversed(raw):
            acc = acc * r + c
        return [acc]
    out = list(raw[:d]) + [Fraction(0)] * max(0, d - len(raw))
    red = K._reduction
    extra = raw[d:]
    if len(extra) > len(red):
        # long polynomial: fall back to division
        return list((UniPoly(raw) % K.min_poly).coeffs) + [Fraction(0)] * d
    for k, c in enumerate(extra):
        if c:
            row = red[k]
            for i in range(d):
                out[i] += c * row[i]
    return out


# ---------------------------------------------------------------------------
# norms and square classes


def nf_norm(x: NfElem) -> Fraction:
    """N_{K/Q}(x) = Res(min_poly, poly(x)) for monic min_poly."""
    K = x.field
    if K.degree == 1:
        return x.coords[0]
    p = x.as_poly()
    if p.is_zero():
        return Fraction(0)
    return resultant(K.min_poly, p)


def charpoly(x: NfElem) -> UniPoly:
    """Characteristic polynomial of multiplication by x, via norms of (z - x) at d+1 points."""
    K = x.field
    d = K.degree
    zs = [Fraction(i) for i in range(d + 1)]
    vals = [nf_norm(K(z) - x) for z in zs]
    return interpolate(zs, vals)


def _shifted_norm_poly(x: NfElem, j: int) -> UniPoly:
    """N_{K/Q}((z - j*theta)^2 - x) as a polynomial in z."""
    K = x.field
    d = K.degree
    theta = NfElem(K, (0, 1))
    zs = [Fraction(i) for i in range(2 * d + 1)]
    vals = []
    for z in zs:
        w = K(z) - theta * j
        vals.append(nf_norm(w * w - x))
    return interpolate(zs, vals)


def _sqrt_quadratic(x: NfElem) -> NfElem | None:
    K = x.field
    b, D = K.quadratic_data
    # theta = (-b + s)/2 with s^2 = D; write x = u + v*s
    a0, a1 = x.coords
    u = a0 - a1 * b / 2
    v = a1 / 2
    s_elem = NfElem(K, (b, 2))  # equals sqrt(D)
    if v == 0:
        r = rational_sqrt(u)
        if r is not None:
            return K(r)
        r = rational_sqrt(u / D)
        if r is not None:
            return s_elem * r
        return None
    n = rational_sqrt(u * u - D * v * v)
    if n is None:
        return None
    for sgn in (1, -1):
        p2 = (u + sgn * n) / 2
        p = rational_sqrt(p2)
        if p is not None and p != 0:
            q = v / (2 * p)
            cand = s_elem * q + p
            if cand * cand == x:
                return cand
    return None


def nf_sqrt(x: NfElem) -> NfElem | None:
    """A square root of x in its field, or None.

    Degree 1 and 2 use closed forms; higher degrees use the norm-polynomial
    method: shift by j*theta until N((z - j theta)^2 - x) is squarefree, factor
    over Q, and read off a linear factor of z^2 - x from a factor of degree [K:Q].
    """
    K = x.field
    if x.is_zero():
        return K.zero()
    if K.degree == 1:
        r = rational_sqrt(x.coords[0])
        return None if r is None else K(r)
    if not is_rational_square(nf_norm(x)):
        return None
    if K.degree == 2:
        return _sqrt_quadratic(x)
    return _sqrt_trager(x)


def _sqrt_trager(x: NfElem) -> NfElem | None:
    K = x.field
    d = K.degree
    theta = NfElem(K, (0, 1))
    for j in range(0, 4 * d + 8):
        N = _shifted_norm_poly(x, j)
        from .poly import poly_gcd

        if poly_gcd(N, N.derivative()).degree > 0:
            continue
        _, facs = factor_over_q(N)
        for g, _m in facs:
            if g.degree != d:
                continue
            # remainder of g modulo F(z) = z^2 - 2 j theta z + (j^2 theta^2 - x) over K
            c1 = theta * (-2 * j)
            c0 = theta * theta * (j * j) - x
            r1, r0 = _mod_monic_quadratic(g, c1, c0, K)
            if r1.is_zero():
                continue
            z = -r0 / r1
            cand = z - theta * j
            if cand * cand == x:
                return cand
        return None
    raise RuntimeError("no squarefree shift found")


def _mod_monic_quadratic(g: UniPoly, c1: NfElem, c0: NfElem, K: NumberField) -> tuple[NfElem, NfElem]:
    """Remainder of g(z) (rational coefficients) modulo z^2 + c1 z + c0 over K, as (r1, r0)."""
    rem = [K(c) for c in g.coeffs]
    for k in range(len(rem) - 1, 1, -1):
        top = rem[k]
        if top.is_zero():
            continue
        rem[k - 1] = rem[k - 1] - top * c1
        rem[k - 2] = rem[k - 2] - top * c0
        rem[k] = K.zero()
    while len(rem) < 2:
        rem.append(K.zero())
    return rem[1], rem[0]


def nf_is_square(x: NfElem) -> bool:
    if x.is_zero():
        raise ValueError("zero has no square class")
    return nf_sqrt(x) is not None


def rational_representative(x: NfElem) -> int | None:
    """Squarefree a in Q with a*x a square in the quadratic field of x.

    With t = trace(x) and s^2 = norm(x), (x + s)^2 = (t + 2s) x, so t + 2s and
    t - 2s are both representatives when nonzero; they differ by the field
    discriminant class. The one of least absolute value is returned (positive
    on ties). Returns None when the norm is not a rational square.
    """
    K = x.field
    if K.degree != 2:
        raise ValueError("rational_representative needs a quadratic field")
    if x.is_zero():
        return None
    s = rational_sqrt(nf_norm(x))
    if s is None:
        return None
    t = x.trace()
    cands = []
    for sgn in (1, -1):
        a = t + 2 * sgn * s
        if a == 0:
            continue
        a_sf = squarefree_part(a)
        w = x + sgn * s
        # (x + s)^2 == (t + 2s) x certifies the class
        if w * w == x * a:
            cands.append(a_sf)
    if not cands:
        return None
    return min(cands, key=lambda v: (abs(v), -v))
