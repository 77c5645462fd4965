from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dp4brauer.exactalg import linalg
from dp4brauer.exactalg.factor import factor_over_q, is_irreducible
from dp4brauer.exactalg.numberfield import (
    NumberField,
    nf_is_square,
    nf_norm,
    nf_sqrt,
    rational_representative,
)
from dp4brauer.exactalg.poly import UniPoly, discriminant, poly_gcd, resultant, squarefree_decomposition
from dp4brauer.exactalg.squareclass import is_rational_square, rational_sqrt, squarefree_part

small = st.integers(-20, 20)
polys = st.lists(small, min_size=2, max_size=7).filter(lambda c: c[-1] != 0).map(UniPoly)


def _sym(p: UniPoly):
    x = sympy.Symbol("x")
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs)), x)


@given(polys, polys)
def test_arithmetic_matches_sympy(f, g):
    assert _sym(f * g) == _sym(f) * _sym(g)
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


def _sylvester(f: UniPoly, g: UniPoly):
    m, n = f.degree, g.degree
    fd, gd = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = [[0] * i + fd + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gd + [0] * (m - 1 - i) for i in range(m)]
    return sympy.Matrix(rows)


@given(polys, polys)
def test_resultant_matches_sylvester(f, g):
    # the Sylvester determinant, not sympy.resultant, which can lose the sign
    assert resultant(f, g) == Fraction(str(_sylvester(f, g).det()))


@given(polys)
def test_discriminant_matches_sympy(f):
    if f.degree >= 1:
        assert discriminant(f) == Fraction(str(sympy.discriminant(_sym(f).as_expr())))


@given(polys, polys)
def test_gcd_divides(f, g):
    h = poly_gcd(f, g)
    assert (f % h).is_zero() and (g % h).is_zero()


@settings(max_examples=60)
@given(st.lists(st.lists(small, min_size=2, max_size=3).filter(lambda c: c[-1] != 0), min_size=1, max_size=3),
       st.integers(1, 5))
def test_factor_reconstructs(parts, k):
    f = UniPoly([k])
    for c in parts:
        f = f * UniPoly(c)
    unit, facs = factor_over_q(f)
    g = UniPoly([unit])
    for h, m in facs:
        assert h.coeffs[-1] == 1 and is_irreducible(h)
        g = g * h**m
    assert g == f
    sym = sympy.factor_list(_sym(f).as_expr())
    assert sorted(m for _, m in facs) == sorted(m for _, m in sym[1])


def test_factor_known():
    unit, facs = factor_over_q(UniPoly([0, 0, 0, 0, 0, -96]))
    assert unit == -96 and facs == [(UniPoly([0, 1]), 5)]
    # 2(t^2 - 12)(t^3 - 2t^2 - 7t + 4)
    f = UniPoly([2]) * UniPoly([-12, 0, 1]) * UniPoly([4, -7, -2, 1])
    unit, facs = factor_over_q(f)
    assert unit == 2
    assert sorted(h.degree for h, _ in facs) == [2, 3]


@given(polys)
def test_squarefree_decomposition(f):
    out = squarefree_decomposition(f)
    g = UniPoly([f.coeffs[-1]])
    for h, m in out:
        g = g * h**m
    assert g == f


@given(st.fractions().filter(lambda x: x != 0))
def test_square_classes(x):
    s = squarefree_part(x)
    assert is_rational_square(x / s)
    assert is_rational_square(x * x)
    r = rational_sqrt(x * x)
    assert r is not None and r * r == x * x


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_matches_sympy(rows):
    M = [[Fraction(c) for c in r] for r in rows]
    assert linalg.det(M) == sympy.Matrix(rows).det()
    k = linalg.kernel(M)
    assert len(k) == 4 - linalg.rank(M)
    for v in k:
        assert all(c == 0 for c in linalg.matvec(M, v))


FIELDS = [UniPoly([-3, 0, 1]), UniPoly([-2, 0, 0, 1]), UniPoly([4, -7, -2, 1])]
coords = st.lists(st.integers(-6, 6), min_size=3, max_size=3)


@given(st.sampled_from(FIELDS), coords, coords)
def test_norm_multiplicative(m, a, b):
    K = NumberField(m)
    x, y = K(a[: K.degree]), K(b[: K.degree])
    assert nf_norm(x * y) == nf_norm(x) * nf_norm(y)
    if not x.is_zero():
        assert (y / x) * x == y


@given(st.sampled_from(FIELDS), coords)
def test_squares_are_detected(m, a):
    K = NumberField(m)
    x = K(a[: K.degree])
    if x.is_zero():
        return
    r = nf_sqrt(x * x)
    assert r is not None and r * r == x * x
    assert nf_is_square(x * x)


@given(st.sampled_from(FIELDS), coords)
def test_nonsquares_are_detected(m, a):
    K = NumberField(m)
    x = K(a[: K.degree])
    if x.is_zero():
        return
    # a non-square norm rules out squares; the test must agree with that
    y = x * x * K(-1) if K.degree % 2 == 1 else x * x * K(7)
    n = nf_norm(y)
    if not is_rational_square(n):
        assert not nf_is_square(y)


def test_sqrt_in_quadratic_and_cubic_fields():
    K = NumberField(UniPoly([-3, 0, 1]))
    th = K.gen
    assert nf_is_square(K(3)) and nf_sqrt(K(3)) in (th, -th)
    assert not nf_is_square(K(2))
    # 2 + sqrt3 = ((1 + sqrt3)/sqrt2)^2 is not a square in Q(sqrt3); 4 + 2 sqrt3 = (1 + sqrt3)^2 is
    assert not nf_is_square(th + 2)
    assert nf_sqrt(th * 2 + 4) in (th + 1, -th - 1)
    C = NumberField(UniPoly([-2, 0, 0, 1]))
    assert nf_is_square(C.gen**4) and not nf_is_square(C.gen)


def test_rational_representative():
    K = NumberField(UniPoly([-12, 0, 1]))
    th = K.gen
    eps = th * Fraction(15, 4) - 15
    assert nf_norm(eps) == Fraction(225, 4)
    assert not nf_is_square(eps)
    a = rational_representative(eps)
    assert a == -5
    assert nf_is_square(eps * a)
