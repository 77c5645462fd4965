from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp4brauer.brauer import brauer_group, enumerate_star
from dp4brauer.generator import (
    BSD_PERMUTATION,
    GenSpec,
    bsd_type,
    cover_value,
    generate,
    permute,
    planted_point,
    random_pencil,
    sample_block23,
)
from dp4brauer.exactalg.numberfield import nf_norm
from dp4brauer.exactalg.poly import UniPoly
from dp4brauer.exactalg.squareclass import is_rational_square, squarefree_part
from dp4brauer.generator import _mono
from dp4brauer.pencil import Pencil, SingularSurface, SymMat5, block_diagonalize, smoothness_check


def test_spec_validation():
    with pytest.raises(ValueError):
        GenSpec("block23", 0)
    with pytest.raises(ValueError):
        GenSpec("cubic")
    with pytest.raises(ValueError):
        GenSpec("planted_point", 5, 0, 3)


def _top_point(r, b11):
    return next(d for d in r.data if d.point.factor is not None and d.point.factor == UniPoly([-4 * b11, 0, 1]))


@settings(max_examples=5)
@given(st.integers(0, 1000))
def test_block23_samples(seed):
    g = sample_block23(GenSpec("block23", 5, seed))
    m, mt = g.pencil.m.rows(), g.pencil.m_tilde.rows()
    assert m[0][0] == m[1][1] == mt[0][1] == 0
    assert m[0][1] == Fraction(1, 2) and mt[0][0] == 1 and mt[1][1] != 0
    for M in (m, mt):
        assert all(M[i][j] == 0 for i in range(2) for j in range(2, 5))
    r = brauer_group(g.pencil)
    top = _top_point(r, g.provenance["b11"])
    assert top.point.degree == 2
    assert is_rational_square(nf_norm(top.eps))
    if not top.eps_is_square:
        assert any(s.points == (top.point,) for s in enumerate_star(r.scheme, r.eps_list()))
    assert 2 in block_diagonalize(g.pencil).block_sizes


def test_block23_reproducible():
    a = sample_block23(GenSpec("block23", 5, 7))
    b = sample_block23(GenSpec("block23", 5, 7))
    assert a.pencil == b.pencil and a.provenance == b.provenance


coef = st.integers(-4, 4)
PAIRS = [(i, j) for i in range(2, 5) for j in range(i, 5)]


@settings(max_examples=25)
@given(st.lists(coef, min_size=6, max_size=6), st.lists(coef, min_size=6, max_size=6),
       st.integers(-6, 6).filter(lambda b: b != 0 and not is_rational_square(b)))
def test_cover_value_matches_norm_of_eps(a, b, b11):
    a_low, b_low = dict(zip(PAIRS, a)), dict(zip(PAIRS, b))
    q = {"x0*x1": 1, **{_mono(i, j): c for (i, j), c in a_low.items()}}
    qt = {"x0^2": 1, "x1^2": b11, **{_mono(i, j): c for (i, j), c in b_low.items()}}
    p = Pencil(SymMat5.from_monomials(q), SymMat5.from_monomials(qt))
    if not smoothness_check(p):
        return
    top = _top_point(brauer_group(p), b11)
    w2 = cover_value(a_low, b_low, b11)
    assert squarefree_part(w2) == squarefree_part(nf_norm(top.eps))


def test_bsd_preset(bsd):
    g = bsd_type(1, 2, 1, 5)
    assert permute(g.pencil, BSD_PERMUTATION) == bsd
    assert g.provenance["coordinate_permutation"] == list(BSD_PERMUTATION)


def test_bsd_type_square_eps():
    g = bsd_type(1, 2, 1, 4)
    r = brauer_group(g.pencil)
    assert r.order == 1


def test_bsd_type_a_equals_b_singular():
    with pytest.raises(SingularSurface):
        bsd_type(1, 1, 1, 5)


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_planted_point_on_surface(seed):
    g = random_pencil(GenSpec("planted_point", 10, seed), plant=True)
    assert g.pencil.contains(g.point)
    assert smoothness_check(g.pencil)


@pytest.mark.parametrize("order", [1, 2, 4])
def test_target_orders(order):
    g = planted_point(GenSpec("planted_point", 12, 3, order))
    assert g.pencil.contains(g.point)
    r = brauer_group(g.pencil, hints=[g.point])
    assert r.order == order
    assert all(pt.degree == 1 for pt in r.scheme.points)


def test_generate_dispatch_reproducible():
    for kind in ("random", "planted_point", "bsd_type"):
        a, b = generate(GenSpec(kind, 4, 11)), generate(GenSpec(kind, 4, 11))
        assert a.to_json_obj() == b.to_json_obj()
