from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp4brauer.brauer import point_data
from dp4brauer.exactalg.numberfield import nf_is_square
from dp4brauer.generator import GenSpec, random_pencil
from dp4brauer.pencil import char_form, degeneracy_scheme
from dp4brauer.quadric import (
    best_tangent,
    discriminant_eps,
    eps_on_hyperplane,
    form_value,
    iter_smooth_points,
    normal_form,
    same_square_class,
    tangent_form,
    verify_normal_form,
)


def _data(p):
    return point_data(p, degeneracy_scheme(char_form(p)))


def test_example_eps(example):
    d2, d3 = _data(example)
    th = d2.point.field.gen
    assert d2.eps == th * Fraction(15, 4) - 15
    th3 = d3.point.field.gen
    assert d3.eps == th3 * th3 * Fraction(-3, 4) + th3 * Fraction(5, 2) - 1
    assert not d2.eps_is_square and not d3.eps_is_square


def test_bsd_eps(bsd):
    eps = [d.eps for d in _data(bsd)]
    assert [e.coords[0] for e in eps[:3]] == [Fraction(5, 4), Fraction(5, 4), Fraction(-25)]


def _check_hyperplanes(p):
    for d in _data(p):
        q = d.quadric
        e0 = discriminant_eps(q)
        for i in range(5):
            if not q.vertex[i].is_zero():
                assert same_square_class(eps_on_hyperplane(q, i), e0)


def test_eps_independent_of_hyperplane(example, bsd):
    _check_hyperplanes(example)
    _check_hyperplanes(bsd)


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_eps_independent_of_hyperplane_random(seed):
    _check_hyperplanes(random_pencil(GenSpec("planted_point", 6, seed), plant=True).pencil)


def test_smooth_points_lie_on_quadric(example):
    for d in _data(example):
        q = d.quadric
        n = 0
        for P in iter_smooth_points(q, 2, 20_000):
            assert q.value(P).is_zero()
            td = tangent_form(q, P)
            assert form_value(td.form, P).is_zero()
            n += 1
            if n >= 5:
                break
        assert n > 0


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_normal_form_identity(seed):
    g = random_pencil(GenSpec("planted_point", 6, seed), plant=True)
    for d in _data(g.pencil):
        td = best_tangent(d.quadric, hints=[g.point])
        nf = normal_form(d.quadric, td)
        assert verify_normal_form(d.quadric, nf)
        # l1, l3, l4 vanish at the base point and eps agrees with the hyperplane discriminant
        for form in (nf.l1, nf.l3, nf.l4):
            assert form_value(form, nf.point).is_zero()
        assert not form_value(nf.l2, nf.point).is_zero()
        assert nf_is_square(nf.eps / d.eps)


def test_example_normal_form(example_report):
    d = example_report.data[0]
    nf = d.normal
    assert nf is not None and verify_normal_form(d.quadric, nf)
    assert same_square_class(nf.eps, d.eps)
