import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp4brauer.brauer import (
    brauer_group,
    enumerate_star,
    fiber_scan,
    order4_projection,
    product_norm_check,
    report_to_json,
)
from dp4brauer.exactalg import linalg
from dp4brauer.exactalg.numberfield import NumberField
from dp4brauer.exactalg.poly import UniPoly
from dp4brauer.fixtures import EXAMPLE_POINT
from dp4brauer.generator import GenSpec, planted_point, random_pencil
from dp4brauer.pencil import SingularSurface, SymMat5, Pencil

F = Fraction


def _vec(*xs):
    return [F(x) for x in xs]


def test_example_report(example_report):
    r = example_report
    assert r.order == 2 and r.step == 4
    assert r.witness.degree == 3
    assert [s.describe() for s in r.star_schemes] == ["{t^2 - 12}"]
    (g,) = r.generators
    assert g.eps == -5 and g.check_degree()
    assert g.denominator == _vec(1, 0, 0, 0, 0)
    form, K = g.numerators[0]
    assert K.min_poly == UniPoly([-12, 0, 1])
    th = K.gen
    # 2 x0 - 2 sqrt3 x1 + 2 x2 + (2 sqrt3 - 1) x3 with theta = 2 sqrt3
    assert form == [K(2), -th, K(2), th - 1, K(0)]
    (fib,) = r.fibrations
    assert fib.l0 == _vec(2, 0, 2, -1, 0) and fib.l1 == _vec(0, 1, 0, -1, 0)


def test_example_without_hint(example):
    r = brauer_group(example)
    assert r.order == 2 and r.generators[0].eps == -5
    # a tangent at another rational point of X: still a norm form in two rational forms over x0^2
    fib = r.fibrations[0]
    assert linalg.rank([fib.l0, fib.l1]) == 2


def test_bsd_report(bsd_report):
    r = bsd_report
    assert r.order == 2
    assert [s.describe() for s in r.star_schemes] == ["{∞, t}"]
    assert r.witness.label() == "t + 1"
    (g,) = r.generators
    assert g.eps == 5
    assert [[c.coords[0] for c in f] for f, _ in g.numerators] == [_vec(0, 0, 0, 0, 1), _vec(0, 0, 0, 1, 1)]
    (fib,) = r.fibrations
    # the fibration [x4 : x3 + x4] spans the same pencil of forms as [x3 : x4]
    assert linalg.rank([fib.l0, fib.l1, _vec(0, 0, 0, 1, 0), _vec(0, 0, 0, 0, 1)]) == 2


def test_bsd_fibers(bsd, bsd_report):
    diags = fiber_scan(bsd, bsd_report.fibrations[0], [0, 1, -1, 2, F(1, 2), None])
    assert [d.smooth for d in diags] == [False, False, False, True, True, False]
    assert diags[3].discriminant == 219726562500


def test_report_json_keys(example_report):
    obj = report_to_json(example_report)
    assert obj["order"] == 2 and obj["product_norm_check"] is True
    assert obj["char_form_hessian_factored"] == "2*(λ^2 - 12*μ^2)*(λ^3 - 2*λ^2*μ - 7*λ*μ^2 + 4*μ^3)"
    assert obj["points"][0]["rational_representative"] == -5


def test_product_norm_detects_mutation(example_report):
    eps = example_report.eps_list()
    assert product_norm_check(example_report.scheme, eps)
    # the norm of theta is -12, so this changes the class of the product
    th = eps[0].field.gen
    mutated = [eps[0] * th] + eps[1:]
    assert not product_norm_check(example_report.scheme, mutated)
    assert enumerate_star(example_report.scheme, mutated) == []
    # doubling keeps eps_T in Q^* kappa^*2, so (star) survives but the product check fails
    doubled = [eps[0], eps[1] * 2]
    assert not product_norm_check(example_report.scheme, doubled)


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_product_norm_random(seed):
    g = random_pencil(GenSpec("planted_point", 8, seed), plant=True)
    r = brauer_group(g.pencil, hints=[g.point], tangent_all=True)
    assert product_norm_check(r.scheme, r.eps_list())
    assert all(d.normal is not None for d in r.data)


def _random_gl5(rng):
    while True:
        U = [[F(rng.randint(-2, 2)) for _ in range(5)] for _ in range(5)]
        if linalg.det(U) != 0:
            return U


@settings(max_examples=5)
@given(st.integers(0, 10**6))
def test_order_invariant_under_coordinates(example, bsd, seed):
    rng = random.Random(seed)
    for p, n in ((example, 2), (bsd, 2)):
        U = _random_gl5(rng)
        assert brauer_group(p.change_coordinates(U)).order == n


def test_order4_instance_and_projection():
    g = planted_point(GenSpec("planted_point", 12, 0, target_order=4))
    r = brauer_group(g.pencil, hints=[g.point])
    assert r.order == 4 and len(r.generators) == 3
    assert all(pt.degree == 1 for pt in r.scheme.points)
    proj = order4_projection(g.pencil, r, g.point)
    assert proj.span_rank == 2 and not proj.retry
    assert proj.fibration is not None


def test_singular_rejected():
    p = Pencil(SymMat5.diagonal([1, 1, 1, 1, 1]), SymMat5.diagonal([1, 1, 2, 3, 4]))
    with pytest.raises(SingularSurface):
        brauer_group(p)
