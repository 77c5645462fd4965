import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp4brauer.exactalg import linalg
from dp4brauer.pencil import (
    BinaryQuintic,
    MalformedInput,
    Pencil,
    SingularSurface,
    SymMat5,
    block_diagonalize,
    char_form,
    degeneracy_scheme,
    hessian_char_form,
    smoothness_check,
    specialize,
)

HESSIAN = [2, -4, -38, 56, 168, -96]


def random_gl5(rng, bound=2):
    while True:
        U = [[Fraction(rng.randint(-bound, bound)) for _ in range(5)] for _ in range(5)]
        if linalg.det(U) != 0:
            return U


def test_example_char_form(example):
    f = char_form(example)
    assert list(hessian_char_form(f).coeffs) == HESSIAN
    # the Gram convention differs by 2^5
    assert f == BinaryQuintic(tuple(Fraction(c, 32) for c in HESSIAN))


def test_example_degeneracy(example):
    ds = degeneracy_scheme(char_form(example))
    assert ds.degrees() == [2, 3]
    assert [pt.label() for pt in ds.points] == ["t^2 - 12", "t^3 - 2*t^2 - 7*t + 4"]
    for pt in ds.points:
        G = specialize(example, pt)
        assert linalg.rank(G) == 4


def test_bsd_degeneracy(bsd):
    ds = degeneracy_scheme(char_form(bsd))
    assert ds.degrees() == [1, 1, 1, 2]
    assert ds.points[0].at_infinity


def test_monomials_and_json_round_trip(example):
    obj = example.to_json_obj()
    again = Pencil.from_json(json.dumps(obj))
    assert again == example
    mono = {"q": example.m.monomials(), "q_tilde": example.m_tilde.monomials()}
    assert Pencil.from_json_obj(mono) == example
    assert example.m.value([1, 1, 0, 0, 0]) == 1  # x0 x1


@pytest.mark.parametrize("text", ["[]", "{", '{"m": [[1]], "m_tilde": [[1]]}', '{"q": {"x9^2": 1}, "q_tilde": {}}',
                                  '{"m": [[0.5, 0, 0, 0, 0]], "m_tilde": []}'])
def test_malformed(text):
    with pytest.raises(MalformedInput):
        Pencil.from_json(text)


def test_repeated_factor_is_singular():
    p = Pencil(SymMat5.diagonal([1, 1, 1, 1, 1]), SymMat5.diagonal([1, 1, 2, 3, 4]))
    assert not smoothness_check(p)
    with pytest.raises(SingularSurface):
        degeneracy_scheme(char_form(p))


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_char_form_gl5_covariance(example, seed):
    U = random_gl5(random.Random(seed))
    f = char_form(example)
    g = char_form(example.change_coordinates(U))
    assert g == f.scale(linalg.det(U) ** 2)


@settings(max_examples=15)
@given(st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0))
def test_char_form_basis_change(example, abcd):
    a, b, c, d = abcd
    f = char_form(example)
    g = char_form(example.change_basis(a, b, c, d))
    assert g == f.substitute(a, b, c, d)


def test_block_diagonalize_example(example):
    bf = block_diagonalize(example)
    assert sorted(bf.block_sizes) == [2, 3]
    for M in (example.m, example.m_tilde):
        B = M.congruent(bf.U).rows()
        start = 0
        for s in bf.block_sizes:
            for i in range(start, start + s):
                for j in range(5):
                    if not start <= j < start + s:
                        assert B[i][j] == 0
            start += s
    # U^T M U recomputed by explicit multiplication
    Ut = linalg.transpose(bf.U)
    assert linalg.matmul(Ut, linalg.matmul(example.m.rows(), bf.U)) == bf.pencil.m.rows()
    assert linalg.matmul(Ut, linalg.matmul(example.m_tilde.rows(), bf.U)) == bf.pencil.m_tilde.rows()
