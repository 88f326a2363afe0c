from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plumbq import ct_engine as ct


@pytest.mark.parametrize("m, want", [(-1, 1), (1, -1), (0, 0), (3, 0)])
def test_ct_leaf(m, want):
    assert ct.ct_leaf(m) == want


@pytest.mark.parametrize("m, want", [(-3, -1), (-2, 0), (5, 0), (-1, -1), (0, 0)])
def test_ct_pole1(m, want):
    assert ct.ct_pole1(m) == want


@pytest.mark.parametrize("m, ell, want", [(3, 0, 1), (5, 2, 1), (1, 2, 0), (-5, 2, -1),
                                          (4, 2, 0), (0, 0, 0)])
def test_ct_sym(m, ell, want):
    assert ct.ct_sym(m, ell) == want


@pytest.mark.parametrize("m, ell, want", [(7, 1, (1, 7)), (-4, 1, (1, -4)),
                                          (3, 3, (1, 1)), (2, 2, (1, 1))])
def test_pochhammer_reduce(m, ell, want):
    assert ct.pochhammer_reduce(m, ell) == (Fraction(want[0]), want[1])


@pytest.mark.parametrize("m, d, want", [(-1, 1, 1), (0, 2, 1), (-3, 4, 0), (5, 5, 0),
                                        (-5, 4, 0), (-5, 3, -1), (1, 2, 0)])
def test_ct_vertex_examples(m, d, want):
    assert ct.ct_vertex(m, d) == want


@pytest.mark.parametrize("m, ell, want", [(-1, 1, -1), (0, 2, 0), (-4, 2, 2)])
def test_expansion_oracle_examples(m, ell, want):
    assert ct.expansion_oracle(m, ell, 30) == want


def test_expansion_oracle_depth_check():
    with pytest.raises(ct.DepthTooSmall):
        ct.expansion_oracle(-40, 2, 3)


@pytest.mark.parametrize("d", range(3, 9))
def test_ct_vertex_matches_oracle(d):
    for m in range(-50, 51):
        assert ct.ct_vertex(m, d) == ct.expansion_oracle(m, d - 2, 40), (m, d)


@pytest.mark.parametrize("ell", range(1, 7))
def test_reduction_matches_oracle(ell):
    for m in range(-50, 51):
        coeff, m1 = ct.pochhammer_reduce(m, ell)
        assert coeff * ct.ct_pole1(m1) == ct.expansion_oracle(m, ell, 40)


def test_pochhammer_symmetry():
    for x in range(-20, 21):
        for n in range(9):
            assert ct.pochhammer(-x - n + 1, n) == (-1) ** n * ct.pochhammer(x, n)


def test_vanishing_ladder():
    for d in range(1, 8):
        for m in range(-30, 31):
            if (m - d) % 2:
                assert ct.ct_vertex(m, d) == 0


@given(st.integers(-200, 200), st.integers(0, 12))
def test_ct_sym_antisymmetric(m, ell):
    assert ct.ct_sym(-m, ell) == -ct.ct_sym(m, ell)


@pytest.mark.parametrize("legs", range(3, 9))
def test_center_weight_is_antisymmetrised_vertex(legs):
    poly = ct.weight_polynomial(legs)
    for m in range(-40, 41):
        paired = ct.ct_vertex(m, legs) + (-1) ** legs * ct.ct_vertex(-m, legs)
        assert ct.center_weight(m, legs) == paired
        if (m - legs) % 2 == 0:
            value = sum(c * m ** i for i, c in enumerate(poly))
            assert ct.center_weight(m, legs) == value * ct.sgn(m)


def test_degree_zero_vertex():
    # (w - 1/w)^2 = w^2 - 2 + w^-2
    assert [ct.ct_vertex(m, 0) for m in (-2, -1, 0, 1, 2)] == [1, 0, -2, 0, 1]
