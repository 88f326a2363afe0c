from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plumbq import exact_linalg as el
from plumbq.corpus import NAMED, dynkin_d
from plumbq.graph_core import linking_matrix

E6_ADJ = [[4, 5, 6, 4, 2, 3], [5, 10, 12, 8, 4, 6], [6, 12, 18, 12, 6, 9],
          [4, 8, 12, 10, 5, 6], [2, 4, 6, 5, 4, 3], [3, 6, 9, 6, 3, 6]]


def e6_matrix():
    # vertex 6 hangs off vertex 3
    m = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]:
        m[a][b] = m[b][a] = -1
    return m


def test_e6_determinant_and_adjugate():
    m = e6_matrix()
    assert el.determinant(m) == 3
    assert el.adjugate(m) == E6_ADJ


@pytest.mark.parametrize("name, det", [("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1),
                                       ("four_star", 135)])
def test_named_determinants(name, det):
    assert el.determinant(linking_matrix(NAMED[name]())) == det


def test_four_star_determinant_by_hand():
    # center 3, four leaves 3: det = 3^4 * (3 - 4/3)
    assert el.determinant(linking_matrix(NAMED["four_star"]())) == 3 ** 4 * 3 - 4 * 3 ** 3


def test_singular_inverse_raises():
    with pytest.raises(el.SingularMatrix):
        el.inverse([[1, 1], [1, 1]])
    with pytest.raises(el.SingularMatrix):
        el.coset_group([[2, 2], [2, 2]])


def test_e8_root_count():
    m = linking_matrix(NAMED["E8"]())
    vecs = list(el.enumerate_form(m, 1))
    assert len(vecs) == 241
    assert vecs == sorted(vecs)


@pytest.mark.parametrize("name, bound", [
    ("D4", 1), ("D4", Fraction(5, 2)), ("D4", 4), ("D5", 1), ("D5", Fraction(7, 2)),
    ("E6", 1), ("four_star", Fraction(5, 2)),
])
def test_enumeration_matches_box_search(name, bound):
    m = linking_matrix(NAMED[name]())
    r = el.box_radius(m, bound)
    assert list(el.enumerate_form(m, bound)) == el.box_search(m, bound, r)


def test_enumeration_with_center():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    c = [Fraction(1, 3), Fraction(-1, 2)]
    got = list(el.enumerate_ellipsoid(a, 7, c))
    want = [x for x in product(range(-6, 7), repeat=2)
            if el.quadratic_form(a, [xi - ci for xi, ci in zip(x, c)]) <= 7]
    assert got == want


@pytest.mark.parametrize("name", ["D4", "D5", "E6", "E7"])
def test_coset_group_matches_image(name):
    m = linking_matrix(NAMED[name]())
    cg = el.coset_group(m)
    d = cg.modulus
    image = {tuple(v % d for v in el.matvec(m, x)) for x in product(range(d), repeat=len(m))}
    assert cg.elements() == image
    for x in product(range(d), repeat=len(m)):
        assert (x in cg) == (x in image)


def test_inverse_matches_rational_inverse():
    m = linking_matrix(dynkin_d(5))
    assert el.inverse(m) == el.rational_inverse(m)
    ident = el.matmul(m, el.inverse(m))
    assert ident == [[int(i == j) for j in range(len(m))] for i in range(len(m))]


@pytest.mark.parametrize("g, d, parity, want", [
    (1, 3, 1, (1, 6)), (2, 3, 1, (5, 6)), (0, 5, 0, (0, 10)),
    (2, 4, 0, (2, 4)), (2, 4, 1, None), (3, 1, 1, (1, 2)),
])
def test_merge_parity_congruence(g, d, parity, want):
    r = el.merge_parity_congruence(g, d, parity)
    assert (None if r is None else (r.rep, r.modulus)) == want


small = st.integers(-4, 4)


@st.composite
def spd(draw):
    n = draw(st.integers(1, 4))
    b = [[draw(small) for _ in range(n)] for _ in range(n)]
    # B^T B + I is positive definite
    return [[sum(b[k][i] * b[k][j] for k in range(n)) + (i == j) for j in range(n)]
            for i in range(n)]


@given(spd())
@settings(max_examples=60, deadline=None)
def test_adjugate_identity(m):
    d = el.determinant(m)
    assert el.matmul(m, el.adjugate(m)) == [[d * (i == j) for j in range(len(m))]
                                             for i in range(len(m))]
    assert el.is_positive_definite(m)


@given(spd(), st.integers(0, 12))
@settings(max_examples=40, deadline=None)
def test_enumeration_property(m, bound):
    r = el.box_radius(m, bound)
    if r ** len(m) > 4000:
        return
    assert list(el.enumerate_form(m, bound)) == el.box_search(m, bound, r)
