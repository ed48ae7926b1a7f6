from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import slow

from iquantum import catalog
from iquantum.iqg import (
    ClassicalElement,
    ambient,
    b_generator,
    braid_frobenius_check,
    centrality_check,
    frobenius_generator_check,
    idivided_case,
    idivided_power,
    iqg_generators,
    leading_component,
    poisson_bracket,
    prod_bb_check,
    small_iqg_dim_check,
    y_element,
)
from iquantum.qcoeff import LaurentScalar, PoleError
from iquantum.satake import SatakeDiagram
from iquantum.uq import normal_form

q = LaurentScalar.q_power(1)
AII3 = {"type": "A3", "black": [1, 3]}


def test_b_generator_split_a1():
    d = catalog.load("split_A1")
    a = ambient(d)
    assert b_generator(d, 0).element == a.F(0) + a.E(0) * a.Ki(0, -1) * q.inverse()


def test_b_generator_quasisplit_a2():
    d = catalog.load("quasisplit_A2")
    a = ambient(d)
    assert b_generator(d, 0).element == a.F(0) + a.E(1) * a.Ki(0, -1) * LaurentScalar.q_power(Fraction(1, 2))


def test_b_generator_black_node():
    d = catalog.load("AIII_A3_black2")
    assert b_generator(d, 1).element == ambient(d).F(1)
    with pytest.raises(ValueError):
        y_element(d, 1)


def test_idivided_examples():
    a1 = catalog.load("split_A1")
    B = b_generator(a1, 0).element
    assert idivided_power(a1, 0, 2).element == B * B + ambient(a1).scalar((q - q.inverse()) ** 2)
    assert idivided_power(a1, 0, 1).element == B
    qs = catalog.load("quasisplit_A2")
    B1 = b_generator(qs, 0).element
    assert idivided_power(qs, 0, 3).element == B1 ** 3
    with pytest.raises(ValueError):
        idivided_power(qs, 0, -1)


def test_idivided_cases():
    assert idivided_case(catalog.load("split_B2"), 1) == "even-odd"
    assert idivided_case(catalog.load("diagonal_A1xA1"), 0) == "power"
    assert idivided_case(SatakeDiagram.from_dict(AII3), 1) == "black-sum"


def test_black_sum_case_is_the_binomial_expansion_at_m_one():
    d = SatakeDiagram.from_dict(AII3)
    assert idivided_power(d, 1, 1).element == b_generator(d, 1).element


@pytest.mark.parametrize("name", catalog.CATALOG)
def test_leading_term_is_f(name):
    d = catalog.load(name)
    a = ambient(d)
    for i in d.white:
        assert leading_component(b_generator(d, i).element, d) == a.F(i)


def test_leading_term_black_sum_case():
    d = SatakeDiagram.from_dict(AII3)
    assert leading_component(b_generator(d, 1).element, d) == ambient(d).F(1)


@pytest.mark.parametrize("ell,k", [(3, 1), (3, 2), (5, 1)])
def test_frobenius_split_a1(ell, k):
    assert frobenius_generator_check(catalog.load("split_A1"), 0, ell, k).passed


@pytest.mark.parametrize("ell", [3, 5])
def test_frobenius_black_sum_case(ell):
    assert frobenius_generator_check(SatakeDiagram.from_dict(AII3), 1, ell).passed


def test_frobenius_rejects_bad_ell():
    with pytest.raises(ValueError):
        frobenius_generator_check(catalog.load("split_A1"), 0, 4)
    with pytest.raises(ValueError):
        frobenius_generator_check(catalog.load("split_A1"), 0, 1)


def test_centrality_examples():
    assert centrality_check(catalog.load("split_A1"), 3).passed
    assert centrality_check(SatakeDiagram.from_dict(AII3), 3).passed


def test_frobenius_element_fails_to_commute_off_root_of_unity():
    # B^[3] is central only at ell = 3; at ell = 5 it is not
    d = catalog.load("quasisplit_A2")
    g = idivided_power(d, 0, 3, 5).element
    x = b_generator(d, 1, 5).element
    assert not g.commutator(x).is_zero()


@pytest.mark.parametrize("name", ["split_A1", "quasisplit_A2"])
def test_prod_bb(name):
    d = catalog.load(name)
    assert prod_bb_check(d, d.white[0], 3).passed


@pytest.mark.parametrize("case,ell", [
    ("vsplit", 3), ("vdiag", 3), ("vqsplit", 3), ("vsplit", 5),
    pytest.param("vdiag", 5, marks=slow), pytest.param("vqsplit", 5, marks=slow),
])
def test_braid_frobenius(case, ell):
    assert braid_frobenius_check(case, ell).passed


def test_braid_frobenius_unknown_case():
    with pytest.raises(ValueError):
        braid_frobenius_check("vnone", 3)


def test_small_iqg_split_a1():
    r = small_iqg_dim_check(catalog.load("split_A1"), 3)
    assert r.passed
    assert r.details["dim_u_iota"] == 3 and r.details["dim_u"] == 27


def test_small_iqg_needs_edgeless_data():
    with pytest.raises(ValueError):
        small_iqg_dim_check(catalog.load("split_A2"), 3)


# Poisson brackets in rank one ----------------------------------------------------

A1 = catalog.load("split_A1")
ALG = ambient(A1)


def test_bracket_of_f_and_e():
    br = poisson_bracket(ALG.F(0), ALG.E(0))
    expect = ClassicalElement.from_generic(ALG.Ki(0) * 2 - ALG.Ki(0, -1) * 2)
    assert br == expect


def test_bracket_rejects_non_integral_input():
    bold_e = ALG.E(0) / ALG.c_E(0)
    with pytest.raises(PoleError):
        poisson_bracket(bold_e, ALG.F(0))
    with pytest.raises(PoleError):
        ClassicalElement.from_generic(bold_e)


def test_root_bracket_needs_central_inputs():
    with pytest.raises(PoleError):
        poisson_bracket(ALG.E(0, 3), ALG.F(0, 3), "rootv")
    with pytest.raises(ValueError):
        poisson_bracket(ALG.E(0), ALG.F(0), "other")


@st.composite
def classical(draw):
    total = ALG.element()
    for _ in range(2):
        letters = []
        for _ in range(draw(st.integers(0, 3))):
            kind = draw(st.sampled_from("EFK"))
            letters.append(("K", (2 * draw(st.integers(-1, 1)),)) if kind == "K" else (kind, 0))
        total = total + normal_form(ALG, letters) * draw(st.integers(-3, 3))
    return ClassicalElement.from_generic(total)


@given(classical(), classical())
def test_bracket_antisymmetry(x, y):
    assert poisson_bracket(x, y) == poisson_bracket(y, x) * -1
    assert poisson_bracket(x, x).is_zero()


@given(classical(), classical(), classical())
def test_bracket_leibniz(x, y, z):
    assert poisson_bracket(x, y * z) == poisson_bracket(x, y) * z + y * poisson_bracket(x, z)


@given(classical(), classical(), classical())
def test_bracket_jacobi(x, y, z):
    total = (poisson_bracket(x, poisson_bracket(y, z)) + poisson_bracket(y, poisson_bracket(z, x))
             + poisson_bracket(z, poisson_bracket(x, y)))
    assert total.is_zero()


def test_generators_listing():
    names = [n for n, _ in iqg_generators(catalog.load("AIII_A3_black2"))]
    assert names[:4] == ["B1", "E2", "F2", "B3"]
