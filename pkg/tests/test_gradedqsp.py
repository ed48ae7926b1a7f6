from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iquantum import catalog
from iquantum.gradedqsp import (
    build_S,
    graded_center_generators,
    graded_degree,
    kl_leading_term,
    lmm_identities,
    verify_kernel_lemma,
    x_nu,
)
from iquantum.satake import adapted_word, p_imath_basis
from iquantum.snf import mat_vec

ALL = catalog.CATALOG + catalog.EXTRA


def test_split_a1_matrix():
    assert build_S(catalog.load("split_A1")).S == ((0,),)


def test_diagonal_matrix():
    p = build_S(catalog.load("diagonal_A1xA1"))
    assert (p.N, p.M, p.r) == (2, 0, 1)
    assert p.B == ((-1, 1),)
    assert len(p.S) == 3


def test_quasisplit_a2_shape():
    p = build_S(catalog.load("quasisplit_A2"))
    assert (p.N, p.M, p.r) == (3, 0, 1)


def test_x_nu_examples():
    assert x_nu(build_S(catalog.load("split_A1")), (1,)) == (1,)
    p = build_S(catalog.load("diagonal_A1xA1"))
    assert x_nu(p, (1, 1)) == (1, 1, 0)
    assert x_nu(p, (0, 0)) == (0, 0, 0)


def test_kernel_examples():
    cert = verify_kernel_lemma(build_S(catalog.load("diagonal_A1xA1")), 3)
    assert cert.passed and cert.image_size == 9
    a1 = verify_kernel_lemma(build_S(catalog.load("split_A1")), 7)
    assert a1.passed and a1.image_size == 1
    aiii = verify_kernel_lemma(build_S(catalog.load("AIII_A3_black2")), 5)
    assert aiii.passed and aiii.image_size == 5 ** 6


def test_graded_degree_examples():
    assert graded_degree(build_S(catalog.load("split_A1")), 7) == 1
    assert graded_degree(build_S(catalog.load("quasisplit_A2")), 5) == 5
    assert graded_degree(build_S(catalog.load("AIII_A3_black2")), 3) == 27


def test_bad_ell():
    p = build_S(catalog.load("split_B2"))
    with pytest.raises(ValueError):
        verify_kernel_lemma(p, 4)
    with pytest.raises(ValueError):
        graded_degree(build_S(catalog.load("split_A1")), 2)


def test_center_generators_split_a2():
    gens = graded_center_generators(build_S(catalog.load("split_A2")), 3)
    assert gens[0].exponent == (1, 1, 1)
    assert {g.exponent for g in gens[1:]} == {(3, 0, 0), (0, 3, 0), (0, 0, 3)}


def test_center_generators_split_a1():
    gens = graded_center_generators(build_S(catalog.load("split_A1")), 5)
    assert [g.exponent for g in gens] == [(1,), (5,)]


def test_leading_terms():
    assert kl_leading_term(catalog.load("split_A1"), None, (0,)).B_exponents == (0,)
    t = kl_leading_term(catalog.load("split_A1"), None, (1,))
    assert t.B_exponents == (1,) and t.K == (0,)
    qs = catalog.load("quasisplit_A2")
    t = kl_leading_term(qs, adapted_word(qs, (0, 1, 0)), (1, 0))
    assert t.K == (-1, 1) and t.B_exponents == (0, 1, 0)
    with pytest.raises(ValueError):
        kl_leading_term(qs, None, (-1, 0))


@pytest.mark.parametrize("name", ALL)
def test_S_is_skew_and_kills_x_nu(name):
    p = build_S(catalog.load(name))
    n = len(p.S)
    assert all(p.S[i][j] == -p.S[j][i] for i in range(n) for j in range(n))
    for nu in p_imath_basis(p.diagram):
        assert not any(mat_vec([list(r) for r in p.S], x_nu(p, nu)))


@pytest.mark.parametrize("name", ALL)
def test_integral_identities(name):
    for row in lmm_identities(build_S(catalog.load(name))):
        assert row["M"] and row["M_prime"] and row["B_tilde"] and row["B_tilde_prime"]


@pytest.mark.parametrize("name", ["split_A1", "split_A2", "quasisplit_A2", "diagonal_A1xA1", "split_B2"])
def test_degree_against_brute_force(name):
    p = build_S(catalog.load(name))
    n = len(p.S)
    ell = 3
    image = {tuple(sum(p.S[i][j] * a[j] for j in range(n)) % ell for i in range(n)) for a in product(range(ell), repeat=n)}
    assert graded_degree(p, ell) ** 2 == len(image)


@given(st.sampled_from(ALL), st.data())
def test_x_nu_is_additive(name, data):
    d = catalog.load(name)
    p = build_S(d)
    basis = p_imath_basis(d)
    c = [data.draw(st.integers(0, 3)) for _ in basis]
    nu = tuple(sum(k * b[t] for k, b in zip(c, basis)) for t in d.datum.nodes)
    combo = tuple(sum(k * x[t] for k, x in zip(c, [x_nu(p, b) for b in basis])) for t in range(len(p.S)))
    assert x_nu(p, nu) == combo
