from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iquantum import catalog
from iquantum.satake import (
    DiagramError,
    SatakeDiagram,
    adapted_word,
    in_p_imath,
    invariants,
    p_imath_basis,
    p_theta_basis,
    relative_structure,
    theta_weight,
    validate_satake,
)

ALL = catalog.CATALOG + catalog.EXTRA
NAMES = st.sampled_from(ALL)


def _d(data):
    return SatakeDiagram.from_dict(data)


def test_split_a2_is_valid():
    assert validate_satake(_d({"type": "A2"})) == []


def test_a2_with_one_black_node_is_rejected():
    with pytest.raises(DiagramError, match="axiom \\(4\\)"):
        _d({"type": "A2", "black": [1]})


def test_aiii_with_middle_black_node_needs_signs():
    with pytest.raises(DiagramError, match="signs"):
        _d({"type": "A3", "black": [2], "tau": {"1": 3, "3": 1}})
    d = _d({"type": "A3", "black": [2], "tau": {"1": 3, "3": 1}, "signs": {"1": -1, "3": 1}})
    assert d.black == {1}


@pytest.mark.parametrize("data", [
    {"type": "A2", "tau": {"1": 1, "2": 1}},
    {"type": "A2", "black": [3]},
    {"type": "B2", "tau": {"1": 2, "2": 1}},
    {"cartan": [[2, -1], [-1, 2]], "tau": {"1": 3}},
    {"black": [1]},
])
def test_malformed_diagrams(data):
    with pytest.raises(DiagramError):
        _d(data)


def test_theta_examples():
    split = catalog.load("split_A2")
    mu = (Fraction(2), Fraction(-1))
    assert theta_weight(split, mu) == tuple(-x for x in mu)
    qs = catalog.load("quasisplit_A2")
    a1, a2 = qs.datum.simple_roots
    assert qs.theta(a1) == tuple(-x for x in a2)
    aiii = catalog.load("AIII_A3_black2")
    assert aiii.theta(aiii.datum.simple_roots[1]) == aiii.datum.simple_roots[1]


def test_relative_structures():
    rs = relative_structure(catalog.load("split_A2"))
    assert (rs.L, rs.M) == (3, 0)
    for i, w in rs.bs.items():
        assert w.word == (i,)
    qs = relative_structure(catalog.load("quasisplit_A2"))
    assert qs.relative_rank == 1
    assert qs.bs[0] == qs.w0_relative and qs.bs[0].length == 3
    aiii = relative_structure(catalog.load("AIII_A3_black2"))
    assert (aiii.L, aiii.M) == (5, 1)


def test_p_imath_bases():
    one = Fraction(1)
    assert p_imath_basis(catalog.load("split_A1")) == [(one,)]
    assert p_imath_basis(catalog.load("split_A2")) == [(one, one)]
    assert p_imath_basis(catalog.load("quasisplit_A2")) == [(one, 0), (0, one)]


def test_invariant_examples():
    a1 = invariants(catalog.load("split_A1"))
    assert (a1.dim_k, a1.rank_k, a1.N0, a1.max_class_dim, a1.max_leaf_dim) == (1, 1, 0, 2, 0)
    qs = invariants(catalog.load("quasisplit_A2"))
    assert (qs.dim_k, qs.rank_k, qs.N0, qs.max_class_dim, qs.max_leaf_dim) == (4, 2, 1, 6, 2)
    aiii = invariants(catalog.load("AIII_A3_black2"))
    assert (aiii.dim_k, aiii.rank_k, aiii.N0, aiii.covering_degree) == (9, 3, 3, 2)


def test_branching_exponents_for_quasisplit_a2():
    # N - N0 = 2 and rank g - rank k = 0
    assert invariants(catalog.load("quasisplit_A2")).branching_exponents == (2, 2)
    assert invariants(catalog.load("split_A2")).branching_exponents == (2, 3)


@pytest.mark.parametrize("name", ALL)
def test_invariants_match_classical_table(name):
    row = catalog.classical_table()[name]
    inv = invariants(catalog.load(name))
    assert inv.dim_k == row["dim_k"]
    assert inv.rank_k == row["rank_k"]


@pytest.mark.parametrize("name", ALL)
def test_diagram_json_round_trip(name):
    d = catalog.load(name)
    again = SatakeDiagram.from_dict(d.to_dict(), name=name)
    assert again.tau == d.tau and again.black == d.black and again.sign_vector == d.sign_vector


@pytest.mark.parametrize("name", ALL)
def test_adapted_word_shape(name):
    d = catalog.load(name)
    aw = adapted_word(d)
    assert aw.N == d.datum.num_positive_roots
    assert aw.M == d.w_bullet.length
    assert sorted(aw.betas) == sorted(d.datum.positive_roots)


def test_adapted_word_rejects_bad_tail():
    with pytest.raises(DiagramError):
        adapted_word(catalog.load("AIII_A3_black2"), (0, 1, 2, 0, 1, 0))


@given(NAMES, st.data())
def test_theta_is_an_involution(name, data):
    d = catalog.load(name)
    mu = tuple(Fraction(data.draw(st.integers(-5, 5))) for _ in d.datum.nodes)
    assert d.theta(d.theta(mu)) == mu
    for j in d.black:
        assert d.theta(d.datum.simple_roots[j]) == d.datum.simple_roots[j]


@given(NAMES, st.data())
def test_p_imath_condition_is_tau_tau0_invariance(name, data):
    d = catalog.load(name)
    mu = tuple(Fraction(data.draw(st.integers(-4, 4))) for _ in d.datum.nodes)
    tau0 = d.datum.tau0
    moved = [Fraction(0)] * d.rank
    for i in d.datum.nodes:
        moved[tau0[d.tau[i]]] = mu[i]
    assert in_p_imath(d, mu) == (tuple(moved) == mu)


@pytest.mark.parametrize("name", ALL)
def test_p_theta_is_theta_fixed(name):
    d = catalog.load(name)
    basis = p_theta_basis(d)
    assert len(basis) == d.rank - len(d.white_reps)
    for mu in basis:
        assert d.theta(mu) == mu
