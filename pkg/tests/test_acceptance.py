"""Acceptance criteria 1-10, one test each.  All comparisons are exact."""

from __future__ import annotations

import time
from fractions import Fraction

import flint

from iquantum import catalog
from iquantum.gradedqsp import build_S, graded_center_generators, graded_degree, verify_kernel_lemma
from iquantum.iqg import (
    BRAID_CASES,
    braid_frobenius_check,
    centrality_check,
    frobenius_generator_check,
    small_iqg_dim_check,
)
from iquantum.qcoeff import verify_unity_identities
from iquantum.rootdata import longest_word
from iquantum.twistedpoly import TwistedElement, clock_shift_rep, spanning_dimension, verify_rep
from iquantum.uq import RewriteSystem, algebra_for, braid_defects, relation_defects

ELLS = (3, 5, 7)


def _valid(d, ell):
    return all(e % ell for e in d.datum.eps)


def _independent_n0(d):
    """N0 from l(w0) + l(w_bullet) + rank(1 + theta), checked against the classical table."""
    n = d.rank
    cols = [d.theta(d.datum.omega(i)) for i in range(n)]
    entries = [Fraction(cols[j][i]) + (i == j) for i in range(n) for j in range(n)]
    one_plus_theta = flint.fmpq_mat(n, n, [flint.fmpq(e.numerator, e.denominator) for e in entries])
    dim_k = len(longest_word(d.datum)) + len(longest_word(d.datum, sorted(d.black))) + one_plus_theta.rank()
    row = catalog.classical_table()[d.name]
    assert dim_k == row["dim_k"]
    assert (dim_k - row["rank_k"]) % 2 == 0
    return (dim_k - row["rank_k"]) // 2


def test_criterion_01_root_of_unity_identities():
    t0 = time.perf_counter()
    for ell in ELLS:
        rep = verify_unity_identities(ell)
        assert rep["sum"]["value"] == str(Fraction(1 - ell, 2 * ell))
        assert rep["factorial"]["value"] == str(ell)
        assert rep["binomial"]["value"] == "2"
        assert all(v["pass"] for v in rep.values())
    assert time.perf_counter() - t0 < 1


def test_criterion_02_kernel_lemma():
    for name in catalog.CATALOG:
        d = catalog.load(name)
        pres = build_S(d)
        for ell in ELLS:
            if not _valid(d, ell):
                continue
            t0 = time.perf_counter()
            cert = verify_kernel_lemma(pres, ell)
            assert cert.passed, (name, ell, cert.failures)
            assert cert.image_size == ell ** (2 * _independent_n0(d))
            assert time.perf_counter() - t0 < 5


def test_criterion_03_graded_degree():
    t0 = time.perf_counter()
    for name in catalog.CATALOG:
        d = catalog.load(name)
        n0 = _independent_n0(d)
        pres = build_S(d)
        for ell in ELLS:
            if _valid(d, ell):
                assert graded_degree(pres, ell) == ell ** n0, (name, ell)
    assert time.perf_counter() - t0 < 5


def test_criterion_04_graded_center():
    t0 = time.perf_counter()
    ell = 3
    for name in catalog.CATALOG:
        pres = build_S(catalog.load(name))
        form = pres.form
        gens = [TwistedElement.generator(form, g, ell=ell) for g in range(form.n)]
        gens += [TwistedElement.monomial(form, [-int(t == j) for t in range(form.n)], ell=ell) for j in form.inverted]
        for c in graded_center_generators(pres, ell, verify=False):
            z = TwistedElement.monomial(form, c.exponent, ell=ell)
            for g in gens:
                assert z.commutes_with(g), (name, c.label)
    assert time.perf_counter() - t0 < 10


def test_criterion_05_clock_shift_representations():
    ell = 3
    for name in catalog.CATALOG:
        t0 = time.perf_counter()
        d = catalog.load(name)
        n0 = _independent_n0(d)
        rep = clock_shift_rep(build_S(d).form, ell)
        assert rep.dim == ell ** n0, name
        assert verify_rep(rep) == []
        assert spanning_dimension(rep) == ell ** (2 * n0), name
        assert time.perf_counter() - t0 < 30


def test_criterion_06_rewriting_engine():
    t0 = time.perf_counter()
    for name in ("A1", "A2", "B2", "A3"):
        rs = RewriteSystem(algebra_for(name).datum, 12)
        assert rs.check_confluence() == [], name
        alg = algebra_for(name)
        for i in range(alg.n):
            assert relation_defects(alg, i) == [], (name, i)
        assert braid_defects(alg) == [], name
    assert time.perf_counter() - t0 < 120


def test_criterion_07_frobenius_generators():
    t0 = time.perf_counter()
    a1 = catalog.load("split_A1")
    for ell, k in ((3, 1), (3, 2), (5, 1)):
        assert frobenius_generator_check(a1, 0, ell, k).passed, (ell, k)
    for name in ("diagonal_A1xA1", "quasisplit_A2"):
        d = catalog.load(name)
        for i in d.white:
            assert frobenius_generator_check(d, i, 3).passed, (name, i)
    assert time.perf_counter() - t0 < 120


def test_criterion_08_centrality():
    t0 = time.perf_counter()
    for name in ("quasisplit_A2", "diagonal_A1xA1"):
        rep = centrality_check(catalog.load(name), 3)
        assert rep.passed, rep.details
    assert time.perf_counter() - t0 < 300


def test_criterion_09_braid_frobenius_compatibility():
    for case in ("vsplit", "vdiag", "vqsplit"):
        assert case in BRAID_CASES
        t0 = time.perf_counter()
        rep = braid_frobenius_check(case, 3)
        assert rep.details["prodBB"], case
        assert rep.passed, (case, rep.details)
        assert time.perf_counter() - t0 < 600


def test_criterion_10_small_iquantum_group():
    t0 = time.perf_counter()
    expected = {"split_A1": 3, "diagonal_A1xA1": 27}
    for name, dim in expected.items():
        rep = small_iqg_dim_check(catalog.load(name), 3)
        assert rep.passed, rep.details
        assert rep.details["dim_u_iota"] == dim == 3 ** catalog.classical_table()[name]["dim_k"]
    assert time.perf_counter() - t0 < 60
