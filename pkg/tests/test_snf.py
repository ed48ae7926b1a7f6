from __future__ import annotations

from itertools import product

import flint
from hypothesis import given
from hypothesis import strategies as st

from iquantum.snf import (
    elementary_divisors,
    image_size_mod,
    integer_kernel,
    kernel_mod,
    mat_mul,
    mat_vec,
    skew_normal_form,
    smith_normal_form,
    subgroup_size_mod,
)

small = st.integers(-6, 6)


@st.composite
def matrices(draw, max_dim: int = 4):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(small) for _ in range(n)] for _ in range(m)]


@st.composite
def skew_matrices(draw, max_dim: int = 5):
    n = draw(st.integers(1, max_dim))
    h = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            h[i][j] = draw(small)
            h[j][i] = -h[i][j]
    return h


def _det(m):
    return int(flint.fmpz_mat(m).det())


@given(matrices())
def test_smith_form_with_transforms(a):
    d, u, v = smith_normal_form(a)
    assert mat_mul(mat_mul(u, a), v) == d
    assert abs(_det(u)) == 1 and abs(_det(v)) == 1
    diag = [d[k][k] for k in range(min(len(a), len(a[0])))]
    nz = [x for x in diag if x]
    assert all(x >= 0 for x in diag)
    assert all(nz[k + 1] % nz[k] == 0 for k in range(len(nz) - 1))


@given(matrices())
def test_divisors_match_flint(a):
    ref = flint.fmpz_mat(a).snf()
    flint_diag = [abs(int(ref[k, k])) for k in range(min(ref.nrows(), ref.ncols()))]
    assert elementary_divisors(a) == flint_diag


@given(matrices())
def test_integer_kernel(a):
    ker = integer_kernel(a)
    rank = int(flint.fmpz_mat(a).rank())
    assert len(ker) == len(a[0]) - rank
    for x in ker:
        assert not any(mat_vec(a, x))


@given(matrices(max_dim=3), st.sampled_from([3, 5, 9]))
def test_kernel_and_image_mod_ell_by_enumeration(a, ell):
    n = len(a[0])
    vecs = list(product(range(ell), repeat=n))
    images = {tuple(y % ell for y in mat_vec(a, x)) for x in vecs}
    assert image_size_mod(a, ell) == len(images)
    ker = kernel_mod(a, ell)
    for x in ker:
        assert all(y % ell == 0 for y in mat_vec(a, x))
    zero = sum(1 for x in vecs if all(y % ell == 0 for y in mat_vec(a, x)))
    # index of the kernel lattice equals ell^n / |ker mod ell|
    assert abs(_det(ker)) == ell ** n // zero


@given(matrices(max_dim=3), st.sampled_from([3, 5]))
def test_subgroup_size_by_enumeration(a, ell):
    seen = {tuple([0] * len(a[0]))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in a:
                y = tuple((p + q) % ell for p, q in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    assert subgroup_size_mod(a, ell) == len(seen)


@given(skew_matrices())
def test_skew_normal_form(h):
    p, q, pairs, radical = skew_normal_form(h)
    n = len(h)
    assert mat_mul(p, q) == [[int(i == j) for j in range(n)] for i in range(n)]
    pt = [list(r) for r in zip(*p)]
    s = mat_mul(mat_mul(pt, h), p)
    expect = [[0] * n for _ in range(n)]
    for e, f, d in pairs:
        assert d > 0
        expect[e][f], expect[f][e] = d, -d
    assert s == expect
    assert len(radical) + 2 * len(pairs) == n
    # unimodular congruence keeps the product of the nonzero invariant factors
    prod_divs = 1
    for x in elementary_divisors(h):
        prod_divs *= x or 1
    prod_pairs = 1
    for _, _, d in pairs:
        prod_pairs *= d * d
    assert prod_divs == prod_pairs
