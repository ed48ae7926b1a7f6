"""Integer lattice helpers: Smith form with transforms, kernels mod l, skew normal form.

Everything works on lists of Python ints so there is no overflow.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

Matrix = list[list[int]]

__all__ = [
    "smith_normal_form",
    "elementary_divisors",
    "integer_kernel",
    "kernel_mod",
    "image_size_mod",
    "subgroup_size_mod",
    "skew_normal_form",
    "hermite_rows",
    "mat_mul",
    "mat_vec",
    "identity",
]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def mat_vec(a: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(r * v for r, v in zip(row, x)) for row in a]


def _copy(a: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in a]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U A V = D`` diagonal, ``d_1 | d_2 | ...`` and ``d_k >= 0``.

    ``U`` and ``V`` are unimodular.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = _copy(a)
    u = identity(m)
    v = identity(n)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, k: int) -> None:  # row_dst += k row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return d, u, v
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p), None)
            if bad is not None:
                add_row(t, bad[0], 1)
                continue
            if p < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            break
    return d, u, v


def elementary_divisors(a: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form, padded with zeros to ``min(rows, cols)``."""
    d, _, _ = smith_normal_form(a)
    return [d[k][k] for k in range(min(len(d), len(d[0]) if d else 0))]


def integer_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """Basis (as rows) of ``{x in Z^n : A x = 0}``; the lattice is saturated."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return identity(n)
    d, _, v = smith_normal_form(a)
    rank = sum(1 for k in range(min(m, n)) if d[k][k])
    return [[v[i][k] for i in range(n)] for k in range(rank, n)]


def kernel_mod(a: Sequence[Sequence[int]], ell: int) -> Matrix:
    """Basis (rows) of the full-rank lattice ``{x in Z^n : A x = 0 mod ell}``."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [[ell * int(i == j) for j in range(n)] for i in range(n)]
    d, _, v = smith_normal_form(a)
    out = []
    for k in range(n):
        dk = d[k][k] if k < min(m, n) else 0
        step = ell // gcd(dk, ell)
        out.append([step * v[i][k] for i in range(n)])
    return out


def image_size_mod(a: Sequence[Sequence[int]], ell: int) -> int:
    """Cardinality of the image of ``A`` acting ``Z^n -> (Z/ell)^m``."""
    size = 1
    for dk in elementary_divisors(a):
        size *= ell // gcd(dk, ell)
    return size


def subgroup_size_mod(vectors: Sequence[Sequence[int]], ell: int) -> int:
    """Order of the subgroup of ``(Z/ell)^n`` generated by ``vectors``."""
    if not vectors:
        return 1
    cols = [list(x) for x in zip(*vectors)]  # n x k matrix, columns are the vectors
    return image_size_mod(cols, ell)


def hermite_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form (canonical basis of the row lattice)."""
    from flint import fmpz_mat

    if not rows:
        return []
    h = fmpz_mat([list(map(int, r)) for r in rows]).hnf()
    out = [[int(h[i, j]) for j in range(h.ncols())] for i in range(h.nrows())]
    return [r for r in out if any(r)]


def skew_normal_form(h: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[tuple[int, int, int]], list[int]]:
    """Symplectic reduction of a skew-symmetric integer matrix.

    Returns ``(P, Q, pairs, radical)`` with ``Q = P^-1`` unimodular and
    ``P^T H P`` block diagonal: for each ``(e, f, d)`` in ``pairs`` the form
    pairs basis vectors ``e, f`` with value ``d > 0``; indices in ``radical``
    span the kernel.
    """
    n = len(h)
    s = _copy(h)
    for i in range(n):
        for j in range(n):
            if s[i][j] != -s[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    p = identity(n)
    q = identity(n)

    def swap(i: int, j: int) -> None:
        if i == j:
            return
        s[i], s[j] = s[j], s[i]
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in p:
            row[i], row[j] = row[j], row[i]
        q[i], q[j] = q[j], q[i]

    def add(dst: int, src: int, k: int) -> None:  # basis vector dst += k * src
        if k == 0:
            return
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
        for row in s:
            row[dst] += k * row[src]
        for row in p:
            row[dst] += k * row[src]
        q[src] = [x - k * y for x, y in zip(q[src], q[dst])]

    pairs = []
    t = 0
    while t < n - 1:
        best = None
        for i in range(t, n):
            for j in range(i + 1, n):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap(t, best[0])
        swap(t + 1, best[1] if best[1] != t else best[0])
        if s[t][t + 1] < 0:
            # flip the sign of the second vector
            s[t + 1] = [-x for x in s[t + 1]]
            for row in s:
                row[t + 1] = -row[t + 1]
            for row in p:
                row[t + 1] = -row[t + 1]
            q[t + 1] = [-x for x in q[t + 1]]
        d = s[t][t + 1]
        clean = True
        for j in range(t + 2, n):
            # s[t][j] cleared by j -= k (t+1); s[t+1][j] cleared by j += k t
            if s[t][j]:
                add(j, t + 1, -(s[t][j] // d))
            if s[t + 1][j]:
                add(j, t, s[t + 1][j] // d)
            if s[t][j] or s[t + 1][j]:
                clean = False
        if clean:
            pairs.append((t, t + 1, d))
            t += 2
    radical = [k for k in range(n) if all(s[k][j] == 0 for j in range(n))]
    radical = [k for k in radical if all(k not in (e, f) for e, f, _ in pairs)]
    return p, q, pairs, radical
