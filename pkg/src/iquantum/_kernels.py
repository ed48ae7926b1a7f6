"""Numeric hot loops: rank over GF(p) and monomial-matrix products.

Each kernel has a numba version and a pure-numpy version.  Set
``IQUANTUM_DISABLE_NUMBA=1`` (or run without numba installed) to use numpy.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("IQUANTUM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised through the env flag
    HAVE_NUMBA = False

__all__ = [
    "HAVE_NUMBA",
    "backend",
    "rank_mod_p",
    "rank_mod_p_numpy",
    "mono_mul",
    "mono_inv",
    "dense_rows_mod_p",
    "dense_rows_mod_p_numpy",
    "prime_with_root",
]


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# rank mod p


def rank_mod_p_numpy(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            a[r + 1:][mask] = (a[r + 1:][mask] - np.outer(below[mask], a[r])) % p
        r += 1
    return r


def _rank_mod_p_loops(a: np.ndarray, p: int) -> int:
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(cols):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        # modular inverse by Fermat
        base = a[r, c] % p
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for k in range(c, cols):
            a[r, k] = (a[r, k] * inv) % p
        for i in range(r + 1, rows):
            f = a[i, c] % p
            if f != 0:
                for k in range(c, cols):
                    a[i, k] = (a[i, k] - f * a[r, k]) % p
        r += 1
    return r


if HAVE_NUMBA:
    _rank_jit = njit(cache=True)(_rank_mod_p_loops)

    def rank_mod_p(mat: np.ndarray, p: int) -> int:
        """Rank of an integer matrix over GF(p) (p < 2^31)."""
        return int(_rank_jit(np.array(mat, dtype=np.int64) % p, p))
else:
    rank_mod_p = rank_mod_p_numpy


# ---------------------------------------------------------------------------
# monomial matrices: M e_j = z^phase[j] e_perm[j]


def mono_mul(pa: np.ndarray, fa: np.ndarray, pb: np.ndarray, fb: np.ndarray, ell: int) -> tuple[np.ndarray, np.ndarray]:
    """Product A B of monomial matrices with phases read mod ``ell``."""
    return pa[pb], (fb + fa[pb]) % ell


def mono_inv(pa: np.ndarray, fa: np.ndarray, ell: int) -> tuple[np.ndarray, np.ndarray]:
    inv = np.empty_like(pa)
    inv[pa] = np.arange(pa.size)
    ph = np.empty_like(fa)
    ph[pa] = (-fa) % ell
    return inv, ph


def dense_rows_mod_p_numpy(perms: np.ndarray, phases: np.ndarray, zeta_pows: np.ndarray) -> np.ndarray:
    """Flatten k monomial d x d matrices into k rows of length d*d over GF(p)."""
    k, d = perms.shape
    out = np.zeros((k, d * d), dtype=np.int64)
    cols = np.arange(d)
    for t in range(k):
        out[t, perms[t] * d + cols] = zeta_pows[phases[t]]
    return out


def _dense_rows_fill(out: np.ndarray, perms: np.ndarray, phases: np.ndarray, zeta_pows: np.ndarray) -> None:
    k, d = perms.shape
    for t in range(k):
        for j in range(d):
            out[t, perms[t, j] * d + j] = zeta_pows[phases[t, j]]


if HAVE_NUMBA:
    _dense_jit = njit(cache=True)(_dense_rows_fill)

    def dense_rows_mod_p(perms: np.ndarray, phases: np.ndarray, zeta_pows: np.ndarray) -> np.ndarray:
        perms = np.ascontiguousarray(perms, dtype=np.int64)
        k, d = perms.shape
        # allocate outside the jit: np.zeros there writes every page, calloc here does not
        out = np.zeros((k, d * d), dtype=np.int64)
        _dense_jit(out, perms, np.ascontiguousarray(phases, dtype=np.int64), np.ascontiguousarray(zeta_pows, dtype=np.int64))
        return out
else:
    dense_rows_mod_p = dense_rows_mod_p_numpy


# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_with_root(ell: int, floor: int = 1 << 20) -> tuple[int, int]:
    """A prime p = 1 mod ell with p > floor and an element of order exactly ell in GF(p)."""
    if ell == 1:
        p = floor + 1
        while not _is_prime(p):
            p += 1
        return p, 1
    p = floor - floor % ell + 1
    while not _is_prime(p):
        p += ell
    for g in range(2, p):
        z = pow(g, (p - 1) // ell, p)
        if z != 1 and all(pow(z, ell // r, p) != 1 for r in _prime_factors(ell)):
            return p, z
    raise RuntimeError("no root of unity found")  # pragma: no cover
