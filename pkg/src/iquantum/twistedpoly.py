"""Twisted polynomial algebras x_i x_j = q^{h_ij} x_j x_i with some generators inverted.

Coefficients are ``LaurentScalar`` (generic q) or ``CyclotomicScalar`` (q = v,
a primitive ell-th root of unity, v = v~^2).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .qcoeff import CyclotomicScalar, LaurentScalar
from .snf import elementary_divisors, hermite_rows, integer_kernel, kernel_mod, skew_normal_form

__all__ = [
    "SkewForm",
    "TwistedElement",
    "MatrixRep",
    "multiply",
    "center_basis",
    "degree",
    "poisson_center",
    "clock_shift_rep",
    "verify_rep",
    "spanning_dimension",
]


@dataclass(frozen=True)
class SkewForm:
    h: tuple[tuple[int, ...], ...]
    inverted: frozenset = frozenset()

    def __init__(self, h: Sequence[Sequence[int]], inverted: Iterable[int] = ()):
        hh = tuple(tuple(int(x) for x in row) for row in h)
        n = len(hh)
        if any(len(r) != n for r in hh):
            raise ValueError("H must be square")
        if any(hh[i][j] != -hh[j][i] for i in range(n) for j in range(n)):
            raise ValueError("H must be skew-symmetric")
        inv = frozenset(int(j) for j in inverted)
        if any(not 0 <= j < n for j in inv):
            raise ValueError("inverted index out of range")
        object.__setattr__(self, "h", hh)
        object.__setattr__(self, "inverted", inv)

    @property
    def n(self) -> int:
        return len(self.h)

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        """sum_{i,j} a_i b_j h_ij, the exponent of q in x^a x^b = q^(.) x^b x^a."""
        h = self.h
        return sum(a[i] * b[j] * h[i][j] for i in range(self.n) if a[i] for j in range(self.n) if b[j])

    def reorder_exponent(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Exponent of q in x^a x^b = q^(.) x^(a+b)."""
        h = self.h
        n = self.n
        return sum(a[i] * b[j] * h[i][j] for i in range(n) if a[i] for j in range(i) if b[j])

    def to_json(self) -> dict:
        return {"H": [list(r) for r in self.h], "J": sorted(self.inverted)}


def _q_power(k: int, ell: int | None):
    if ell is None:
        return LaurentScalar.q_power(k)
    return CyclotomicScalar.root(ell, 2 * k)


def _one(ell: int | None):
    return LaurentScalar.from_int(1) if ell is None else CyclotomicScalar(ell, 1)


@dataclass
class TwistedElement:
    form: SkewForm
    terms: dict = field(default_factory=dict)
    ell: int | None = None

    @classmethod
    def monomial(cls, form: SkewForm, a: Sequence[int], coeff=None, ell: int | None = None) -> "TwistedElement":
        a = tuple(int(x) for x in a)
        if len(a) != form.n:
            raise ValueError("exponent vector has the wrong length")
        for i, x in enumerate(a):
            if x < 0 and i not in form.inverted:
                raise ValueError(f"negative exponent at non-inverted generator {i}")
        c = _one(ell) if coeff is None else coeff
        return cls(form, {a: c} if c else {}, ell)

    @classmethod
    def generator(cls, form: SkewForm, i: int, ell: int | None = None) -> "TwistedElement":
        return cls.monomial(form, [int(k == i) for k in range(form.n)], ell=ell)

    def _check(self, other: "TwistedElement") -> None:
        if other.form != self.form or other.ell != self.ell:
            raise ValueError("elements live in different algebras")

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TwistedElement(self.form, out, self.ell)

    def __neg__(self) -> "TwistedElement":
        return TwistedElement(self.form, {k: -c for k, c in self.terms.items()}, self.ell)

    def __sub__(self, other: "TwistedElement") -> "TwistedElement":
        return self + (-other)

    def __mul__(self, other: "TwistedElement") -> "TwistedElement":
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedElement):
            return NotImplemented
        return self.form == other.form and self.ell == other.ell and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def commutes_with(self, other: "TwistedElement") -> bool:
        return (self * other - other * self).is_zero()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms):
            mono = "*".join(f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}" for i, e in enumerate(a) if e) or "1"
            parts.append(f"({self.terms[a]})*{mono}")
        return " + ".join(parts)


def multiply(a: TwistedElement, b: TwistedElement) -> TwistedElement:
    """Normal-ordered product; x^a x^b = q^{sum_{i>j} a_i b_j h_ij} x^(a+b)."""
    a._check(b)
    form, ell = a.form, a.ell
    out: dict = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            k = form.reorder_exponent(ea, eb)
            c = ca * cb * _q_power(k, ell) if k else ca * cb
            key = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return TwistedElement(form, out, ell)


@dataclass(frozen=True)
class CenterDescription:
    lattice: tuple[tuple[int, ...], ...]  # Hermite basis of the exponent lattice
    inverted: frozenset

    def generators(self) -> list[tuple[int, ...]]:
        return list(self.lattice)

    def contains(self, a: Sequence[int]) -> bool:
        """Membership of an exponent vector in the lattice (ignores the sign condition)."""
        from flint import fmpz_mat

        if not self.lattice:
            return not any(a)
        m = fmpz_mat([list(r) for r in self.lattice] + [list(a)])
        return m.rank() == len(self.lattice) and _in_row_lattice(self.lattice, a)

    def is_central_monomial(self, a: Sequence[int]) -> bool:
        return all(x >= 0 or i in self.inverted for i, x in enumerate(a)) and self.contains(a)

    def to_json(self) -> dict:
        return {"lattice": [list(r) for r in self.lattice], "J": sorted(self.inverted)}


def _in_row_lattice(rows: Sequence[Sequence[int]], a: Sequence[int]) -> bool:
    h = hermite_rows(list(rows))
    h2 = hermite_rows(list(rows) + [list(a)])
    return h == h2


def center_basis(form: SkewForm, ell: int) -> CenterDescription:
    """The lattice ker(H mod ell); the center is spanned by x^a for a in it (a_i >= 0 off J)."""
    if ell % 2 == 0:
        raise ValueError("ell must be odd")
    return CenterDescription(tuple(tuple(r) for r in hermite_rows(kernel_mod(form.h, ell))), form.inverted)


def image_size(form: SkewForm, ell: int) -> int:
    size = 1
    for dk in elementary_divisors(form.h) if form.n else []:
        size *= ell // gcd(dk, ell)
    return size


def degree(form: SkewForm, ell: int) -> int:
    """sqrt of |image(H mod ell)| = prod over elementary divisors of ell/gcd(d_k, ell), square-rooted."""
    if ell % 2 == 0:
        raise ValueError("ell must be odd")
    size = image_size(form, ell)
    root = isqrt(size)
    if root * root != size:
        raise AssertionError(f"image size {size} is not a perfect square")
    return root


def poisson_center(form: SkewForm) -> CenterDescription:
    """Exponent lattice ker H over Z: the Casimir monomials of the log-canonical bracket."""
    if form.n == 0:
        return CenterDescription((), form.inverted)
    ker = integer_kernel(form.h)
    return CenterDescription(tuple(tuple(r) for r in hermite_rows(ker)) if ker else (), form.inverted)


# ---------------------------------------------------------------------------
# clock and shift representations


@dataclass
class MatrixRep:
    """Generator i acts by ``scalars[i] * M_i`` with ``M_i e_j = v~^phases[i][j] e_{perms[i][j]}``."""

    form: SkewForm
    ell: int
    dim: int
    perms: list[np.ndarray]
    phases: list[np.ndarray]
    scalars: list[CyclotomicScalar]
    block_sizes: tuple[int, ...] = ()

    def dense(self, i: int) -> list[list[CyclotomicScalar]]:
        zero = CyclotomicScalar(self.ell, 0)
        m = [[zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            m[int(self.perms[i][j])][j] = self.scalars[i] * CyclotomicScalar.root(self.ell, int(self.phases[i][j]))
        return m

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "dim": self.dim,
            "matrices": [
                [[c.to_json()["coeffs"] for c in row] for row in self.dense(i)] for i in range(self.form.n)
            ],
        }


def clock_shift_rep(form: SkewForm, ell: int, character: Sequence | None = None) -> MatrixRep:
    """Irreducible representation of dimension ``degree(form, ell)`` built from clock and shift blocks.

    ``character`` lists scalars for the central coordinates of the symplectic
    basis (radical vectors first, then pairs whose form value is divisible by
    ell, each contributing two entries); the default is all ones.
    """
    if ell % 2 == 0:
        raise ValueError("ell must be odd")
    n = form.n
    p, q, pairs, radical = skew_normal_form(form.h) if n else ([], [], [], [])
    central_coords = list(radical)
    blocks = []  # (e, f, d, size)
    for e, f, d in pairs:
        size = ell // gcd(d, ell)
        if size == 1:
            central_coords += [e, f]
        else:
            blocks.append((e, f, d, size))
    if character is None:
        char = [CyclotomicScalar(ell, 1)] * len(central_coords)
    else:
        char = [c if isinstance(c, CyclotomicScalar) else CyclotomicScalar(ell, c) for c in character]
        if len(char) != len(central_coords):
            raise ValueError(f"character needs {len(central_coords)} scalars, got {len(char)}")
        if any(c.is_zero() for c in char):
            raise ValueError("character scalars must be nonzero (generators act invertibly)")
    sizes = tuple(b[3] for b in blocks)
    dim = int(np.prod(sizes)) if sizes else 1
    idx = np.indices(sizes).reshape(len(sizes), -1) if sizes else np.zeros((0, 1), dtype=np.int64)
    strides = [int(np.prod(sizes[k + 1:])) for k in range(len(sizes))]
    ident = np.arange(dim, dtype=np.int64)
    zero_ph = np.zeros(dim, dtype=np.int64)
    # images of the symplectic basis vectors z_k
    z_perm = {k: ident for k in range(n)}
    z_phase = {k: zero_ph for k in range(n)}
    z_scalar = {k: CyclotomicScalar(ell, 1) for k in range(n)}
    for k, c in zip(central_coords, char):
        z_scalar[k] = c
    for b, (e, f, d, size) in enumerate(blocks):
        z_phase[e] = (2 * d * idx[b]) % ell  # clock: diag(v^{d k})
        shifted = idx.copy()
        shifted[b] = (shifted[b] + 1) % size
        z_perm[f] = (shifted * np.array(strides, dtype=np.int64)[:, None]).sum(axis=0) if sizes else ident
    perms, phases, scalars = [], [], []
    for i in range(n):
        pa, fa = ident, zero_ph
        s = CyclotomicScalar(ell, 1)
        for k in range(n):
            e = q[k][i]
            if e == 0:
                continue
            zp, zf = z_perm[k], z_phase[k]
            if e < 0:
                zp, zf = _kernels.mono_inv(zp, zf, ell)
            for _ in range(abs(e)):
                pa, fa = _kernels.mono_mul(pa, fa, zp, zf, ell)
            s = s * z_scalar[k] ** e
        perms.append(np.asarray(pa, dtype=np.int64))
        phases.append(np.asarray(fa, dtype=np.int64) % ell)
        scalars.append(s)
    rep = MatrixRep(form, ell, dim, perms, phases, scalars, sizes)
    problems = verify_rep(rep)
    if problems:
        raise AssertionError("; ".join(problems))
    return rep


def verify_rep(rep: MatrixRep) -> list[str]:
    """Check x_i x_j = v^{h_ij} x_j x_i exactly and invertibility; returns the failures."""
    out = []
    ell = rep.ell
    for i in range(rep.form.n):
        if rep.scalars[i].is_zero():
            out.append(f"generator {i} acts by zero")
        for j in range(i + 1, rep.form.n):
            pl, fl = _kernels.mono_mul(rep.perms[i], rep.phases[i], rep.perms[j], rep.phases[j], ell)
            pr, fr = _kernels.mono_mul(rep.perms[j], rep.phases[j], rep.perms[i], rep.phases[i], ell)
            shift = 2 * rep.form.h[i][j]
            if not (np.array_equal(pl, pr) and np.array_equal(fl % ell, (fr + shift) % ell)):
                out.append(f"relation x{i}x{j} = v^{rep.form.h[i][j]} x{j}x{i} fails")
    return out


def _mono_key(perm: np.ndarray, phase: np.ndarray, ell: int) -> bytes:
    return perm.tobytes() + ((phase - phase[0]) % ell).tobytes()


def spanning_dimension(rep: MatrixRep, limit: int | None = None) -> int:
    """Dimension of the matrix algebra generated by the representation.

    Products of the monomial generators are enumerated up to scalars; the
    resulting matrices are flattened and their rank computed over GF(p) with
    p = 1 mod ell and v~ sent to an element of order ell.  Full rank mod p
    certifies the same rank over Q(zeta_ell); if the rank mod p were smaller
    the returned value is only a lower bound.
    """
    ell, d = rep.ell, rep.dim
    limit = limit or d * d
    start = (np.arange(d, dtype=np.int64), np.zeros(d, dtype=np.int64))
    seen = {_mono_key(*start, ell): start}
    queue = deque([start])
    gens = [(rep.perms[i], rep.phases[i]) for i in range(rep.form.n)]
    while queue and len(seen) <= limit:
        pa, fa = queue.popleft()
        for pg, fg in gens:
            nxt = _kernels.mono_mul(pg, fg, pa, fa, ell)
            key = _mono_key(*nxt, ell)
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    mats = list(seen.values())
    p, z = _kernels.prime_with_root(ell)
    zeta_pows = np.array([pow(z, k, p) for k in range(ell)], dtype=np.int64)
    perms = np.stack([m[0] for m in mats])
    phases = np.stack([m[1] for m in mats])
    rows = _kernels.dense_rows_mod_p(perms, phases, zeta_pows)
    return _kernels.rank_mod_p(rows, p)
