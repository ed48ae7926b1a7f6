"""Finite-type Cartan data, Weyl group words and convex orders.

Weights are tuples of ``Fraction`` in the fundamental-weight basis, so the
coroot pairing ``<alpha_i^vee, mu>`` is simply ``mu[i]``.  Roots are kept in the
simple-root basis as integer tuples and converted with ``root_to_weight``.
Nodes are 0-based internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Weight = tuple  # tuple[Fraction, ...] in omega-coordinates
Root = tuple  # tuple[int, ...] in alpha-coordinates

__all__ = [
    "CartanDatum",
    "WeylElement",
    "cartan_type",
    "build_root_system",
    "weyl_act",
    "longest_word",
    "convex_order",
    "is_reduced",
]


def _frac_vec(v: Iterable) -> Weight:
    return tuple(Fraction(x) for x in v)


def _simple_block(letter: str, n: int) -> tuple[list[list[int]], list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    eps = [1] * n
    if letter == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
    elif letter == "B" or letter == "C":
        if n < 2:
            raise ValueError(f"{letter}_n needs n >= 2")
    elif letter == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
    elif letter == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")
    elif letter == "F":
        if n != 4:
            raise ValueError("F_n needs n = 4")
    elif letter == "G":
        if n != 2:
            raise ValueError("G_n needs n = 2")
    else:
        raise ValueError(f"unknown Cartan type letter {letter!r}")
    if letter in "ABCFG":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    if letter == "B":
        eps = [2] * (n - 1) + [1]
        a[n - 1][n - 2] = -2
    elif letter == "C":
        eps = [1] * (n - 1) + [2]
        a[n - 2][n - 1] = -2
    elif letter == "F":
        eps = [2, 2, 1, 1]
        a[2][1] = -2
    elif letter == "G":
        eps = [1, 3]
        a[0][1] = -3
    elif letter == "D":
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif letter == "E":
        # Bourbaki labelling: 1-3-4-5-6(-7-8) with 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    return a, eps


def _block_sum(blocks: Sequence[tuple[list[list[int]], list[int]]]) -> tuple[list[list[int]], list[int]]:
    n = sum(len(b[1]) for b in blocks)
    a = [[0] * n for _ in range(n)]
    eps: list[int] = []
    off = 0
    for m, e in blocks:
        for i in range(len(e)):
            for j in range(len(e)):
                a[off + i][off + j] = m[i][j]
        eps += e
        off += len(e)
    return a, eps


def _solve_fraction(m: list[list[Fraction]], rhs: list[list[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan over Q: returns m^-1 rhs."""
    n = len(m)
    aug = [list(m[i]) + list(rhs[i]) for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class CartanDatum:
    """A Cartan matrix with its symmetrizers; ``(alpha_i, alpha_j) = eps_i a_ij``."""

    cartan: tuple[tuple[int, ...], ...]
    eps: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        a, e = self.cartan, self.eps
        n = len(a)
        if any(len(row) != n for row in a) or len(e) != n:
            raise ValueError("Cartan matrix must be square and match the symmetrizers")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("diagonal Cartan entries must be 2")
            if e[i] <= 0:
                raise ValueError("symmetrizers must be positive")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if e[i] * a[i][j] != e[j] * a[j][i]:
                    raise ValueError("eps_i a_ij must be symmetric")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError("a_ij = 0 iff a_ji = 0")
        # positive definiteness of the symmetrized matrix via leading minors
        sym = [[Fraction(e[i] * a[i][j]) for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            if _det([row[:k] for row in sym[:k]]) <= 0:
                raise ValueError("Cartan matrix is not of finite type")

    @classmethod
    def from_matrix(cls, cartan: Sequence[Sequence[int]], eps: Sequence[int] | None = None, name: str = "") -> "CartanDatum":
        a = tuple(tuple(int(x) for x in row) for row in cartan)
        if eps is None:
            eps = _symmetrizer(a)
        return cls(a, tuple(int(x) for x in eps), name)

    @property
    def rank(self) -> int:
        return len(self.eps)

    @property
    def nodes(self) -> range:
        return range(self.rank)

    def a(self, i: int, j: int) -> int:
        return self.cartan[i][j]

    # weights ------------------------------------------------------------
    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        """alpha_j in omega-coordinates (column j of the Cartan matrix)."""
        n = self.rank
        return tuple(tuple(Fraction(self.cartan[i][j]) for i in range(n)) for j in range(n))

    @cached_property
    def omega_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Matrix of (omega_i, omega_j) = eps_i (C^-1)_ij."""
        n = self.rank
        c = [[Fraction(self.cartan[i][j]) for j in range(n)] for i in range(n)]
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        cinv = _solve_fraction(c, ident)
        return tuple(tuple(self.eps[i] * cinv[i][j] for j in range(n)) for i in range(n))

    def omega(self, i: int) -> Weight:
        return tuple(Fraction(int(k == i)) for k in self.nodes)

    @property
    def rho(self) -> Weight:
        return tuple(Fraction(1) for _ in self.nodes)

    @property
    def zero(self) -> Weight:
        return tuple(Fraction(0) for _ in self.nodes)

    def root_to_weight(self, beta: Root) -> Weight:
        n = self.rank
        return tuple(sum((Fraction(self.cartan[i][j]) * beta[j] for j in range(n)), Fraction(0)) for i in range(n))

    def weight_to_root(self, mu: Weight) -> tuple[Fraction, ...]:
        """alpha-coordinates of a weight (rational in general)."""
        n = self.rank
        c = [[Fraction(self.cartan[i][j]) for j in range(n)] for i in range(n)]
        sol = _solve_fraction(c, [[Fraction(x)] for x in mu])
        return tuple(r[0] for r in sol)

    def inner(self, mu: Weight, nu: Weight) -> Fraction:
        g = self.omega_gram
        return sum((Fraction(mu[i]) * g[i][j] * Fraction(nu[j]) for i in self.nodes for j in self.nodes), Fraction(0))

    def root_inner(self, beta: Root, gamma: Root) -> int:
        """(beta, gamma) for roots given in alpha-coordinates; always an integer."""
        return sum(self.eps[i] * self.cartan[i][j] * beta[i] * gamma[j] for i in self.nodes for j in self.nodes)

    def weight_root_inner(self, mu: Weight, beta: Root) -> Fraction:
        """(mu, beta) with mu in omega- and beta in alpha-coordinates."""
        return sum((Fraction(mu[i]) * self.eps[i] * beta[i] for i in self.nodes), Fraction(0))

    def coroot_pairing(self, beta: Root, mu: Weight) -> Fraction:
        """<beta^vee, mu> = 2 (beta, mu) / (beta, beta)."""
        return 2 * self.weight_root_inner(mu, beta) / self.root_inner(beta, beta)

    def reflect(self, i: int, mu: Weight) -> Weight:
        c = Fraction(mu[i])
        if c == 0:
            return tuple(mu)
        return tuple(Fraction(mu[k]) - c * self.cartan[k][i] for k in self.nodes)

    def reflect_root(self, i: int, beta: Root) -> Root:
        c = sum(self.cartan[i][j] * beta[j] for j in self.nodes)
        return tuple(beta[k] - (c if k == i else 0) for k in self.nodes)

    def height(self, beta: Root) -> int:
        return sum(beta)

    # roots --------------------------------------------------------------
    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        n = self.rank
        simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for b in frontier:
                for i in range(n):
                    c = self.reflect_root(i, b)
                    if all(x >= 0 for x in c) and c not in seen:
                        seen.add(c)
                        new.append(c)
            frontier = new
        return tuple(sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r))))

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @cached_property
    def w0(self) -> "WeylElement":
        return WeylElement.longest(self, tuple(self.nodes))

    @cached_property
    def tau0(self) -> tuple[int, ...]:
        """Diagram involution with -w0(alpha_i) = alpha_{tau0(i)}."""
        out = []
        for i in self.nodes:
            img = self.w0.act(self.simple_roots[i])
            neg = tuple(-x for x in img)
            out.append(self.simple_roots.index(neg))
        return tuple(out)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _symmetrizer(a: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Smallest coprime positive eps with eps_i a_ij symmetric (per component)."""
    from math import gcd

    n = len(a)
    eps: list[Fraction | None] = [None] * n
    for start in range(n):
        if eps[start] is not None:
            continue
        eps[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] != 0 and eps[j] is None:
                    eps[j] = eps[i] * a[i][j] / a[j][i]
                    comp.append(j)
                    stack.append(j)
        den = 1
        for k in comp:
            den = den * eps[k].denominator // gcd(den, eps[k].denominator)
        vals = [int(eps[k] * den) for k in comp]
        g = 0
        for v in vals:
            g = gcd(g, v)
        for k, v in zip(comp, vals):
            eps[k] = Fraction(v // g)
    return tuple(int(e) for e in eps)


def cartan_type(name: str) -> CartanDatum:
    """Datum for names like ``"A3"``, ``"B2"``, ``"G2"`` or products ``"A1xA1"``."""
    parts = re.split(r"\s*[x×]\s*", name.strip())
    blocks = []
    for p in parts:
        m = re.fullmatch(r"([A-Ga-g])(\d+)", p)
        if not m:
            raise ValueError(f"cannot parse Cartan type {name!r}")
        blocks.append(_simple_block(m.group(1).upper(), int(m.group(2))))
    a, eps = _block_sum(blocks)
    return CartanDatum.from_matrix(a, eps, name=name.strip())


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, identified by the image of rho."""

    datum: CartanDatum
    key: Weight

    @classmethod
    def from_word(cls, datum: CartanDatum, word: Sequence[int]) -> "WeylElement":
        return cls(datum, weyl_act(datum, word, datum.rho))

    @classmethod
    def identity(cls, datum: CartanDatum) -> "WeylElement":
        return cls(datum, datum.rho)

    @classmethod
    def longest(cls, datum: CartanDatum, subset: Sequence[int]) -> "WeylElement":
        mu = datum.rho
        subset = sorted(subset)
        moved = True
        while moved:
            moved = False
            for j in subset:
                if mu[j] > 0:
                    mu = datum.reflect(j, mu)
                    moved = True
                    break
        return cls(datum, mu)

    @cached_property
    def word(self) -> tuple[int, ...]:
        """Reduced word built greedily from the smallest left descent."""
        d = self.datum
        mu = self.key
        out = []
        while True:
            i = next((k for k in d.nodes if mu[k] < 0), None)
            if i is None:
                return tuple(out)
            out.append(i)
            mu = d.reflect(i, mu)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, mu: Weight) -> Weight:
        return weyl_act(self.datum, self.word, mu)

    def act_root(self, beta: Root) -> Root:
        for i in reversed(self.word):
            beta = self.datum.reflect_root(i, beta)
        return beta

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.datum, self.act(other.key))

    def inverse(self) -> "WeylElement":
        return WeylElement.from_word(self.datum, tuple(reversed(self.word)))


def build_root_system(datum: CartanDatum) -> dict:
    """Positive roots (alpha-coordinates), their number and a word for w0."""
    return {
        "positive_roots": list(datum.positive_roots),
        "N": datum.num_positive_roots,
        "w0": datum.w0.word,
    }


def weyl_act(datum: CartanDatum, word: Sequence[int], mu: Iterable) -> Weight:
    """Apply s_{w_1} ... s_{w_k} to mu (rightmost reflection first)."""
    mu = _frac_vec(mu)
    for i in reversed(tuple(word)):
        if not 0 <= i < datum.rank:
            raise ValueError(f"node {i} out of range")
        mu = datum.reflect(i, mu)
    return mu


def longest_word(datum: CartanDatum, subset: Iterable[int] | None = None) -> tuple[int, ...]:
    nodes = tuple(datum.nodes) if subset is None else tuple(subset)
    return WeylElement.longest(datum, nodes).word


def is_reduced(datum: CartanDatum, word: Sequence[int]) -> bool:
    return WeylElement.from_word(datum, word).length == len(word)


def convex_order(datum: CartanDatum, word: Sequence[int]) -> list[Root]:
    """beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}) for a reduced word of w0."""
    word = tuple(word)
    if len(word) != datum.num_positive_roots or not is_reduced(datum, word):
        raise ValueError(f"{word} is not a reduced word for w0")
    out = []
    n = datum.rank
    for k, i in enumerate(word):
        beta: Root = tuple(int(t == i) for t in range(n))
        for j in reversed(word[:k]):
            beta = datum.reflect_root(j, beta)
        out.append(beta)
    return out
