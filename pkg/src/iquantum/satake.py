"""Satake diagrams and the numerical invariants of the associated symmetric pair.

Nodes are 0-based internally; the JSON input format uses 1-based labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Mapping, Sequence

from .rootdata import CartanDatum, Root, Weight, WeylElement, cartan_type, convex_order
from .snf import hermite_rows, integer_kernel

__all__ = [
    "SatakeDiagram",
    "SatakeInvariants",
    "AdaptedWord",
    "RelativeStructure",
    "DiagramError",
    "validate_satake",
    "theta_weight",
    "relative_structure",
    "p_imath_basis",
    "invariants",
    "relative_height",
    "p_theta_basis",
    "in_p_imath",
    "adapted_word",
]


class DiagramError(ValueError):
    """The input does not describe a valid Satake diagram."""


@dataclass(frozen=True)
class SatakeDiagram:
    datum: CartanDatum
    black: frozenset
    tau: tuple[int, ...]
    signs: tuple[int, ...] | None = None  # indexed by node; entries for black nodes ignored
    name: str = ""

    # construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, data: Mapping[str, Any], name: str = "") -> "SatakeDiagram":
        if "cartan" in data:
            datum = CartanDatum.from_matrix(data["cartan"], data.get("eps"), name=str(data.get("type", "")))
        elif "type" in data:
            datum = cartan_type(str(data["type"]))
        else:
            raise DiagramError("diagram needs a 'type' or a 'cartan' matrix")
        n = datum.rank
        black = set()
        for b in data.get("black", []):
            b = int(b)
            if not 1 <= b <= n:
                raise DiagramError(f"black node {b} out of range 1..{n}")
            black.add(b - 1)
        tau = list(range(n))
        for k, v in dict(data.get("tau", {})).items():
            k, v = int(k), int(v)
            if not (1 <= k <= n and 1 <= v <= n):
                raise DiagramError(f"tau entry {k}->{v} out of range 1..{n}")
            tau[k - 1] = v - 1
        signs = None
        if data.get("signs") is not None:
            raw = data["signs"]
            sg = [-1] * n
            items = raw.items() if isinstance(raw, Mapping) else enumerate(raw, start=1)
            for k, v in items:
                sg[int(k) - 1] = int(v)
            signs = tuple(sg)
        d = cls(datum, frozenset(black), tuple(tau), signs, name or str(data.get("name", "")))
        problems = validate_satake(d)
        if problems:
            raise DiagramError("; ".join(problems))
        return d

    @classmethod
    def from_json(cls, path: str | Path) -> "SatakeDiagram":
        text = Path(path).read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_dict(data, name=Path(path).stem)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "type": self.datum.name,
            "black": sorted(b + 1 for b in self.black),
            "tau": {str(i + 1): self.tau[i] + 1 for i in self.datum.nodes},
        }
        if not self.datum.name:
            out["cartan"] = [list(r) for r in self.datum.cartan]
            out["eps"] = list(self.datum.eps)
        if self.signs is not None:
            out["signs"] = {str(i + 1): self.signs[i] for i in self.white}
        return out

    # basic data ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.datum.rank

    @cached_property
    def white(self) -> tuple[int, ...]:
        return tuple(i for i in self.datum.nodes if i not in self.black)

    @cached_property
    def white_reps(self) -> tuple[int, ...]:
        """Smallest node of each tau-orbit in the white set."""
        return tuple(i for i in self.white if i <= self.tau[i])

    @cached_property
    def w_bullet(self) -> WeylElement:
        return WeylElement.longest(self.datum, sorted(self.black))

    @cached_property
    def black_positive_roots(self) -> tuple[Root, ...]:
        return tuple(b for b in self.datum.positive_roots if all(b[k] == 0 for k in self.datum.nodes if k not in self.black))

    def alpha_rho_black(self, j: int) -> Fraction:
        """alpha_j(rho_bullet^vee) = sum over R_bullet^+ of (beta, alpha_j)/(beta, beta)."""
        d = self.datum
        ej = tuple(int(k == j) for k in d.nodes)
        return sum((Fraction(d.root_inner(b, ej), d.root_inner(b, b)) for b in self.black_positive_roots), Fraction(0))

    def tau_weight(self, mu: Weight) -> Weight:
        out = [Fraction(0)] * self.rank
        for i in self.datum.nodes:
            out[self.tau[i]] = Fraction(mu[i])
        return tuple(out)

    def theta(self, mu: Weight) -> Weight:
        return tuple(-x for x in self.w_bullet.act(self.tau_weight(mu)))

    @cached_property
    def sign_vector(self) -> tuple[int, ...]:
        """The c_i (entries at black nodes are unused and set to 0)."""
        if self.signs is not None:
            return tuple(self.signs[i] if i not in self.black else 0 for i in self.datum.nodes)
        return tuple(-1 if i not in self.black else 0 for i in self.datum.nodes)

    def c(self, i: int) -> int:
        return self.sign_vector[i]

    @property
    def is_quasi_split(self) -> bool:
        return not self.black

    def label(self) -> str:
        return self.name or self.datum.name


def validate_satake(d: SatakeDiagram) -> list[str]:
    """Return the list of violated conditions (empty when the diagram is valid)."""
    datum = d.datum
    n = datum.rank
    problems = []
    tau = d.tau
    if sorted(tau) != list(range(n)) or any(tau[tau[i]] != i for i in range(n)):
        return ["tau is not an involution of the node set"]
    if any(datum.cartan[i][j] != datum.cartan[tau[i]][tau[j]] for i in range(n) for j in range(n)):
        problems.append("axiom (1): a_ij != a_{tau i, tau j}")
    if any(tau[j] not in d.black for j in d.black):
        problems.append("axiom (2): tau does not preserve the black nodes")
    wb = d.w_bullet
    for j in sorted(d.black):
        img = wb.act(datum.simple_roots[j])
        if img != tuple(-x for x in datum.simple_roots[tau[j]]):
            problems.append(f"axiom (3): w_bullet(alpha_{j + 1}) != -alpha_{tau[j] + 1}")
    for j in d.white:
        if tau[j] == j:
            val = d.alpha_rho_black(j)
            if val.denominator != 1:
                problems.append(f"axiom (4): alpha_{j + 1}(rho_bullet^vee) = {val} is not an integer")
    if not problems:
        sign_issues = _sign_problems(d)
        if sign_issues and d.signs is None:
            sign_issues = [f"default signs c_i = -1 are not admissible ({m}); supply 'signs'" for m in sign_issues]
        problems += sign_issues
    return problems


def _sign_problems(d: SatakeDiagram) -> list[str]:
    out = []
    datum = d.datum
    c = d.sign_vector
    for i in d.white:
        if c[i] not in (1, -1):
            out.append(f"sign c_{i + 1} must be +1 or -1")
            continue
        expo = 2 * d.alpha_rho_black(i)
        if c[i] * c[d.tau[i]] != (-1) ** abs(int(expo)):
            out.append(f"c_{i + 1} c_{d.tau[i] + 1} != (-1)^(2 alpha_{i + 1}(rho_bullet^vee))")
        if datum.inner(datum.simple_roots[i], d.theta(datum.simple_roots[i])) == 0 and c[i] != c[d.tau[i]]:
            out.append(f"c_{i + 1} != c_{d.tau[i] + 1} although (alpha_i, theta alpha_i) = 0")
    return out


def theta_weight(d: SatakeDiagram, mu: Sequence) -> Weight:
    """theta(mu) = -w_bullet(tau mu)."""
    return d.theta(tuple(Fraction(x) for x in mu))


# ---------------------------------------------------------------------------
# relative Weyl group data


@dataclass(frozen=True)
class AdaptedWord:
    word: tuple[int, ...]  # i_1..i_L, j_1..j_M
    L: int
    M: int
    betas: tuple[Root, ...]  # all N roots in convex order
    gammas: tuple[Root, ...]  # convex order of R_bullet^+ for the primed word
    j_prime: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.word)

    @property
    def i_word(self) -> tuple[int, ...]:
        return self.word

    @property
    def j_word(self) -> tuple[int, ...]:
        return self.word[self.L:]

    def to_dict(self) -> dict:
        return {
            "word": [i + 1 for i in self.word],
            "L": self.L,
            "M": self.M,
            "betas": [list(b) for b in self.betas],
            "gammas": [list(g) for g in self.gammas],
            "j_prime": [j + 1 for j in self.j_prime],
        }


@dataclass(frozen=True)
class RelativeStructure:
    bs: dict  # i -> WeylElement
    relative_rank: int
    w0_relative: WeylElement
    L: int
    M: int
    adapted: AdaptedWord


def adapted_word(d: SatakeDiagram, word: Sequence[int] | None = None) -> AdaptedWord:
    """Reduced word for w0 whose tail is a reduced word for w_bullet.

    With ``word`` omitted the head is the greedy word of w0 w_bullet.
    """
    datum = d.datum
    wb = d.w_bullet
    M = wb.length
    w0 = datum.w0
    if word is None:
        head = (w0 * wb.inverse()).word
        word = tuple(head) + tuple(wb.word)
    word = tuple(word)
    L = len(word) - M
    if WeylElement.from_word(datum, word[L:]) != wb:
        raise DiagramError("the last l(w_bullet) letters of the word must form a reduced word for w_bullet")
    betas = tuple(convex_order(datum, word))
    tau0 = datum.tau0
    j_prime = tuple(tau0[d.tau[j]] for j in word[L:])
    gammas = []
    for t, j in enumerate(j_prime):
        g: Root = tuple(int(k == j) for k in datum.nodes)
        for jj in reversed(j_prime[:t]):
            g = datum.reflect_root(jj, g)
        gammas.append(g)
    # the defining property of j' and the convex-order continuation
    for j, jp in zip(word[L:], j_prime):
        neg = tuple(-x for x in w0.act(datum.simple_roots[d.tau[j]]))
        assert neg == datum.simple_roots[jp], "j' relabelling mismatch"
    assert tuple(gammas) == betas[L:], "gamma roots differ from the convex order tail"
    return AdaptedWord(word, L, M, betas, tuple(gammas), j_prime)


def relative_structure(d: SatakeDiagram, word: Sequence[int] | None = None) -> RelativeStructure:
    datum = d.datum
    wb = d.w_bullet
    bs = {}
    for i in d.white:
        wbi = WeylElement.longest(datum, sorted(set(d.black) | {i, d.tau[i]}))
        bs[i] = wbi * wb.inverse()
    w0r = datum.w0 * wb.inverse()
    aw = adapted_word(d, word)
    assert datum.w0.length == w0r.length + wb.length
    return RelativeStructure(bs, len(d.white_reps), w0r, aw.L, aw.M, aw)


def relative_height(d: SatakeDiagram, beta: Root) -> int:
    """Sum of the coefficients of beta at white nodes."""
    return sum(beta[i] for i in d.white)


# ---------------------------------------------------------------------------
# lattices


def p_theta_basis(d: SatakeDiagram) -> list[Weight]:
    """Integral basis of P^theta (Hermite-normalized rows)."""
    n = d.rank
    cols = [d.theta(d.datum.omega(i)) for i in range(n)]
    # matrix of theta - I in omega coordinates (column i = theta(omega_i) - omega_i)
    mat = [[int(cols[i][k]) - int(k == i) for i in range(n)] for k in range(n)]
    ker = integer_kernel(mat)
    return [tuple(Fraction(x) for x in row) for row in hermite_rows(ker)]


def in_p_imath(d: SatakeDiagram, nu: Weight) -> bool:
    w0 = d.datum.w0
    lhs = d.theta(nu)
    rhs = tuple(a + b - c for a, b, c in zip(nu, w0.act(nu), d.w_bullet.act(nu)))
    return lhs == rhs


def p_imath_basis(d: SatakeDiagram) -> list[Weight]:
    """nu_k = omega_i + omega_{tau0 tau i} (or omega_i) over tau tau0-orbits."""
    datum = d.datum
    tau0 = datum.tau0
    out = []
    seen = set()
    for i in datum.nodes:
        if i in seen:
            continue
        j = tau0[d.tau[i]]
        seen |= {i, j}
        nu = datum.omega(i) if j == i else tuple(a + b for a, b in zip(datum.omega(i), datum.omega(j)))
        assert in_p_imath(d, nu), f"nu for node {i + 1} fails the P^imath condition"
        out.append(nu)
    return out


@dataclass(frozen=True)
class SatakeInvariants:
    N: int
    M: int
    L: int
    rank_g: int
    dim_g: int
    dim_k: int
    rank_k: int
    N0: int
    rank_p_theta: int
    covering_degree: int
    max_class_dim: int
    max_leaf_dim: int
    branching_exponents: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "M": self.M,
            "L": self.L,
            "rank_g": self.rank_g,
            "dim_g": self.dim_g,
            "dim_k": self.dim_k,
            "rank_k": self.rank_k,
            "N0": self.N0,
            "rank_P_theta": self.rank_p_theta,
            "covering_degree": self.covering_degree,
            "max_twisted_class_dim": self.max_class_dim,
            "max_leaf_dim": self.max_leaf_dim,
            "branching_exponents": list(self.branching_exponents),
        }


def invariants(d: SatakeDiagram) -> SatakeInvariants:
    datum = d.datum
    N = datum.num_positive_roots
    M = d.w_bullet.length
    r = len(p_theta_basis(d))
    assert r == datum.rank - len(d.white_reps), "rank of P^theta disagrees with the orbit count"
    dim_k = N + M + r
    m = len(p_imath_basis(d))
    if (dim_k - m) % 2 or dim_k < m:
        raise AssertionError(f"dim k - rank k = {dim_k - m} is not a non-negative even integer")
    N0 = (dim_k - m) // 2
    rank_g = datum.rank
    dim_g = rank_g + 2 * N
    return SatakeInvariants(
        N=N,
        M=M,
        L=N - M,
        rank_g=rank_g,
        dim_g=dim_g,
        dim_k=dim_k,
        rank_k=m,
        N0=N0,
        rank_p_theta=r,
        covering_degree=2 ** len(d.black),
        max_class_dim=dim_g - m,
        max_leaf_dim=dim_k - m,
        branching_exponents=(N - N0, N - N0 + rank_g - m),
    )
