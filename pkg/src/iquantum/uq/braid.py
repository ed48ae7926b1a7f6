"""Braid operators T_i on U, PBW root vectors and the ht^iota degree.

The generator images are those of T''_{i,1}, written for the Chevalley
generators and transported to E_i = c_E(i) bold-E_i, F_i = c_F(i) bold-F_i::

    T_i(bold-E_i) = -bold-F_i K_i              T_i(bold-F_i) = -K_i^{-1} bold-E_i
    T_i(bold-E_j) = sum_{r+s=n} (-1)^r q_i^{-r} bold-E_i^(s) bold-E_j bold-E_i^(r)
    T_i(bold-F_j) = sum_{r+s=n} (-1)^r q_i^{r}  bold-F_i^(r) bold-F_j bold-F_i^(s)

with n = -a_ij and T_i(K_mu) = K_{s_i mu}.  They are checked, not assumed:
see ``relation_defects`` and ``braid_defects``.
"""

from __future__ import annotations

from typing import Sequence

from ..qcoeff import LaurentScalar, qnumber
from ..rootdata import is_reduced
from .algebra import UqAlgebra, UqElement

__all__ = [
    "braid_T",
    "braid_T_word",
    "root_vector",
    "root_vectors",
    "hi_degree",
    "relation_defects",
    "braid_defects",
    "defining_relations",
    "pbw_independent",
]


def _q(k) -> LaurentScalar:
    return LaurentScalar.q_power(k)


def _gen_image(alg: UqAlgebra, i: int, kind: str, j: int) -> UqElement:
    cache = alg.__dict__.setdefault("_braid_gen", {})
    key = (i, kind, j)
    hit = cache.get(key)
    if hit is not None:
        return hit
    eps = alg.eps[i]
    if i == j:
        if kind == "E":
            img = alg.F(i) * alg.Ki(i) * _q(-eps)
        else:
            img = alg.Ki(i, -1) * alg.E(i) * _q(eps)
    else:
        n = -alg.datum.a(i, j)
        gen = alg.E if kind == "E" else alg.F
        c = alg.c_E(i) if kind == "E" else alg.c_F(i)
        img = alg.element()
        Xi, Xj = gen(i), gen(j)
        for r in range(n + 1):
            s = n - r
            coef = qnumber("fact", r, eps=eps) * qnumber("fact", s, eps=eps) * c ** n
            sign = -1 if r % 2 else 1
            if kind == "E":
                term = Xi ** s * Xj * Xi ** r * (_q(-r * eps) * sign)
            else:
                term = Xi ** r * Xj * Xi ** s * (_q(r * eps) * sign)
            img = img + term / coef
    cache[key] = img
    return img


def _word_image(alg: UqAlgebra, i: int, kind: str, w: tuple[int, ...]) -> UqElement:
    cache = alg.__dict__.setdefault("_braid_word", {})
    key = (i, kind, w)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not w:
        out = alg.one()
    else:
        out = _word_image(alg, i, kind, w[:-1]) * _gen_image(alg, i, kind, w[-1])
    cache[key] = out
    return out


def braid_T(alg: UqAlgebra, i: int, x: UqElement) -> UqElement:
    """Apply T_i to an element over the generic scalar ring."""
    if x.ell is not None:
        raise ValueError("braid operators act on generic elements; specialize afterwards")
    if not 0 <= i < alg.n:
        raise ValueError(f"node {i} out of range")
    ai = alg.alpha[i]
    out = alg.element()
    for (mu, f, e), c in x.terms.items():
        smu = tuple(m - mu[i] * a for m, a in zip(mu, ai))
        term = alg.K(smu) * _word_image(alg, i, "F", f) * _word_image(alg, i, "E", e)
        out = out + term * c
    return out


def braid_T_word(alg: UqAlgebra, word: Sequence[int], x: UqElement) -> UqElement:
    """T_{i_1} ... T_{i_k}(x) for word (i_1, ..., i_k)."""
    for i in reversed(tuple(word)):
        x = braid_T(alg, i, x)
    return x


def root_vector(alg: UqAlgebra, word: Sequence[int], k: int, kind: str = "F") -> UqElement:
    """F_{beta_k} (or E_{beta_k}) = T_{i_1} ... T_{i_{k-1}}(F_{i_k}), with k counted from 1."""
    word = tuple(word)
    if not is_reduced(alg.datum, word):
        raise ValueError(f"{word} is not a reduced word")
    if not 1 <= k <= len(word):
        raise ValueError("k out of range")
    gen = alg.F if kind == "F" else alg.E
    return braid_T_word(alg, word[:k - 1], gen(word[k - 1]))


def root_vectors(alg: UqAlgebra, word: Sequence[int], kind: str = "F") -> list[UqElement]:
    return [root_vector(alg, word, k, kind) for k in range(1, len(word) + 1)]


def hi_degree(x: UqElement, white: Sequence[int] | None = None) -> int:
    """Largest number of white F-letters over the monomials of x (0 for x = 0)."""
    white = set(range(x.alg.n) if white is None else white)
    return max((sum(1 for a in f if a in white) for (_, f, _) in x.terms), default=0)


# validation -----------------------------------------------------------------


def defining_relations(alg: UqAlgebra, images: dict) -> list[tuple[str, UqElement]]:
    """Defining relations of U evaluated on candidate images.

    ``images`` maps ("E", i), ("F", i) and ("K", i) (the image of K_{omega_i}) to elements.
    """
    n = alg.n
    E = [images["E", i] for i in range(n)]
    F = [images["F", i] for i in range(n)]
    K = [images["K", i] for i in range(n)]
    Kinv = [_inverse_K(alg, images["K", i]) for i in range(n)]

    def K_alpha(i: int, sign: int) -> UqElement:
        out = alg.one()
        for k, a in enumerate(alg.alpha[i]):
            base = K[k] if a * sign > 0 else Kinv[k]
            for _ in range(abs(a)):
                out = out * base
        return out

    out = []
    for k in range(n):
        for i in range(n):
            p = alg.eps[i] * (1 if k == i else 0)
            out.append((f"K{k}E{i}", K[k] * E[i] - E[i] * K[k] * _q(p)))
            out.append((f"K{k}F{i}", K[k] * F[i] - F[i] * K[k] * _q(-p)))
    for i in range(n):
        for j in range(n):
            lhs = E[i] * F[j] - F[j] * E[i]
            if i == j:
                qi = _q(alg.eps[i])
                lhs = lhs - (K_alpha(i, -1) - K_alpha(i, 1)) * (qi - qi.inverse())
            out.append((f"[E{i},F{j}]", lhs))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = 1 - alg.datum.a(i, j)
            for name, X in (("E", E), ("F", F)):
                rel = alg.element()
                for r in range(m + 1):
                    c = qnumber("binom", m, r, eps=alg.eps[i])
                    rel = rel + X[i] ** r * X[j] * X[i] ** (m - r) * (c * (-1 if r % 2 else 1))
                out.append((f"serre{name}{i}{j}", rel))
    return out


def _inverse_K(alg: UqAlgebra, k: UqElement) -> UqElement:
    if len(k.terms) != 1:
        raise ValueError("K-image is not a monomial")
    (mu, f, e), c = next(iter(k.terms.items()))
    if f or e:
        raise ValueError("K-image is not a group-like monomial")
    return alg.K(tuple(-m for m in mu)) * c.inverse()


def relation_defects(alg: UqAlgebra, i: int) -> list[str]:
    """Names of defining relations not preserved by T_i (empty when T_i is a homomorphism)."""
    images = {}
    for j in range(alg.n):
        images["E", j] = braid_T(alg, i, alg.E(j))
        images["F", j] = braid_T(alg, i, alg.F(j))
        images["K", j] = braid_T(alg, i, alg.K(tuple(int(k == j) for k in range(alg.n))))
    return [name for name, rel in defining_relations(alg, images) if not rel.is_zero()]


def braid_defects(alg: UqAlgebra) -> list[str]:
    """Braid relations T_i T_j ... = T_j T_i ... checked on every generator."""
    bad = []
    m_of = {0: 2, 1: 3, 2: 4, 3: 6}
    for i in range(alg.n):
        for j in range(i + 1, alg.n):
            m = m_of[alg.datum.a(i, j) * alg.datum.a(j, i)]
            w1 = tuple((i, j)[t % 2] for t in range(m))
            w2 = tuple((j, i)[t % 2] for t in range(m))
            for k in range(alg.n):
                for name, g in (("E", alg.E(k)), ("F", alg.F(k)), ("K", alg.K(tuple(int(t == k) for t in range(alg.n))))):
                    if braid_T_word(alg, w1, g) != braid_T_word(alg, w2, g):
                        bad.append(f"T{w1} != T{w2} on {name}{k}")
    return bad


def pbw_independent(alg: UqAlgebra, word: Sequence[int], max_exp: int = 1) -> bool:
    """PBW monomials F^a (exponents <= max_exp, convex order) are linearly independent.

    Coefficients are evaluated at q^(1/2) = 3 and the rank taken over Q.
    """
    from itertools import product

    import flint

    Fs = root_vectors(alg, word, "F")
    monos = []
    for a in product(range(max_exp + 1), repeat=len(Fs)):
        x = alg.one()
        for Fb, k in zip(Fs, a):
            x = x * Fb ** k
        monos.append(x)
    keys = sorted({m for x in monos for m in x.terms}, key=repr)
    rows = [[_eval(x.terms.get(k), 3) for k in keys] for x in monos]
    if not keys:
        return False
    return flint.fmpq_mat(rows).rank() == len(monos)


def _eval(c, s: int):
    """Value of a coefficient at q^(1/2) = s."""
    import flint

    if c is None:
        return flint.fmpq(0)
    return flint.fmpq(int(c.num(s))) * flint.fmpq(s) ** c.shift / flint.fmpq(int(c.den(s)))

