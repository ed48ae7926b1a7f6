"""Normal-ordered arithmetic in the quantum group U at small rank.

A monomial is ``(mu, f, e)`` meaning ``K_mu F_f E_e`` with ``f`` and ``e``
normal words for the rewriting system; ``mu`` is an integral weight in
fundamental-weight coordinates.  Coefficients are ``LaurentScalar`` (generic
q) or ``CyclotomicScalar`` (after specialization at a root of unity).
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ..qcoeff import ONE, CyclotomicScalar, LaurentScalar, PoleError, specialize
from ..rootdata import CartanDatum, cartan_type
from .rewriting import BoundExceeded, RewriteSystem

__all__ = ["MAX_RANK", "UqAlgebra", "UqElement", "algebra_for", "BoundExceeded"]

MAX_RANK = 4
# long enough for the rule sets of every rank <= 4 type to certify as complete
ENGINE_BOUND = 16

Word = tuple[int, ...]
Mono = tuple[tuple[int, ...], Word, Word]


class _Ring:
    """Scalar ring: generic (``ell`` None) or Q(zeta_ell) with q^(1/2) -> v~."""

    def __init__(self, ell: int | None):
        self.ell = ell
        self._qp: dict = {}
        self.one = ONE if ell is None else CyclotomicScalar(ell, 1)
        self.zero = self.one - self.one

    def q(self, k) -> object:
        """q^k for k in (1/2)Z."""
        hit = self._qp.get(k)
        if hit is None:
            if self.ell is None:
                hit = LaurentScalar.q_power(k)
            else:
                k2 = Fraction(k) * 2
                hit = CyclotomicScalar.root(self.ell, int(k2))
            self._qp[k] = hit
        return hit

    def convert(self, x):
        if self.ell is None:
            return x if isinstance(x, LaurentScalar) else LaurentScalar.from_int(x)
        if isinstance(x, CyclotomicScalar):
            return x
        return specialize(x, self.ell)


def _add(target: dict, key, c) -> None:
    s = target.get(key)
    s = c if s is None else s + c
    if s:
        target[key] = s
    else:
        target.pop(key, None)


class UqAlgebra:
    """Shared engine state for one Cartan datum."""

    def __init__(self, datum: CartanDatum, bound: int = ENGINE_BOUND):
        if datum.rank > MAX_RANK:
            raise ValueError(f"rank {datum.rank} exceeds the supported rank {MAX_RANK}")
        self.datum = datum
        self.bound = bound
        self.rs = RewriteSystem(datum, bound)
        n = datum.rank
        self.n = n
        self.zero_weight = (0,) * n
        self.alpha = tuple(tuple(int(datum.cartan[k][i]) for k in range(n)) for i in range(n))
        self.eps = datum.eps
        self._rings: dict = {}
        self._nf: dict = {}
        self._ef: dict = {}

    # scalars -------------------------------------------------------------
    def ring(self, ell: int | None) -> _Ring:
        r = self._rings.get(ell)
        if r is None:
            r = _Ring(ell)
            if ell is not None:
                for d in self.rs.denominators():
                    specialize(d, ell)  # the rules must survive specialization
            self._rings[ell] = r
            self._nf[ell] = {}
            self._ef[ell] = {}
        return r

    def pair(self, mu: Sequence[int], i: int) -> int:
        """(mu, alpha_i) for mu in fundamental-weight coordinates."""
        return mu[i] * self.eps[i]

    def pair_word(self, mu: Sequence[int], w: Word) -> int:
        return sum(mu[i] * self.eps[i] for i in w)

    def root_pair(self, i: int, w: Word) -> int:
        """(alpha_i, sum of alpha over the letters of w)."""
        return sum(self.eps[i] * self.datum.cartan[i][j] for j in w)

    # words ---------------------------------------------------------------
    def nf_word(self, w: Word, ell: int | None) -> dict:
        if ell is None:
            return self.rs.normal_form(w)
        ring = self.ring(ell)
        return self.rs.normal_form(w, ring.convert, self._nf[ell])

    def _ef_product(self, e: Word, f: Word, ell: int | None) -> list:
        """E_e F_f as a list of (lam, f', e', coeff) with raw (unnormalized) words."""
        memo = self._ef[ell]
        key = (e, f)
        hit = memo.get(key)
        if hit is not None:
            return hit
        ring = self._rings[ell]
        if not e:
            res = [(self.zero_weight, f, (), ring.one)]
            memo[key] = res
            return res
        i = e[0]
        acc: dict = {}
        qi = ring.q(self.eps[i])
        qd = qi - qi.inverse()
        ai = self.alpha[i]
        for lam, f2, e2, c in self._ef_product(e[1:], f, ell):
            c1 = c * ring.q(-self.pair(lam, i)) if any(lam) else c
            _add(acc, (lam, f2, (i,) + e2), c1)
            x = 0
            for t, letter in enumerate(f2):
                if letter == i:
                    rest = f2[:t] + f2[t + 1:]
                    lm = tuple(a - b for a, b in zip(lam, ai))
                    lp = tuple(a + b for a, b in zip(lam, ai))
                    _add(acc, (lm, rest, e2), c1 * qd * ring.q(-x))
                    _add(acc, (lp, rest, e2), -(c1 * qd * ring.q(x)))
                x += self.eps[i] * self.datum.cartan[i][letter]
        res = [(k[0], k[1], k[2], c) for k, c in acc.items()]
        memo[key] = res
        return res

    def mul_terms(self, a: dict, b: dict, ell: int | None) -> dict:
        ring = self.ring(ell)
        out: dict = {}
        for (m1, f1, e1), c1 in a.items():
            for (m2, f2, e2), c2 in b.items():
                k = self.pair_word(m2, e1) - self.pair_word(m2, f1)
                base = c1 * c2
                if k:
                    base = base * ring.q(-k)
                mu = tuple(x + y for x, y in zip(m1, m2))
                for lam, fp, ep, c3 in self._ef_product(e1, f2, ell):
                    c = base * c3
                    k2 = self.pair_word(lam, f1)
                    if k2:
                        c = c * ring.q(k2)
                    nu = tuple(x + y for x, y in zip(mu, lam)) if any(lam) else mu
                    F = self.nf_word(f1 + fp, ell)
                    E = self.nf_word(ep + e2, ell)
                    for fw, cf in F.items():
                        cfc = c * cf
                        for ew, ce in E.items():
                            _add(out, (nu, fw, ew), cfc * ce)
        return out

    # constructors ----------------------------------------------------------
    def element(self, terms: dict | None = None, ell: int | None = None) -> "UqElement":
        self.ring(ell)
        return UqElement(self, dict(terms or {}), ell)

    def one(self, ell: int | None = None) -> "UqElement":
        return self.element({(self.zero_weight, (), ()): self.ring(ell).one}, ell)

    def scalar(self, c, ell: int | None = None) -> "UqElement":
        c = self.ring(ell).convert(c)
        return self.element({(self.zero_weight, (), ()): c} if c else {}, ell)

    def E(self, i: int, ell: int | None = None) -> "UqElement":
        return self.element({(self.zero_weight, (), (i,)): self.ring(ell).one}, ell)

    def F(self, i: int, ell: int | None = None) -> "UqElement":
        return self.element({(self.zero_weight, (i,), ()): self.ring(ell).one}, ell)

    def K(self, mu: Iterable, ell: int | None = None) -> "UqElement":
        mu = tuple(_int(x) for x in mu)
        return self.element({(mu, (), ()): self.ring(ell).one}, ell)

    def K_root(self, beta: Iterable[int], ell: int | None = None) -> "UqElement":
        """K of a root given in simple-root coordinates."""
        beta = tuple(beta)
        mu = tuple(sum(self.alpha[j][k] * beta[j] for j in range(self.n)) for k in range(self.n))
        return self.K(mu, ell)

    def Ki(self, i: int, power: int = 1, ell: int | None = None) -> "UqElement":
        return self.K(tuple(power * x for x in self.alpha[i]), ell)

    def word(self, letters: Sequence[tuple[str, int]], ell: int | None = None) -> "UqElement":
        """Product of generators given as ``[("E", 0), ("F", 1), ...]``."""
        out = self.one(ell)
        for kind, i in letters:
            out = out * (self.E(i, ell) if kind == "E" else self.F(i, ell))
        return out

    def q(self, k, ell: int | None = None):
        return self.ring(ell).q(k)

    def c_E(self, i: int):
        """E_i = c_E(i) * (Chevalley E_i): q_i^(-1/2) (q_i^-1 - q_i)."""
        qi = LaurentScalar.q_power(self.eps[i])
        return LaurentScalar.q_power(Fraction(-self.eps[i], 2)) * (qi.inverse() - qi)

    def c_F(self, i: int):
        """F_i = c_F(i) * (Chevalley F_i): q_i^(1/2) (q_i - q_i^-1)."""
        qi = LaurentScalar.q_power(self.eps[i])
        return LaurentScalar.q_power(Fraction(self.eps[i], 2)) * (qi - qi.inverse())


def _int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError("K_mu needs an integral weight")
    return int(x)


@lru_cache(maxsize=None)
def _cached_algebra(name: str, bound: int) -> UqAlgebra:
    return UqAlgebra(cartan_type(name), bound)


def algebra_for(datum: CartanDatum | str, bound: int = ENGINE_BOUND) -> UqAlgebra:
    """Shared engine for a datum (cached for named types)."""
    if isinstance(datum, str):
        return _cached_algebra(datum, bound)
    if datum.name:
        try:
            cached = _cached_algebra(datum.name, bound)
            if cached.datum.cartan == datum.cartan and cached.datum.eps == datum.eps:
                return cached
        except ValueError:
            pass
    return _by_datum(datum, bound)


_DATUM_CACHE: dict = {}


def _by_datum(datum: CartanDatum, bound: int) -> UqAlgebra:
    key = (datum.cartan, datum.eps, bound)
    alg = _DATUM_CACHE.get(key)
    if alg is None:
        alg = _DATUM_CACHE[key] = UqAlgebra(datum, bound)
    return alg


class UqElement:
    """Finite combination of normal monomials K_mu F_f E_e."""

    __slots__ = ("alg", "terms", "ell")

    def __init__(self, alg: UqAlgebra, terms: dict, ell: int | None = None):
        self.alg = alg
        self.terms = terms
        self.ell = ell

    # arithmetic ------------------------------------------------------------
    def _same(self, other: "UqElement") -> None:
        if other.alg is not self.alg or other.ell != self.ell:
            raise ValueError("elements belong to different algebras or scalar rings")

    def _lift_scalar(self, other) -> "UqElement":
        return self.alg.scalar(other, self.ell)

    def __add__(self, other) -> "UqElement":
        if not isinstance(other, UqElement):
            other = self._lift_scalar(other)
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return UqElement(self.alg, out, self.ell)

    __radd__ = __add__

    def __neg__(self) -> "UqElement":
        return UqElement(self.alg, {k: -c for k, c in self.terms.items()}, self.ell)

    def __sub__(self, other) -> "UqElement":
        if not isinstance(other, UqElement):
            other = self._lift_scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "UqElement":
        return (-self) + other

    def scale(self, c) -> "UqElement":
        c = self.alg.ring(self.ell).convert(c)
        if not c:
            return UqElement(self.alg, {}, self.ell)
        return UqElement(self.alg, {k: v * c for k, v in self.terms.items()}, self.ell)

    def __mul__(self, other) -> "UqElement":
        if not isinstance(other, UqElement):
            return self.scale(other)
        self._same(other)
        return UqElement(self.alg, self.alg.mul_terms(self.terms, other.terms, self.ell), self.ell)

    def __rmul__(self, other) -> "UqElement":
        return self.scale(other)

    def __truediv__(self, c) -> "UqElement":
        c = self.alg.ring(self.ell).convert(c)
        return self.scale(c.inverse())

    def __pow__(self, k: int) -> "UqElement":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = self.alg.one(self.ell)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def commutator(self, other: "UqElement") -> "UqElement":
        return self * other - other * self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UqElement):
            return self.alg is other.alg and self.ell == other.ell and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):  # pragma: no cover - elements are mutable-looking containers
        raise TypeError("UqElement is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    # structure ----------------------------------------------------------------
    def weight_of(self, mono: Mono) -> tuple[int, ...]:
        """Q-degree of a monomial in simple-root coordinates."""
        _, f, e = mono
        out = [0] * self.alg.n
        for i in e:
            out[i] += 1
        for i in f:
            out[i] -= 1
        return tuple(out)

    def weights(self) -> set:
        return {self.weight_of(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def component(self, weight: Sequence[int]) -> "UqElement":
        weight = tuple(weight)
        return UqElement(self.alg, {m: c for m, c in self.terms.items() if self.weight_of(m) == weight}, self.ell)

    def specialize(self, ell: int) -> "UqElement":
        """Coefficient-wise image under q^(1/2) -> v~ (a primitive ell-th root of unity)."""
        if self.ell is not None:
            raise ValueError("element is already specialized")
        self.alg.ring(ell)
        out = {}
        for m, c in self.terms.items():
            try:
                s = specialize(c, ell)
            except PoleError as exc:
                raise PoleError(f"coefficient of {_mono_text(m)} has a pole at v~: {exc}") from None
            if s:
                out[m] = s
        return UqElement(self.alg, out, ell)

    def lift(self) -> "UqElement":
        """A generic preimage of a specialized element (residues read as polynomials in q^(1/2))."""
        from ..qcoeff import lift

        if self.ell is None:
            return self
        return UqElement(self.alg, {m: lift(c) for m, c in self.terms.items()}, None)

    def map_coefficients(self, fn, ell: int | None) -> "UqElement":
        self.alg.ring(ell)
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return UqElement(self.alg, out, ell)

    # text --------------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"({self.terms[m]}) * {_mono_text(m)}" for m in sorted(self.terms, key=_sort_key)]
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"UqElement({self.to_text()})"


def _sort_key(m: Mono):
    mu, f, e = m
    return (len(f) + len(e), f, e, mu)


def _mono_text(m: Mono) -> str:
    mu, f, e = m
    return f"K[{','.join(map(str, mu))}] F[{','.join(str(i + 1) for i in f)}] E[{','.join(str(i + 1) for i in e)}]"
