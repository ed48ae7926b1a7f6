"""Homogeneous noncommutative Buchberger completion for the Serre relations.

Words are tuples of node indices.  Words are compared degree-lexicographically
and every rule rewrites its (monic) leading word to a combination of smaller
words of the same length.  The same rule set serves the E-letters and the
F-letters, whose Serre relations have identical shape.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable

from ..qcoeff import ONE, ZERO, LaurentScalar, qnumber
from ..rootdata import CartanDatum

__all__ = ["BoundExceeded", "RewriteSystem", "serre_relations"]

Word = tuple[int, ...]
Poly = dict  # Word -> scalar


class BoundExceeded(ValueError):
    """A word is longer than the degree up to which the rules were completed."""


def _key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def serre_relations(datum: CartanDatum) -> list[Poly]:
    """sum_r (-1)^r [1-a_ij choose r]_i X_i^r X_j X_i^(1-a_ij-r) for i != j."""
    out = []
    for i in datum.nodes:
        for j in datum.nodes:
            if i == j:
                continue
            n = 1 - datum.a(i, j)
            if n == 1 and i > j:
                continue  # the commutator X_i X_j - X_j X_i is listed once
            rel: Poly = {}
            for r in range(n + 1):
                c = qnumber("binom", n, r, eps=datum.eps[i])
                w = (i,) * r + (j,) + (i,) * (n - r)
                rel[w] = -c if r % 2 else c
            out.append(rel)
    return out


def _add_into(target: Poly, w: Word, c) -> None:
    s = target.get(w)
    s = c if s is None else s + c
    if s:
        target[w] = s
    else:
        target.pop(w, None)


class RewriteSystem:
    """Completed rewriting rules for U^+ (equivalently U^-) of a Cartan datum."""

    def __init__(self, datum: CartanDatum, bound: int = 12):
        self.datum = datum
        self.bound = bound
        self.relations = serre_relations(datum)
        self.rules: dict[Word, Poly] = {}
        self._lengths: list[int] = []
        self._complete()
        self._nf_memo: dict[Word, Poly] = {}
        # every overlap of two rules has length < 2 * longest rule; once those all
        # fit under the bound and resolve, the rules are confluent on words of any length
        longest = max(self._lengths, default=1)
        self.globally_complete = 2 * longest - 1 <= bound and not self.check_confluence()

    # reduction used during completion ------------------------------------
    def _find(self, w: Word) -> tuple[int, Word] | None:
        for L in self._lengths:
            for p in range(len(w) - L + 1):
                sub = w[p:p + L]
                if sub in self.rules:
                    return p, sub
        return None

    def _reduce(self, poly: Poly) -> Poly:
        poly = dict(poly)
        out: Poly = {}
        while poly:
            w = max(poly, key=_key)
            c = poly.pop(w)
            hit = self._find(w)
            if hit is None:
                out[w] = c
                continue
            p, lhs = hit
            pre, post = w[:p], w[p + len(lhs):]
            for v, cv in self.rules[lhs].items():
                _add_into(poly, pre + v + post, c * cv)
        return out

    def _add_rule(self, poly: Poly) -> None:
        lead = max(poly, key=_key)
        inv = poly[lead].inverse()
        rhs = {w: -c * inv for w, c in poly.items() if w != lead}
        self.rules[lead] = rhs
        self._lengths = sorted({len(k) for k in self.rules})

    def _overlaps(self, degree: int) -> list[tuple[Word, Word, int]]:
        out = []
        for a in self.rules:
            for b in self.rules:
                for k in range(1, min(len(a), len(b))):
                    if len(a) + len(b) - k == degree and a[-k:] == b[:k]:
                        out.append((a, b, k))
        return out

    def _s_poly(self, a: Word, b: Word, k: int) -> Poly:
        tail, head = b[k:], a[:-k]
        s: Poly = {}
        for v, c in self.rules[a].items():
            _add_into(s, v + tail, c)
        for v, c in self.rules[b].items():
            _add_into(s, head + v, -c)
        return s

    def _complete(self) -> None:
        by_degree = defaultdict(list)
        for rel in self.relations:
            by_degree[len(next(iter(rel)))].append(rel)
        for d in range(1, self.bound + 1):
            cands = by_degree.get(d, []) + [self._s_poly(a, b, k) for a, b, k in self._overlaps(d)]
            for cand in cands:
                red = self._reduce(cand)
                if red:
                    self._add_rule(red)
            for lhs in [w for w in self.rules if len(w) == d]:
                rhs = self.rules.pop(lhs)
                self._lengths = sorted({len(k) for k in self.rules} | {d})
                self.rules[lhs] = self._reduce(rhs)
            self._lengths = sorted({len(k) for k in self.rules})

    # checks ----------------------------------------------------------------
    def check_confluence(self) -> list[str]:
        """Resolve every overlap up to the bound and reduce every defining relation."""
        bad = []
        for d in range(2, self.bound + 1):
            for a, b, k in self._overlaps(d):
                if self._reduce(self._s_poly(a, b, k)):
                    bad.append(f"overlap {a}/{b} at {k} does not resolve")
        for rel in self.relations:
            if self._reduce(rel):
                bad.append(f"relation with leading word {max(rel, key=_key)} does not reduce to 0")
        return bad

    def denominators(self) -> list[LaurentScalar]:
        """Distinct non-trivial denominators appearing in the rules."""
        seen = {}
        for rhs in self.rules.values():
            for c in rhs.values():
                if not c.is_laurent_polynomial():
                    seen[str(c.den)] = c
        return list(seen.values())

    # normal forms ----------------------------------------------------------
    def is_normal(self, w: Word) -> bool:
        return self._find(w) is None

    def normal_form(self, w: Word, convert: Callable | None = None, memo: dict | None = None) -> Poly:
        """Normal form of a word, built by appending one letter at a time.

        Words longer than the bound are accepted only when the rule set is certified
        confluent in every length (``globally_complete``).

        ``convert`` maps rule coefficients into another scalar ring (with its own ``memo``).
        """
        if len(w) > self.bound and not self.globally_complete:
            raise BoundExceeded(f"word of length {len(w)} exceeds the completion bound {self.bound}")
        if memo is None:
            memo, convert = self._nf_memo, None
        hit = memo.get(w)
        if hit is not None:
            return hit
        one = ONE if convert is None else convert(ONE)
        if len(w) <= 1:
            res = {w: one}
        else:
            res = {}
            for u, c in self.normal_form(w[:-1], convert, memo).items():
                for x, cx in self._append(u, w[-1], convert, memo).items():
                    _add_into(res, x, c * cx)
        memo[w] = res
        return res

    def _append(self, u: Word, a: int, convert, memo) -> Poly:
        w = u + (a,)
        for L in self._lengths:
            if L <= len(w) and w[-L:] in self.rules:
                pre = w[:-L]
                out: Poly = {}
                for v, cv in self.rules[w[-L:]].items():
                    cc = cv if convert is None else convert(cv)
                    for x, cx in self.normal_form(pre + v, convert, memo).items():
                        _add_into(out, x, cc * cx)
                return out
        one = ONE if convert is None else convert(ONE)
        return {w: one}

    def describe(self) -> list[str]:
        out = []
        for lhs in sorted(self.rules, key=_key):
            rhs = " + ".join(f"({c})*{list(v)}" for v, c in sorted(self.rules[lhs].items(), key=lambda t: _key(t[0]))) or "0"
            out.append(f"{list(lhs)} -> {rhs}")
        return out


_ = ZERO  # re-exported constant used by callers building polynomials
