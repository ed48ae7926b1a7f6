"""Exact scalars: rational functions in s = q^(1/2) and cyclotomic residues.

``LaurentScalar`` stores ``s**shift * num / den`` with ``num, den`` in Z[s],
neither divisible by ``s``, coprime in Z[s] and ``den`` with positive leading
coefficient, so structural equality is value equality.

``CyclotomicScalar`` is an element of Q[x]/Phi_l(x); the class of ``x`` plays
the role of the fixed primitive l-th root of unity v~ = q^(1/2), and ``v`` is
its square.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from flint import fmpq, fmpq_poly, fmpz_poly

__all__ = [
    "PoleError",
    "LaurentScalar",
    "CyclotomicScalar",
    "qnumber",
    "specialize",
    "specialize_at_one",
    "lift",
    "divide_at_root",
    "divide_at_one",
    "verify_unity_identities",
    "phi",
]


class PoleError(ZeroDivisionError):
    """A denominator vanished at the specialization point."""


_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])


def _strip_s(p: fmpz_poly) -> tuple[fmpz_poly, int]:
    coeffs = p.coeffs()
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    if k == 0:
        return p, 0
    return fmpz_poly(coeffs[k:]), k


class LaurentScalar:
    """Element of Q(s) with s = q^(1/2), kept in canonical reduced form."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num: fmpz_poly, den: fmpz_poly = _ONE, shift: int = 0, *, _canonical: bool = False):
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
            self._hash = None
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den, self.shift = _ZERO, _ONE, 0
            self._hash = None
            return
        num, a = _strip_s(num)
        den, b = _strip_s(den)
        shift += a - b
        if den != _ONE:
            g = num.gcd(den)
            if g != _ONE:
                num = num // g
                den = den // g
            if den.coeffs()[-1] < 0:
                num, den = -num, -den
        self.num, self.den, self.shift = num, den, shift
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def from_int(cls, n: int | Fraction) -> "LaurentScalar":
        if isinstance(n, Fraction):
            return cls(fmpz_poly([n.numerator]), fmpz_poly([n.denominator]))
        if n == 0:
            return ZERO
        return cls(fmpz_poly([n]), _ONE, 0, _canonical=True)

    @classmethod
    def s_power(cls, k: int, coeff: int = 1) -> "LaurentScalar":
        """``coeff * s**k``, i.e. ``coeff * q**(k/2)``."""
        if coeff == 0:
            return ZERO
        return cls(fmpz_poly([coeff]), _ONE, k, _canonical=True)

    @classmethod
    def q_power(cls, k: int | Fraction, coeff: int = 1) -> "LaurentScalar":
        k2 = 2 * Fraction(k)
        if k2.denominator != 1:
            raise ValueError("q-exponent must lie in (1/2)Z")
        return cls.s_power(int(k2), coeff)

    @classmethod
    def from_poly(cls, coeffs: dict[int, int]) -> "LaurentScalar":
        """Laurent polynomial from ``{s-exponent: integer coefficient}``."""
        coeffs = {k: c for k, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        arr = [0] * (max(coeffs) - lo + 1)
        for k, c in coeffs.items():
            arr[k - lo] = c
        return cls(fmpz_poly(arr), _ONE, lo)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent_polynomial(self) -> bool:
        return self.den == _ONE

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shift, tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x: object) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentScalar.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentScalar")

    def __add__(self, other: object) -> "LaurentScalar":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        e = min(self.shift, o.shift)
        n1 = self.num if self.shift == e else self.num * fmpz_poly([0] * (self.shift - e) + [1])
        n2 = o.num if o.shift == e else o.num * fmpz_poly([0] * (o.shift - e) + [1])
        if self.den == o.den:
            if self.den == _ONE:
                num = n1 + n2
                if num.is_zero():
                    return ZERO
                num, a = _strip_s(num)
                return LaurentScalar(num, _ONE, e + a, _canonical=True)
            return LaurentScalar(n1 + n2, self.den, e)
        return LaurentScalar(n1 * o.den + n2 * self.den, self.den * o.den, e)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        if self.num.is_zero():
            return self
        return LaurentScalar(-self.num, self.den, self.shift, _canonical=True)

    def __sub__(self, other: object) -> "LaurentScalar":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "LaurentScalar":
        return self._coerce(other) + (-self)

    def __mul__(self, other: object) -> "LaurentScalar":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        if self.den == _ONE and o.den == _ONE:
            return LaurentScalar(self.num * o.num, _ONE, self.shift + o.shift, _canonical=True)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        g = n1.gcd(d2)
        if g != _ONE:
            n1, d2 = n1 // g, d2 // g
        g = n2.gcd(d1)
        if g != _ONE:
            n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        if den.coeffs()[-1] < 0:
            num, den = -num, -den
        return LaurentScalar(num, den, self.shift + o.shift, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den.coeffs()[-1] < 0:
            num, den = -num, -den
        return LaurentScalar(num, den, -self.shift, _canonical=True)

    def __truediv__(self, other: object) -> "LaurentScalar":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "LaurentScalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "LaurentScalar":
        if k < 0:
            return self.inverse() ** (-k)
        if self.den == _ONE:
            return LaurentScalar(self.num ** k, _ONE, self.shift * k, _canonical=True)
        return LaurentScalar(self.num ** k, self.den ** k, self.shift * k, _canonical=True)

    # evaluation ---------------------------------------------------------
    def at_one(self) -> Fraction:
        """Value at q^(1/2) = 1 (PoleError if undefined)."""
        d = int(self.den(1))
        if d == 0:
            raise PoleError(f"{self} has a pole at q = 1")
        return Fraction(int(self.num(1)), d)

    def bar(self) -> "LaurentScalar":
        """The involution s -> s^-1."""
        if self.num.is_zero():
            return self
        n, d = self.num.coeffs(), self.den.coeffs()
        shift = -self.shift - (len(n) - 1) + (len(d) - 1)
        return LaurentScalar(fmpz_poly(n[::-1]), fmpz_poly(d[::-1]), shift)

    # text form ----------------------------------------------------------
    @staticmethod
    def _poly_text(p: fmpz_poly, shift: int) -> str:
        terms = []
        for k, c in enumerate(p.coeffs()):
            c = int(c)
            if c == 0:
                continue
            e = k + shift
            mono = "" if e == 0 else f"q^({e}/2)"
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        if self.den == _ONE:
            return self._poly_text(self.num, self.shift)
        return f"({self._poly_text(self.num, self.shift)})/({self._poly_text(self.den, 0)})"

    def __repr__(self) -> str:
        return f"LaurentScalar({self})"

    _TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(q\^\((-?\d+)/2\))?")

    @classmethod
    def _parse_poly(cls, text: str) -> "LaurentScalar":
        text = text.strip()
        if text == "0":
            return ZERO
        coeffs: dict[int, int] = {}
        pos = 0
        text = text.replace(" ", "")
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse scalar text {text!r}")
            sign, digits, mono, exp = m.groups()
            if not digits and not mono:
                raise ValueError(f"cannot parse scalar text {text!r}")
            c = int(digits) if digits else 1
            if sign == "-":
                c = -c
            e = int(exp) if exp else 0
            coeffs[e] = coeffs.get(e, 0) + c
            pos = m.end()
        return cls.from_poly(coeffs)

    @classmethod
    def parse(cls, text: str) -> "LaurentScalar":
        """Inverse of ``str``."""
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
        if m:
            return cls._parse_poly(m.group(1)) / cls._parse_poly(m.group(2))
        return cls._parse_poly(text)


ZERO = LaurentScalar(_ZERO, _ONE, 0, _canonical=True)
ONE = LaurentScalar(_ONE, _ONE, 0, _canonical=True)


# --------------------------------------------------------------------------
# cyclotomic residues


@lru_cache(maxsize=None)
def phi(ell: int) -> fmpq_poly:
    """The cyclotomic polynomial Phi_ell over Q."""
    return fmpq_poly(fmpz_poly.cyclotomic(ell))


@lru_cache(maxsize=None)
def _phi_z(ell: int) -> fmpz_poly:
    return fmpz_poly.cyclotomic(ell)


class CyclotomicScalar:
    """Residue class in Q[x]/Phi_ell(x)."""

    __slots__ = ("ell", "residue", "_hash")

    def __init__(self, ell: int, residue: fmpq_poly | list | int | Fraction):
        if ell < 1 or ell % 2 == 0:
            raise ValueError(f"modulus must be odd and positive, got {ell}")
        if not isinstance(residue, fmpq_poly):
            if isinstance(residue, (int, Fraction)):
                residue = [residue]
            residue = fmpq_poly([fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in residue])
        self.ell = ell
        self.residue = residue % phi(ell)
        self._hash = None

    @classmethod
    def root(cls, ell: int, power: int = 1) -> "CyclotomicScalar":
        """``v~**power`` where v~ is the class of x."""
        power %= ell
        return cls(ell, fmpq_poly([0] * power + [1]))

    def is_zero(self) -> bool:
        return self.residue.is_zero()

    def __bool__(self) -> bool:
        return not self.residue.is_zero()

    def coefficients(self) -> list[Fraction]:
        n = _phi_z(self.ell).degree()
        cs = [Fraction(int(c.p), int(c.q)) for c in self.residue.coeffs()]
        return cs + [Fraction(0)] * (n - len(cs))

    def _coerce(self, x: object) -> "CyclotomicScalar":
        if isinstance(x, CyclotomicScalar):
            if x.ell != self.ell:
                raise ValueError("mismatched cyclotomic moduli")
            return x
        if isinstance(x, (int, Fraction)):
            return CyclotomicScalar(self.ell, x)
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicScalar(self.ell, other)
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.ell == other.ell and self.residue == other.residue

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ell, tuple(self.coefficients())))
        return self._hash

    def __add__(self, other: object) -> "CyclotomicScalar":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicScalar(self.ell, self.residue + o.residue)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicScalar":
        return CyclotomicScalar(self.ell, -self.residue)

    def __sub__(self, other: object) -> "CyclotomicScalar":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicScalar(self.ell, self.residue - o.residue)

    def __rsub__(self, other: object) -> "CyclotomicScalar":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "CyclotomicScalar":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicScalar(self.ell, self.residue * o.residue)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicScalar":
        if self.residue.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        g, a, _ = self.residue.xgcd(phi(self.ell))
        # g is a nonzero constant because Phi_ell is irreducible
        return CyclotomicScalar(self.ell, a / g)

    def __truediv__(self, other: object) -> "CyclotomicScalar":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: object) -> "CyclotomicScalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CyclotomicScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicScalar(self.ell, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_json(self) -> dict:
        return {"ell": self.ell, "coeffs": [str(c) for c in self.coefficients()]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicScalar":
        return cls(int(data["ell"]), [Fraction(c) for c in data["coeffs"]])

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients()):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            elif mono:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(str(c))
        return (" + ".join(terms) or "0").replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CyclotomicScalar(ell={self.ell}, {self})"


Scalar = Union[LaurentScalar, CyclotomicScalar]


# --------------------------------------------------------------------------
# quantum numbers


@lru_cache(maxsize=None)
def _qint(n: int, eps: int) -> LaurentScalar:
    if n == 0:
        return ZERO
    sign = 1 if n > 0 else -1
    n = abs(n)
    return LaurentScalar.from_poly({2 * eps * (n - 1 - 2 * k): sign for k in range(n)})


@lru_cache(maxsize=None)
def _qfact(n: int, eps: int) -> LaurentScalar:
    out = ONE
    for r in range(1, n + 1):
        out = out * _qint(r, eps)
    return out


def qnumber(kind: str, *args: int, eps: int = 1) -> LaurentScalar:
    """Quantum integers, factorials, double factorials and binomials in q_i = q^eps.

    Args:
        kind: one of ``"int"``, ``"fact"``, ``"dfact"``, ``"binom"``.
        *args: ``n`` for the first three kinds, ``(m, r)`` for ``"binom"``.
        eps: the symmetrizer of the node (``q_i = q**eps``).

    Raises:
        ValueError: negative factorial argument or unknown kind.
    """
    if kind == "int":
        (n,) = args
        return _qint(n, eps)
    if kind == "fact":
        (n,) = args
        if n < 0:
            raise ValueError("quantum factorial of a negative integer")
        return _qfact(n, eps)
    if kind == "dfact":
        (m,) = args
        if m < 0:
            raise ValueError("quantum double factorial of a negative integer")
        out = ONE
        for r in range((m + 1) // 2):
            out = out * _qint(m - 2 * r, eps)
        return out
    if kind == "binom":
        m, r = args
        if r < 0:
            return ZERO
        num = ONE
        for t in range(1, r + 1):
            num = num * _qint(m - t + 1, eps)
        return num / _qfact(r, eps)
    raise ValueError(f"unknown quantum number kind {kind!r}")


# --------------------------------------------------------------------------
# specialization


def _eval_poly(p: fmpz_poly, ell: int) -> fmpq_poly:
    return fmpq_poly(p % _phi_z(ell))


def specialize(x: LaurentScalar | int, ell: int) -> CyclotomicScalar:
    """Image of ``x`` under s -> v~ in Q(zeta_ell).

    Raises:
        PoleError: the denominator of ``x`` vanishes at v~.
    """
    if ell % 2 == 0 or ell < 1:
        raise ValueError(f"ell must be odd and positive, got {ell}")
    if not isinstance(x, LaurentScalar):
        x = LaurentScalar.from_int(x)
    if x.num.is_zero():
        return CyclotomicScalar(ell, 0)
    num = _eval_poly(x.num, ell)
    out = CyclotomicScalar(ell, num * fmpq_poly([0] * (x.shift % ell) + [1]))
    if x.den != _ONE:
        den = CyclotomicScalar(ell, _eval_poly(x.den, ell))
        if den.is_zero():
            raise PoleError(f"{x} has a pole at a primitive {ell}-th root of unity")
        out = out / den
    return out


def specialize_at_one(x: LaurentScalar | int) -> Fraction:
    if not isinstance(x, LaurentScalar):
        return Fraction(x)
    return x.at_one()


def lift(c: CyclotomicScalar) -> LaurentScalar:
    """A preimage of ``c`` under ``specialize``: the residue read as a polynomial in s."""
    cs = c.coefficients()
    den = 1
    for f in cs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in cs]
    return LaurentScalar(fmpz_poly(ints), fmpz_poly([den]))


def _derivative_at_root(x: LaurentScalar, ell: int) -> CyclotomicScalar:
    """d/ds of x at s = v~, assuming x(v~) = 0."""
    n = x.num
    sh = fmpq_poly([0] * (x.shift % ell) + [1])
    dval = CyclotomicScalar(ell, _eval_poly(x.den, ell))
    if dval.is_zero():
        raise PoleError(f"{x} has a pole at a primitive {ell}-th root of unity")
    # numerator vanishes at v~, so only the derivative of num survives
    return CyclotomicScalar(ell, _eval_poly(n.derivative(), ell) * sh) / dval


def divide_at_root(x: LaurentScalar, ell: int) -> CyclotomicScalar:
    """Value at s = v~ of ``x / (q v^-1 - 1)`` where v = v~^2.

    Requires ``x(v~) = 0``; the quotient is then ``x'(v~) v~ / 2``.

    Raises:
        PoleError: ``x`` does not vanish at v~ (or has a pole there).
    """
    if x.is_zero():
        return CyclotomicScalar(ell, 0)
    if not specialize(x, ell).is_zero():
        raise PoleError(f"{x} does not vanish at v~; quotient has a pole")
    return _derivative_at_root(x, ell) * CyclotomicScalar.root(ell, 1) / 2


def divide_at_one(x: LaurentScalar) -> Fraction:
    """Value at s = 1 of ``x / (2 (s - 1))``."""
    if x.is_zero():
        return Fraction(0)
    if x.at_one() != 0:
        raise PoleError(f"{x} does not vanish at q = 1; quotient has a pole")
    d = int(x.den(1))
    if d == 0:
        raise PoleError(f"{x} has a pole at q = 1")
    return Fraction(int(x.num.derivative()(1)), d) / 2


# --------------------------------------------------------------------------
# root-of-unity identities


def verify_unity_identities(ell: int) -> dict[str, dict]:
    """Check three exact identities in Q(zeta_ell).

    ``sum``: sum_{r=1}^{ell-1} (-1)^r v^r / ((v - v^-1)^ell [r]! [ell-r]!) = (1 - ell)/(2 ell),
    each summand formed at generic q and then specialized.
    ``factorial``: (v - v^-1)^(ell-1) [ell-1]! = ell.
    ``binomial``: the q-binomial (2 ell choose ell) at q = v equals 2.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError("ell must be odd and at least 3")
    q = LaurentScalar.q_power(1)
    qq = q - q.inverse()
    total = CyclotomicScalar(ell, 0)
    for r in range(1, ell):
        term = LaurentScalar.q_power(r, (-1) ** r) / (qq ** ell * _qfact(r, 1) * _qfact(ell - r, 1))
        total = total + specialize(term, ell)
    expect_a = Fraction(1 - ell, 2 * ell)
    val_b = specialize(qq ** (ell - 1) * _qfact(ell - 1, 1), ell)
    val_c = specialize(qnumber("binom", 2 * ell, ell), ell)
    report = {}
    for name, val, expect in (("sum", total, expect_a), ("factorial", val_b, ell), ("binomial", val_c, 2)):
        report[name] = {"value": str(val), "expected": str(expect), "pass": val == expect}
    return report
