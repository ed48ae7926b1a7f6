from __future__ import annotations

import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from iquantum.qcoeff import LaurentScalar

settings.register_profile("default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SLOW = os.environ.get("IQUANTUM_SLOW") == "1"
slow = pytest.mark.skipif(not SLOW, reason="set IQUANTUM_SLOW=1 to run")


def value_at(x: LaurentScalar, s: Fraction | int) -> Fraction:
    """x evaluated at q^(1/2) = s, by plain rational arithmetic."""
    s = Fraction(s)
    num = sum((Fraction(int(c)) * s ** k for k, c in enumerate(x.num.coeffs())), Fraction(0))
    den = sum((Fraction(int(c)) * s ** k for k, c in enumerate(x.den.coeffs())), Fraction(0))
    return num * s ** x.shift / den


def gf_value(x: LaurentScalar, p: int, z: int) -> int:
    """x evaluated in GF(p) at q^(1/2) = z."""
    num = sum(int(c) * pow(z, k, p) for k, c in enumerate(x.num.coeffs())) % p
    den = sum(int(c) * pow(z, k, p) for k, c in enumerate(x.den.coeffs())) % p
    zs = pow(z, x.shift % (p - 1), p)
    return num * zs * pow(den, p - 2, p) % p


def gf_residue(c, p: int, z: int) -> int:
    """A cyclotomic residue (coefficients in powers of v~) evaluated in GF(p) at v~ = z."""
    total = 0
    for k, f in enumerate(c.coefficients()):
        total += f.numerator * pow(f.denominator, p - 2, p) * pow(z, k, p)
    return total % p


def small_prime_root(ell: int) -> tuple[int, int]:
    """Smallest prime p > 1000, p = 1 mod ell, with an element z of exact order ell (brute force)."""
    p = 1001
    while True:
        if p % ell == 1 and all(p % d for d in range(2, int(p ** 0.5) + 1)):
            for g in range(2, p):
                z = pow(g, (p - 1) // ell, p)
                if z != 1 and all(pow(z, ell // d, p) != 1 for d in range(2, ell + 1) if ell % d == 0 and d > 1):
                    return p, z
        p += 1


@st.composite
def laurent_polys(draw, max_terms: int = 4, max_exp: int = 6, max_coeff: int = 5):
    n = draw(st.integers(0, max_terms))
    coeffs = {}
    for _ in range(n):
        e = draw(st.integers(-max_exp, max_exp))
        coeffs[e] = coeffs.get(e, 0) + draw(st.integers(-max_coeff, max_coeff))
    return LaurentScalar.from_poly(coeffs)


@st.composite
def nonzero_laurent(draw, **kw):
    x = draw(laurent_polys(**kw))
    if x.is_zero():
        x = LaurentScalar.from_int(draw(st.integers(1, 4)))
    return x
