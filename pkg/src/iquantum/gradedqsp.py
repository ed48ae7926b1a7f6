"""The associated graded iquantum group as a localized twisted polynomial algebra.

Generator order is ``y_1..y_N`` (the B_beta), ``x_1..x_M`` (the E_gamma),
``t_1..t_r`` (K of an integral basis of P^theta); the t's are inverted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rootdata import Weight
from .satake import (
    AdaptedWord,
    SatakeDiagram,
    adapted_word,
    in_p_imath,
    invariants,
    p_imath_basis,
    p_theta_basis,
)
from .snf import image_size_mod, kernel_mod, mat_vec, subgroup_size_mod
from .twistedpoly import SkewForm, TwistedElement, degree

__all__ = [
    "GradedPresentation",
    "KernelCertificate",
    "LeadingTerm",
    "build_S",
    "x_nu",
    "verify_kernel_lemma",
    "lmm_identities",
    "graded_degree",
    "graded_center_generators",
    "kl_leading_term",
]


def _sgn(k: int) -> int:
    return (k > 0) - (k < 0)


@dataclass(frozen=True)
class GradedPresentation:
    diagram: SatakeDiagram
    word: AdaptedWord
    A: tuple[tuple[int, ...], ...]
    A_prime: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]
    B_prime: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    omega0: tuple[Weight, ...]

    @property
    def N(self) -> int:
        return len(self.A)

    @property
    def M(self) -> int:
        return len(self.A_prime)

    @property
    def r(self) -> int:
        return len(self.omega0)

    @property
    def J(self) -> tuple[int, ...]:
        return tuple(range(self.N + self.M, self.N + self.M + self.r))

    @property
    def form(self) -> SkewForm:
        return SkewForm(self.S, self.J)

    def generator_names(self) -> list[str]:
        return ([f"B[{t + 1}]" for t in range(self.N)] + [f"E[{t + 1}]" for t in range(self.M)]
                + [f"K[w0_{s + 1}]" for s in range(self.r)])

    def theta_coordinates(self, lam: Weight) -> tuple[int, ...]:
        """Coordinates of lam in P^theta with respect to omega0; raises if lam is not in the lattice."""
        return _solve_in_basis(self.omega0, lam)

    def to_dict(self) -> dict:
        return {
            "word": self.word.to_dict(),
            "S": [list(r) for r in self.S],
            "J": [j + 1 for j in self.J],
            "omega0": [[str(x) for x in w] for w in self.omega0],
            "generators": self.generator_names(),
        }


def _solve_in_basis(basis: Sequence[Weight], lam: Weight) -> tuple[int, ...]:
    r = len(basis)
    if r == 0:
        if any(lam):
            raise ValueError(f"{lam} is not in P^theta")
        return ()
    n = len(lam)
    rows = [[Fraction(basis[s][k]) for s in range(r)] + [Fraction(lam[k])] for k in range(n)]
    piv_cols = []
    row = 0
    for c in range(r):
        p = next((i for i in range(row, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[row], rows[p] = rows[p], rows[row]
        inv = 1 / rows[row][c]
        rows[row] = [x * inv for x in rows[row]]
        for i in range(n):
            if i != row and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        piv_cols.append(c)
        row += 1
    if any(rows[i][r] for i in range(row, n)):
        raise ValueError(f"{lam} is not in the span of P^theta")
    sol = [Fraction(0)] * r
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][r]
    if any(x.denominator != 1 for x in sol):
        raise ValueError(f"{lam} is not in the lattice P^theta")
    return tuple(int(x) for x in sol)


def build_S(d: SatakeDiagram, word: AdaptedWord | None = None) -> GradedPresentation:
    datum = d.datum
    aw = word or adapted_word(d)
    betas, gammas = aw.betas, aw.gammas
    N, M = len(betas), len(gammas)
    A = [[_sgn(j - i) * datum.root_inner(betas[i], betas[j]) for j in range(N)] for i in range(N)]
    Ap = [[_sgn(j - i) * datum.root_inner(gammas[i], gammas[j]) for j in range(M)] for i in range(M)]
    omega0 = tuple(p_theta_basis(d))
    r = len(omega0)

    def pair(w: Weight, b) -> int:
        x = datum.weight_root_inner(w, b)
        assert x.denominator == 1
        return int(x)

    B = [[-pair(w, b) for b in betas] for w in omega0]
    Bp = [[-pair(w, g) for g in gammas] for w in omega0]
    n = N + M + r
    S = [[0] * n for _ in range(n)]
    for i in range(N):
        for j in range(N):
            S[i][j] = A[i][j]
        for s in range(r):
            S[i][N + M + s] = -B[s][i]
            S[N + M + s][i] = B[s][i]
    for i in range(M):
        for j in range(M):
            S[N + i][N + j] = Ap[i][j]
        for s in range(r):
            S[N + i][N + M + s] = Bp[s][i]
            S[N + M + s][N + i] = -Bp[s][i]
    assert all(S[i][j] == -S[j][i] for i in range(n) for j in range(n)), "S is not skew-symmetric"
    tup = lambda m: tuple(tuple(row) for row in m)  # noqa: E731
    return GradedPresentation(d, aw, tup(A), tup(Ap), tup(B), tup(Bp), tup(S), omega0)


# ---------------------------------------------------------------------------
# the vectors x(nu)


def c_vector(pres: GradedPresentation, mu: Weight) -> list[int]:
    """c_k(mu) = <alpha_{i_k}^vee, mu> along the whole adapted word."""
    return [_as_int(mu[i]) for i in pres.word.word]


def c_prime_vector(pres: GradedPresentation, mu: Weight) -> list[int]:
    return [_as_int(mu[j]) for j in pres.word.j_prime]


def _as_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"non-integral pairing {x}")
    return int(x)


def x_nu(pres: GradedPresentation, nu: Sequence) -> tuple[int, ...]:
    d = pres.diagram
    datum = d.datum
    nu = tuple(Fraction(x) for x in nu)
    if not in_p_imath(d, nu):
        raise ValueError(f"{nu} is not in P^imath")
    w0 = datum.w0
    wb = d.w_bullet
    u = c_vector(pres, nu)
    up = c_prime_vector(pres, tuple(-x for x in wb.act(nu)))
    lam = tuple(a + b for a, b in zip(nu, w0.act(nu)))
    return tuple(u + up + list(pres.theta_coordinates(lam)))


def lmm_identities(pres: GradedPresentation) -> list[dict]:
    """The three integral identities behind the kernel computation, per fundamental weight.

    Checked in the form ``A c(mu) + ((1+w0)mu, beta_t)_t = 0``,
    ``A' c'(mu) + ((1+w_bullet)mu, gamma_t)_t = 0``, ``sum c_t beta_t = (1-w0)mu``
    and ``sum c'_t gamma_t = (1-w_bullet)mu``; these are the signs for which
    ``S x(nu) = 0`` holds with S assembled as above.
    """
    d = pres.diagram
    datum = d.datum
    w0, wb = datum.w0, d.w_bullet
    out = []
    for i in datum.nodes:
        mu = datum.omega(i)
        c = c_vector(pres, mu)
        cp = c_prime_vector(pres, mu)
        p0 = tuple(a + b for a, b in zip(mu, w0.act(mu)))
        pb = tuple(a + b for a, b in zip(mu, wb.act(mu)))
        r1 = [a + datum.weight_root_inner(p0, b) for a, b in zip(mat_vec([list(r) for r in pres.A], c), pres.word.betas)]
        r2 = [a + datum.weight_root_inner(pb, g)
              for a, g in zip(mat_vec([list(r) for r in pres.A_prime], cp), pres.word.gammas)]
        s1 = tuple(sum(ck * b[k] for ck, b in zip(c, pres.word.betas)) for k in datum.nodes)
        s2 = tuple(sum(ck * g[k] for ck, g in zip(cp, pres.word.gammas)) for k in datum.nodes)
        m1 = datum.weight_to_root(tuple(a - b for a, b in zip(mu, w0.act(mu))))
        m2 = datum.weight_to_root(tuple(a - b for a, b in zip(mu, wb.act(mu))))
        out.append({
            "mu": f"omega_{i + 1}",
            "M": all(x == 0 for x in r1),
            "M_prime": all(x == 0 for x in r2),
            "B_tilde": tuple(Fraction(x) for x in s1) == m1,
            "B_tilde_prime": tuple(Fraction(x) for x in s2) == m2,
        })
    return out


@dataclass
class KernelCertificate:
    ell: int
    kernel_basis: list[list[int]]
    witnesses: list[tuple[int, ...]]
    image_size: int
    expected_image_size: int
    checks: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "kernel_basis": self.kernel_basis,
            "witnesses": [list(w) for w in self.witnesses],
            "image_size": self.image_size,
            "expected_image_size": self.expected_image_size,
            "checks": self.checks,
            "failures": self.failures,
            "pass": self.passed,
        }


def _check_ell(d: SatakeDiagram, ell: int) -> None:
    if ell < 1 or ell % 2 == 0:
        raise ValueError(f"ell = {ell} must be odd and positive")
    if any(e % p == 0 for e in d.datum.eps for p in _primes(ell)):
        raise ValueError(f"ell = {ell} is not coprime to the root lengths {d.datum.eps}")


def _primes(n: int) -> list[int]:
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


def verify_kernel_lemma(pres: GradedPresentation, ell: int) -> KernelCertificate:
    d = pres.diagram
    _check_ell(d, ell)
    S = [list(r) for r in pres.S]
    n = len(S)
    inv = invariants(d)
    xs = [x_nu(pres, nu) for nu in p_imath_basis(d)]
    failures = []
    for k, x in enumerate(xs):
        sx = mat_vec(S, x)
        if any(v % ell for v in sx):
            failures.append(f"S x(nu_{k + 1}) = {sx} is not 0 mod {ell} (x = {list(x)})")
    exact = all(not any(mat_vec(S, x)) for x in xs)
    image = image_size_mod(S, ell) if n else 1
    span = subgroup_size_mod(xs, ell) if xs and n else 1
    # |X / (span + ell X)| = ell^n / span must equal |X / ker| = |image|
    if ell ** n != image * span:
        failures.append(f"span of x(nu) has index {ell ** n // span}, kernel has index {image}")
    expected = ell ** (2 * inv.N0)
    if image != expected:
        failures.append(f"image size {image} != ell^(2 N0) = {expected}")
    lmm = lmm_identities(pres)
    for row in lmm:
        for key in ("M", "M_prime", "B_tilde", "B_tilde_prime"):
            if not row[key]:
                failures.append(f"integral identity {key} fails for {row['mu']}")
    basis = kernel_mod(S, ell) if n else []
    return KernelCertificate(
        ell=ell,
        kernel_basis=basis,
        witnesses=xs,
        image_size=image,
        expected_image_size=expected,
        checks={"S_x_exactly_zero": exact, "span_size_mod_ell": span, "lmm": lmm},
        failures=failures,
    )


def graded_degree(pres: GradedPresentation, ell: int) -> int:
    _check_ell(pres.diagram, ell)
    deg = degree(pres.form, ell)
    expected = ell ** invariants(pres.diagram).N0
    if deg != expected:
        raise AssertionError(f"degree {deg} differs from ell^N0 = {expected}")
    return deg


@dataclass(frozen=True)
class CenterGenerator:
    label: str
    exponent: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"label": self.label, "exponent": list(self.exponent)}


def graded_center_generators(pres: GradedPresentation, ell: int, verify: bool = True) -> list[CenterGenerator]:
    """The monomials x(nu_i) plus the ell-th powers of all generators, checked central."""
    d = pres.diagram
    datum = d.datum
    w0 = datum.w0
    out = []
    N, M, r = pres.N, pres.M, pres.r
    for k, nu in enumerate(p_imath_basis(d)):
        # exponents read off the product formula, independent of x_nu
        b_exp = [_as_int(nu[i]) for i in pres.word.word]
        e_exp = [_as_int(x) for x in (lambda m: [m[j] for j in pres.word.j_word])(tuple(-x for x in w0.act(nu)))]
        k_exp = list(pres.theta_coordinates(tuple(a + b for a, b in zip(nu, w0.act(nu)))))
        expo = tuple(b_exp + e_exp + k_exp)
        assert expo == x_nu(pres, nu), "product-formula exponents differ from x(nu)"
        out.append(CenterGenerator(f"nu_{k + 1}", expo))
    n = N + M + r
    names = pres.generator_names()
    for g in range(n):
        out.append(CenterGenerator(f"{names[g]}^{ell}", tuple(ell * int(t == g) for t in range(n))))
    if verify:
        form = pres.form
        gens = [TwistedElement.generator(form, g, ell=ell) for g in range(n)]
        for c in out:
            z = TwistedElement.monomial(form, c.exponent, ell=ell)
            for g in gens:
                if not z.commutes_with(g):
                    raise AssertionError(f"{c.label} does not commute with a generator")
    return out


@dataclass(frozen=True)
class LeadingTerm:
    K: Weight  # weight of the K factor
    B_exponents: tuple[int, ...]
    E_exponents: tuple[int, ...]
    weight: tuple[Fraction, ...]  # alpha-coordinates
    scalar: str = "c_nu in +-q^(Z/D)"

    def to_dict(self) -> dict:
        return {
            "K": [str(x) for x in self.K],
            "B": list(self.B_exponents),
            "E": list(self.E_exponents),
            "weight": [str(x) for x in self.weight],
            "scalar": self.scalar,
        }


def kl_leading_term(d: SatakeDiagram, word: AdaptedWord | None, nu: Sequence) -> LeadingTerm:
    datum = d.datum
    aw = word or adapted_word(d)
    nu = tuple(Fraction(x) for x in nu)
    if not in_p_imath(d, nu) or any(x < 0 for x in nu):
        raise ValueError(f"{nu} is not a dominant element of P^imath")
    w0, wb = datum.w0, d.w_bullet
    w0nu = w0.act(nu)
    K = tuple(-(a + b) for a, b in zip(nu, w0nu))
    b_exp = tuple(_as_int(-w0nu[i]) for i in aw.word)
    e_exp = tuple(_as_int(nu[j]) for j in aw.j_word)
    wt = [Fraction(0)] * datum.rank
    for e, beta in zip(b_exp, aw.betas):
        for k in datum.nodes:
            wt[k] -= e * beta[k]
    for e, g in zip(e_exp, aw.gammas):
        for k in datum.nodes:
            wt[k] += e * g[k]
    target = datum.weight_to_root(tuple(a - b for a, b in zip(w0nu, wb.act(nu))))
    if tuple(wt) != target:
        raise AssertionError(f"leading term weight {wt} differs from w0 nu - w_bullet nu = {target}")
    return LeadingTerm(K, b_exp, e_exp, tuple(wt))
