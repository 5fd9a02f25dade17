"""Eta, Eisenstein series and the Jacobi theta function, exactly (q-series and
w-jets) and numerically, together with their transformation data."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError
from .gaussian import I, GaussianRational
from .jets import ExpSum, WJet, jet_exp, jet_inv, jet_mul, pole_factor
from .numeric import EPS, ComplexVal, check_upper_half_plane
from .qseries import DEFAULT_DENOM, QSeries, qs_eval

D = DEFAULT_DENOM


# -- Bernoulli numbers ------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{j<=n} C(n+1, j) B_j = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    s = sum(math.comb(n + 1, j) * bernoulli(j) for j in range(n))
    return -s / (n + 1)


# -- exact q-series ----------------------------------------------------------------

@lru_cache(maxsize=32)
def _euler_product(n_terms: int) -> tuple[int, ...]:
    """Integer coefficients of prod_{n>=1} (1 - q^n) below q^n_terms."""
    a = [0] * n_terms
    a[0] = 1
    for n in range(1, n_terms):
        for i in range(n_terms - 1, n - 1, -1):
            a[i] -= a[i - n]
    return tuple(a)


def eta(N: int) -> QSeries:
    """q^(1/24) prod (1 - q^n), known for exponents below N."""
    if N < 1:
        raise ValueError("order must be >= 1")
    coeffs = {D * i + 2: c for i, c in enumerate(_euler_product(N)) if c}
    return QSeries(coeffs, D * N)


def eta_cubed(N: int) -> QSeries:
    e = eta(N)
    return (e * e * e).truncate(N)


def _sigma_table(k: int, N: int) -> list[int]:
    s = [0] * N
    for d in range(1, N):
        p = d ** k
        for m in range(d, N, d):
            s[m] += p
    return s


@lru_cache(maxsize=32)
def eisenstein(k: int, N: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for exponents below N."""
    if k < 2 or k % 2:
        raise ValueError(f"Eisenstein series need an even weight k >= 2, got {k}")
    if N < 1:
        raise ValueError("order must be >= 1")
    factor = -Fraction(2 * k) / bernoulli(k)
    sig = _sigma_table(k - 1, N)
    coeffs = {0: 1}
    for n in range(1, N):
        coeffs[D * n] = factor * sig[n]
    return QSeries(coeffs, D * N)


# -- numeric --------------------------------------------------------------------

def _order_for(v: float, digits: float = 40.0) -> int:
    """q-order whose first omitted term is below exp(-digits)."""
    return max(8, math.ceil(digits / (2 * math.pi * v)) + 4)


def eisenstein_numeric(k: int, tau) -> ComplexVal:
    tau = check_upper_half_plane(tau)
    return qs_eval(eisenstein(k, _order_for(tau.imag)), tau)


def e2_completed_numeric(tau) -> ComplexVal:
    """E_2(tau) - 3/(pi v)."""
    tau = check_upper_half_plane(tau)
    return eisenstein_numeric(2, tau) - 3.0 / (math.pi * tau.imag)


def eta_numeric(tau) -> ComplexVal:
    """Pentagonal-number sum sum_n (-1)^n q^((6n-1)^2/24) with a tail bound."""
    tau = check_upper_half_plane(tau)
    v = tau.imag
    M = math.ceil(math.sqrt(24 * 40 / (2 * math.pi * v)) / 6) + 2
    n = np.arange(-M, M + 1)
    ex = (6 * n - 1) ** 2 / 24.0
    terms = np.where(n % 2 == 0, 1.0, -1.0) * np.exp(2j * math.pi * tau * ex)
    value = complex(terms.sum())
    r = math.exp(-2 * math.pi * v)
    first = min((6 * (M + 1) - 1) ** 2, (6 * (M + 1) + 1) ** 2) / 24.0
    tail = 2 * r ** first / (1 - r)
    return ComplexVal(value, tail + 8 * EPS * float(np.abs(terms).sum()))


def theta_numeric(z, tau) -> ComplexVal:
    """sum over n in 1/2 + Z of q^(n^2/2) exp(2 pi i n (z + 1/2)).

    Terms are Gaussian in n around n0 = -Im z / Im tau with peak size
    exp(pi y^2 / v).  Summing |n - n0| <= K with pi v K^2 >= 40 leaves a tail
    below 2 exp(pi y^2/v - pi v K^2) / (1 - exp(-2 pi v K)).
    """
    tau = check_upper_half_plane(tau)
    z = complex(z)
    v, y = tau.imag, z.imag
    n0 = -y / v
    K = math.sqrt(40.0 / (math.pi * v)) + 1.0
    m = np.arange(math.floor(n0 - K - 0.5), math.ceil(n0 + K - 0.5) + 1)
    n = m + 0.5
    terms = np.exp(1j * math.pi * n * n * tau + 2j * math.pi * n * (z + 0.5))
    value = complex(terms.sum())
    peak = math.pi * y * y / v
    tail = 2 * math.exp(peak - math.pi * v * K * K) / (1 - math.exp(-2 * math.pi * v * K))
    return ComplexVal(value, tail + 8 * EPS * float(np.abs(terms).sum()))


def theta_triple_product_numeric(z, tau) -> ComplexVal:
    """-i q^(1/8) zeta^(-1/2) prod (1-q^n)(1-zeta q^(n-1))(1-zeta^-1 q^n)."""
    tau = check_upper_half_plane(tau)
    z = complex(z)
    v, y = tau.imag, z.imag
    r = math.exp(-2 * math.pi * v)
    az = math.exp(-2 * math.pi * y)  # |zeta|
    M = math.ceil((2 * math.pi * abs(y) + 45.0) / (2 * math.pi * v)) + 2
    q = cmath.exp(2j * math.pi * tau)
    zeta = cmath.exp(2j * math.pi * z)
    n = np.arange(1, M + 1)
    qn = q ** n
    factors = (1 - qn) * (1 - zeta * qn / q) * (1 - qn / zeta)
    prod = complex(np.prod(factors))
    value = -1j * cmath.exp(2j * math.pi * tau / 8) * cmath.exp(-1j * math.pi * z) * prod
    S = (r ** (M + 1) + az * r ** M + r ** (M + 1) / az) / (1 - r)
    err = abs(value) * math.expm1(S) + 8 * EPS * abs(value) * M
    return ComplexVal(value, err)


# -- exact w-jets --------------------------------------------------------------------

def _half_integers(N: int):
    """m with n = m + 1/2 and n^2/2 < N."""
    M = math.isqrt(2 * N) + 2
    for m in range(-M - 1, M + 1):
        n = Fraction(2 * m + 1, 2)
        if n * n / 2 < N:
            yield m, n


def theta_jet(a: int, N: int, whi: int) -> WJet:
    """Jet of theta(a z) in w = 2 pi i z: sum of i(-1)^m q^(n^2/2) exp(a n w).

    Odd in w, so the window starts at w^1; coefficients are known below q^N.
    """
    if a == 0:
        raise ValueError("theta(0) vanishes identically in z")
    if whi < 1:
        raise ValueError("whi must be >= 1")
    acc = ExpSum()
    for m, n in _half_integers(N):
        acc.add(a * n, int(24 * n * n), I if m % 2 == 0 else -I)
    jet = acc.to_jet(whi, D * N)
    if not jet.coeffs[0].is_zero():
        raise ConsistencyError("theta jet has a nonzero constant term")
    return WJet(1, jet.coeffs[1:])


def theta_product_jet(a: int, N: int, whi: int) -> WJet:
    """Jet of theta(a z) from the Jacobi triple product (independent of the sum form)."""
    from .jets import jet_exp_linear

    trunc = D * N
    hi = whi + 1
    one = QSeries.one()
    # n = 1 factor (1 - zeta) carries the zero at w = 0
    jet = WJet.constant(one, hi) - jet_exp_linear(a, hi + 1)
    jet = jet_mul(jet_exp_linear(Fraction(-a, 2), hi + 2), jet)
    prod_q = QSeries.one()
    for n in range(1, N):
        prod_q = prod_q * QSeries({0: 1, D * n: -1}, None)
        prod_q = prod_q.truncate(N)
    for n in range(1, N):
        pos = jet_exp_linear(a, hi + 1) * QSeries.monomial(n, 1, trunc)
        neg = jet_exp_linear(-a, hi + 1) * QSeries.monomial(n, 1, trunc)
        jet = jet_mul(jet, WJet.constant(QSeries.one(), hi + 1) - pos)
        jet = jet_mul(jet, WJet.constant(QSeries.one(), hi + 1) - neg)
        jet = jet.truncate_q(N)
    jet = jet * prod_q.shift(Fraction(1, 8)).scale(-I)
    jet = jet.truncate_q(N).truncate_w(whi)
    return jet


def eta3_over_theta_inverse(a: int, N: int, whi: int) -> WJet:
    """eta^3 * (theta(a z))^-1 via jet inversion."""
    th = theta_jet(a, N + 1, whi + 2)
    return (jet_inv(th) * eta_cubed(N + 1)).truncate_q(N).truncate_w(whi)


def eta3_over_theta_partial_fractions(a: int, N: int, whi: int) -> WJet:
    """i zeta^(1/2) sum_n (-1)^n q^(n(n+1)/2) / (1 - zeta q^n) with zeta = exp(a w)."""
    acc = ExpSum()
    half = Fraction(a, 2)
    for n in range(1, N + 1):
        base = n * (n + 1) // 2
        if base >= N:
            break
        sign = -1 if n % 2 else 1
        # n > 0: geometric series in zeta q^n
        m = 0
        while base + n * m < N:
            acc.add(half + a * m, D * (base + n * m), sign)
            m += 1
        # -n < 0: 1/(1 - zeta q^-n) = -sum_{m>=1} zeta^-m q^(n m)
        nb = n * (n - 1) // 2  # exponent of q^(k(k+1)/2) at k = -n
        m = 1
        while nb + n * m < N:
            acc.add(half - a * m, D * (nb + n * m), -sign)
            m += 1
    regular = acc.to_jet(whi, D * N)
    singular = jet_mul(_exp_jet(half, whi + 2), pole_factor(a, whi + 1))
    total = (regular + singular.truncate_w(whi))
    return total * I


def _exp_jet(c, hi: int) -> WJet:
    from .jets import jet_exp_linear

    return jet_exp_linear(c, hi + 1)


def eta3_over_theta_exp_form(a: int, N: int, whi: int) -> WJet:
    """-(i/a) w^-1 exp(sum_n -B_2n E_2n (a w)^2n / (2n (2n)!))."""
    hi = whi + 1
    coeffs = [QSeries.zero()] * (hi + 1)
    for n in range(1, hi // 2 + 1):
        c = -bernoulli(2 * n) * Fraction(a) ** (2 * n) / (2 * n * math.factorial(2 * n))
        coeffs[2 * n] = eisenstein(2 * n, N).scale(c)
    ex = jet_exp(WJet(0, coeffs))
    scaled = ex * GaussianRational(0, Fraction(-1, a))
    return WJet(-1, scaled.coeffs).truncate_q(N).truncate_w(whi)


def eta3_over_theta_jet(a: int, N: int, whi: int) -> WJet:
    """Jet of eta^3/theta(a z) from w^-1 to w^whi, cross-checked three ways.

    Raises ConsistencyError when the inverse-jet, partial-fraction and
    exp-form constructions disagree anywhere in the retained window.
    """
    j1 = eta3_over_theta_inverse(a, N, whi)
    j2 = eta3_over_theta_partial_fractions(a, N, whi)
    j3 = eta3_over_theta_exp_form(a, N, whi)
    for name, other in (("partial fractions", j2), ("exp form", j3)):
        diff = j1.first_difference(other, N)
        if diff is not None or other.lo != j1.lo or other.hi < whi or j1.hi < whi:
            raise ConsistencyError(f"eta^3/theta({a}z): inverse jet and {name} disagree at {diff}")
    return j1


# -- the E2 Appell-Lerch identity ---------------------------------------------------

def e2_appell_lhs(N: int) -> QSeries:
    """2 sum_{n != 0} (-1)^n q^(n(n+3)/2) / (1 - q^n)^2, below q^N."""
    acc: dict[int, int] = {}
    for n in range(1, N + 2):
        sign = -1 if n % 2 else 1
        # n > 0: sum_m (m+1) q^(n(n+3)/2 + n m)
        e0 = n * (n + 3) // 2
        m = 0
        while e0 + n * m < N:
            acc[e0 + n * m] = acc.get(e0 + n * m, 0) + 2 * sign * (m + 1)
            m += 1
        # -n: q^(n(n-3)/2) / (1 - q^-n)^2 = q^(n(n-3)/2 + 2n) / (1 - q^n)^2
        e1 = n * (n - 3) // 2 + 2 * n
        m = 0
        while e1 + n * m < N:
            acc[e1 + n * m] = acc.get(e1 + n * m, 0) + 2 * sign * (m + 1)
            m += 1
    return QSeries({D * k: c for k, c in acc.items()}, D * N)


def e2_appell_rhs(N: int) -> QSeries:
    return (eisenstein(2, N) - 1).scale(Fraction(1, 12))


def e2_appell_check(N: int):
    from .report import CheckSpec, IdentityReport, check_qseries_equal

    spec = CheckSpec("e2_appell", "exact", order=N)
    if N <= 0:
        return IdentityReport(spec, "pass", {"note": "vacuous (order 0)"})
    return check_qseries_equal(e2_appell_lhs(N), e2_appell_rhs(N), N, spec)


# -- transformation data ------------------------------------------------------------

@dataclass(frozen=True)
class FormDescriptor:
    """Transformation data on the generators S and T.

    Under S: f(z/tau; -1/tau) = s_phase * (-i tau)^weight * e(index * z^2 / tau) * f(z; tau)
    (e(x) = exp(2 pi i x); index is 0 for pure modular objects).
    Under T: f(z; tau + 1) = t_phase * f(z; tau).
    """

    name: str
    weight: Fraction
    s_phase: complex
    t_phase: complex
    index: Fraction = Fraction(0)

    def s_factor(self, tau: complex, z: complex = 0j) -> complex:
        k = float(self.weight)
        out = self.s_phase * cmath.exp(k * cmath.log(-1j * tau))
        if self.index:
            out *= cmath.exp(2j * math.pi * float(self.index) * z * z / tau)
        return out


def _root(k: int, n: int) -> complex:
    return cmath.exp(2j * math.pi * k / n)


ETA = FormDescriptor("Eta", Fraction(1, 2), 1, _root(1, 24))
ETA3 = FormDescriptor("Eta3", Fraction(3, 2), 1, _root(1, 8))
E2HAT = FormDescriptor("E2Hat", Fraction(2), -1, 1)


def ek_descriptor(k: int) -> FormDescriptor:
    if k < 4 or k % 2:
        raise ValueError("E_k is modular only for even k >= 4")
    return FormDescriptor(f"E{k}", Fraction(k), 1j ** k, 1)


def theta_descriptor(a: int = 1) -> FormDescriptor:
    """theta(a z): weight 1/2, index a^2/2, S-phase nu_eta^3(S) / e^{-i pi/4} = -i."""
    return FormDescriptor(f"Theta({a})", Fraction(1, 2), -1j, _root(1, 8), Fraction(a * a, 2))


def eta3_over_theta_descriptor(a: int = 1) -> FormDescriptor:
    return FormDescriptor(f"EtaCubedOverTheta({a})", Fraction(1), 1j, 1, Fraction(-a * a, 2))


DESCRIPTORS = {d.name: d for d in (ETA, ETA3, E2HAT, ek_descriptor(4), ek_descriptor(6),
                                   theta_descriptor(1), eta3_over_theta_descriptor(1))}
