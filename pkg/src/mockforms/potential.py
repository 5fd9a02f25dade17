"""Coefficient series of the (2,3,6) orbifold potential: their defining sums,
their closed forms through theta, mu and F, and the completed functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .appell import F_continued_jet, F_jet, R_numeric, mu_jet
from .classical import _order_for, eisenstein, eta_numeric, theta_jet
from .jets import ExpSum, WJet, jet_exp_linear, jet_mul, pole_factor
from .numeric import ComplexVal, check_upper_half_plane
from .qseries import DEFAULT_DENOM, QSeries, qs_eval

D = DEFAULT_DENOM


# -- defining sums ---------------------------------------------------------------

def c_y_def(N: int) -> QSeries:
    """q^(3/16) sum_{n>=0} (-1)^(n+1) (2n+1) q^(n(n+1)/2), below q^N."""
    coeffs = {}
    n = 0
    while (k := D * n * (n + 1) // 2 + 9) < D * N:
        coeffs[k] = (-1) ** (n + 1) * (2 * n + 1)
        n += 1
    return QSeries(coeffs, D * N)


def c_yz2_def(N: int) -> tuple[QSeries, QSeries]:
    """The two pieces of c_yz2 = q^(-1/12) sum_{n>=a>=0} (...), below q^N.

    First piece: (-1)^(n+a) (6n - 2a + 8) q^((n+2)(n+1)/2 - a(a+1)/2); for fixed a
    the exponent increases in n and is >= n + 1.
    Second piece: (2n + 4) q^(n + a n + 1 - a^2) = q^(n + 1 + a (n - a)), also
    increasing in n and >= n + 1.  So n <= N and only exponents <= N matter
    (the prefactor q^(-1/12) keeps exponent N below q^N).
    """
    first: dict[int, int] = {}
    second: dict[int, int] = {}
    for a in range(0, N + 1):
        for n in range(a, N + 1):
            e1 = ((n + 2) * (n + 1) - a * (a + 1)) // 2
            if e1 > N:
                break
            first[e1] = first.get(e1, 0) + (-1) ** (n + a) * (6 * n - 2 * a + 8)
        for n in range(a, N + 1):
            e2 = n + 1 + a * (n - a)
            if e2 > N:
                break
            second[e2] = second.get(e2, 0) + 2 * n + 4
    mk = lambda d: QSeries({D * e - 4: c for e, c in d.items()}, D * N)  # noqa: E731
    return mk(first), mk(second)


def c_yz2_def_total(N: int) -> QSeries:
    """c_yz2 in a single pass over (n, a)."""
    acc: dict[int, int] = {}
    for a in range(0, N + 1):
        for n in range(a, N + 1):
            if n + 1 > N:
                break
            e1 = ((n + 2) * (n + 1) - a * (a + 1)) // 2
            e2 = n + 1 + a * (n - a)
            if e1 <= N:
                acc[e1] = acc.get(e1, 0) + (-1) ** (n + a) * (6 * n - 2 * a + 8)
            if e2 <= N:
                acc[e2] = acc.get(e2, 0) + 2 * n + 4
    return QSeries({D * e - 4: c for e, c in acc.items()}, D * N)


def c_yz4_def(N: int) -> QSeries:
    """q^(-17/48) sum_{a,b>=0, n>=a+b} (-1)^(n+a+b) (6n-2a-2b+7) q^((n+1)(n+2)/2 - a(a+1)/2 - b(b+1)/2).

    With j = n - a - b + 1 >= 1 the exponent is j(j+1)/2 + j(a+b) + a b,
    increasing in j, a and b, and >= 1; terms with exponent <= N are kept.
    """
    acc: dict[int, int] = {}
    a = 0
    while 1 + a <= N:
        b = 0
        while 1 + a + b + a * b <= N:
            j = 1
            while (e := j * (j + 1) // 2 + j * (a + b) + a * b) <= N:
                n = j + a + b - 1
                acc[e] = acc.get(e, 0) + (-1) ** (n + a + b) * (6 * n - 2 * a - 2 * b + 7)
                j += 1
            b += 1
        a += 1
    return QSeries({D * e - 17: c for e, c in acc.items()}, D * N)


# -- closed forms through jets -----------------------------------------------------

def _w1(jet: WJet, what: str) -> QSeries:
    jet.require_holomorphic(what)
    return jet.coeff(1)


def _counterterm(c: int, two_c: int, hi: int) -> WJet:
    """exp(c w) / (1 - exp(2c w)) as a Laurent jet."""
    return jet_mul(jet_exp_linear(c, hi + 3), pole_factor(two_c, hi + 1)).truncate_w(hi)


def theta_mu_derivative(a: int, b: int, N: int) -> QSeries:
    """[w^1] of -theta(b z) mu(a z, b z) + e^(a w/2) / (1 - e^(a w)), poles cancelled."""
    h = 3
    th = theta_jet(b, N + 1, h + 2)
    mu = mu_jet(a, b, N + 1, h)
    if a % 2:
        raise ValueError("the counterterm needs an even multiple a")
    combo = _counterterm(a // 2, a, h) - jet_mul(th, mu)
    return _w1(combo.truncate_q(N), f"-theta({b}z) mu({a}z,{b}z) + counterterm")


def c_yz2_closed(N: int) -> QSeries:
    """q^(1/12) c_yz2 as 1/2 [w^1](-theta(6z) mu(8z,6z) + e^(4w)/(1-e^(8w))) + (1 - E2)/12.

    The E2 term is the first-piece constant -(1 - E2)/12 plus the second piece (1 - E2)/6.
    """
    d = theta_mu_derivative(8, 6, N)
    return (d.scale(Fraction(1, 2)) + (1 - eisenstein(2, N)).scale(Fraction(1, 12))).truncate(N)


def c_yz2_first_closed(N: int) -> QSeries:
    """q^(1/12) c_yz2,1 as [w^1](-theta(3z) mu(4z,3z) + e^(2w)/(1-e^(4w))) - (1 - E2)/12.

    The divisor-sum part of the first piece contributes -sum sigma_1(n) q^n = (E2 - 1)/24
    from each of z and -z.
    """
    d = theta_mu_derivative(4, 3, N)
    return (d - (1 - eisenstein(2, N)).scale(Fraction(1, 12))).truncate(N)


def c_yz2_first_alt(N: int) -> QSeries:
    """q^(1/12) c_yz2,1 as -[w^1] sum_{j != 0} (-1)^j e^((3j+2)w) q^(j(j+1)/2) / (1 - e^(4w) q^j) - (1 - E2)/12.

    j > 0 expands geometrically (exponents j(j+1)/2 + j m); j = -p < 0 uses
    1/(1 - x q^-p) = -sum_{m>=1} x^-m q^(p m) (exponents p(p-1)/2 + p m).
    """
    acc = ExpSum()
    j = 1
    while j * (j - 1) // 2 + j < N:
        sign = -1 if j % 2 else 1
        m = 0
        while (e := j * (j + 1) // 2 + j * m) < N:
            acc.add(3 * j + 2 + 4 * m, D * e, sign)
            m += 1
        m = 1
        while (e := j * (j - 1) // 2 + j * m) < N:
            acc.add(-3 * j + 2 - 4 * m, D * e, -sign)
            m += 1
        j += 1
    d = acc.to_jet(1, D * N).coeff(1)
    return (-d - (1 - eisenstein(2, N)).scale(Fraction(1, 12))).truncate(N)


def c_yz2_second_closed(N: int) -> QSeries:
    """(q^(-1/12)/6) (1 - E2)."""
    return (1 - eisenstein(2, N)).scale(Fraction(1, 6)).shift(Fraction(-1, 12)).truncate(N)


def c_yz2_auxiliary(N: int) -> QSeries:
    """q^(1/12) c_yz2 as -3 sum_{n != 0} (-1)^n n q^(n(n+1)/2) / (1 - q^n) + (1 - E2)/4.

    Differentiating the alternative first-piece formula gives
    -3 S - 4 sum (-1)^n q^(n(n+3)/2)/(1-q^n)^2 - (1 - E2)/12 with the E2 Appell
    identity turning the middle sum into (1 - E2)/6; the second piece adds (1 - E2)/6.
    For n = -p the summand is rewritten as (-1)^p p q^(p(p+1)/2) / (1 - q^p).
    """
    acc: dict[int, Fraction] = {}

    def add_geometric(e: int, step: int, coeff: Fraction):
        while e < N:
            acc[e] = acc.get(e, 0) + coeff
            e += step

    for p in range(1, N + 1):
        # n = p: q^(p(p+1)/2) / (1 - q^p)
        add_geometric(p * (p + 1) // 2, p, -3 * (-1) ** p * p)
        # n = -p after the rewrite
        add_geometric(p * (p + 1) // 2, p, -3 * (-1) ** p * p)
    s = QSeries({D * e: c for e, c in acc.items()}, D * N)
    return (s + (1 - eisenstein(2, N)).scale(Fraction(1, 4))).truncate(N)


# q^(-11/48): f(z) - f(-z) for the generating function of c_yz4 equals -q^(1/8) F(3z, 2z, 2z)
C_YZ4_PREFACTOR = Fraction(-11, 48)


def c_yz4_closed(N: int, route: str = "mu") -> QSeries:
    """c_yz4 = -q^(-11/48) [w^1] F(3z, 2z, 2z).

    route "mu": F through its continuation i theta mu^2 - eta^3 theta(4z)/theta(2z)^2 mu(3z,4z);
    route "F": the two-cone sum directly.
    """
    if route == "mu":
        jet = F_continued_jet(3, 2, 2, N + 1, 1)
    elif route == "F":
        jet = F_jet(3, 2, 2, N + 1, 1)
    else:
        raise ValueError(f"unknown route {route!r}")
    return (-_w1(jet, "F(3z,2z,2z)")).shift(C_YZ4_PREFACTOR).truncate(N)


# -- completions ---------------------------------------------------------------------

@lru_cache(maxsize=16)
def _c_yz2_scaled(N: int) -> QSeries:
    return c_yz2_closed(N)


@lru_cache(maxsize=16)
def _c_yz4_scaled(N: int) -> QSeries:
    # q^(11/48) c_yz4
    return c_yz4_closed(N).shift(Fraction(11, 48))


def _numeric_order(tau: complex) -> int:
    # rounded up to a multiple of 8 so nearby sample points share cached series
    n = _order_for(tau.imag)
    return -(-n // 8) * 8


def chat_yz2_numeric(tau) -> ComplexVal:
    """q^(1/12) c_yz2 - 1/4 + (3/2) eta^3 R(0), modular of weight 2.

    Adding any multiple of E2 would reintroduce its quasimodular anomaly.
    """
    tau = check_upper_half_plane(tau)
    c = qs_eval(_c_yz2_scaled(_numeric_order(tau)), tau)
    e3 = eta_numeric(tau) ** 3
    return c - 0.25 + e3 * R_numeric(0, tau) * 1.5


def chat_yz4_numeric(tau) -> ComplexVal:
    """q^(11/48) c_yz4 + R(0) (1/4 - q^(1/12) c_yz2) - (3/4) R(0)^2 eta^3, modular of weight 5/2."""
    tau = check_upper_half_plane(tau)
    n = _numeric_order(tau)
    c4 = qs_eval(_c_yz4_scaled(n), tau)
    c2 = qs_eval(_c_yz2_scaled(n), tau)
    r = R_numeric(0, tau)
    e3 = eta_numeric(tau) ** 3
    return c4 + r * (0.25 - c2) - r * r * e3 * 0.75


def xi2_chat_yz2_expected(tau) -> complex:
    """-(3/sqrt 2) v^(3/2) |eta|^6, the image predicted from xi_(1/2) R(0) = -sqrt 2 eta^3."""
    tau = check_upper_half_plane(tau)
    return -3 / math.sqrt(2) * tau.imag ** 1.5 * abs(eta_numeric(tau).value) ** 6


# -- the potential -----------------------------------------------------------------

EXTERNAL = "external"
MONOMIALS = ("x^2", "xyz", "y^3", "z^6", "y^2z^2", "yz^4")


@dataclass(frozen=True)
class PotentialTable:
    """Coefficient series of the potential by monomial; z^6 is not computed here."""

    order: int
    entries: dict

    def __getitem__(self, label: str):
        return self.entries[label]

    def series(self):
        return {k: v for k, v in self.entries.items() if v != EXTERNAL}


def w_coefficients(N: int) -> PotentialTable:
    c1, c2 = c_yz2_def(N)
    entries = {
        "x^2": QSeries.monomial(Fraction(1, 8), 1),
        "xyz": QSeries.monomial(Fraction(1, 48), -1),
        "y^3": c_y_def(N),
        "z^6": EXTERNAL,
        "y^2z^2": c1 + c2,
        "yz^4": c_yz4_def(N),
    }
    return PotentialTable(N, entries)


def check_integral(s: QSeries) -> bool:
    """All coefficients are rational integers."""
    return all(c.im == 0 and c.re.denominator == 1 for _, c in s.items())


__all__ = [
    "c_y_def", "c_yz2_def", "c_yz2_def_total", "c_yz4_def", "c_yz2_closed", "c_yz2_first_closed",
    "c_yz2_first_alt", "c_yz2_second_closed", "c_yz2_auxiliary", "c_yz4_closed", "chat_yz2_numeric",
    "chat_yz4_numeric", "xi2_chat_yz2_expected", "PotentialTable", "w_coefficients", "EXTERNAL",
]
