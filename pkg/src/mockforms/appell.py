"""The Appell-Lerch function mu, its completion via R, the shadow operator, and
the degenerate indefinite theta function F of signature (1,2).

Exact routines work on w-jets at specialized arguments (a z, b z, ...);
numeric routines take independent complex arguments and return ComplexVal.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.special import erfcx

from .classical import eta_cubed, eta_numeric, theta_jet, theta_numeric
from .errors import DivergentTailError, DomainError
from .gaussian import I
from .jets import ExpSum, WJet, jet_exp_linear, jet_inv, jet_mul, pole_factor
from .numeric import EPS, ComplexVal, check_off_lattice, check_upper_half_plane
from .qseries import DEFAULT_DENOM

D = DEFAULT_DENOM


# -- exact jets ----------------------------------------------------------------------

def appell_sum_jet(a: int, b: int, N: int, whi: int) -> WJet:
    """sum_n (-1)^n e^(b n w) q^(n(n+1)/2) / (1 - e^(a w) q^n) to w^whi, below q^N.

    n = 0 gives the Laurent factor 1/(1 - e^(aw)).  For n > 0 the geometric
    series gives exponents n(n+1)/2 + n m (m >= 0).  For n = -p < 0 we use
    1/(1 - x q^-p) = -sum_{m>=1} x^-m q^(p m), giving exponents
    p(p-1)/2 + p m (m >= 1).  Both are increasing in m and in p, so the loops
    stop at the first exponent >= N.
    """
    if a == 0:
        raise DomainError("the Appell-Lerch sum needs a nonzero multiple a")
    acc = ExpSum()
    p = 1
    while p * (p - 1) // 2 + p < N or p * (p + 1) // 2 < N:
        sign = -1 if p % 2 else 1
        e0 = p * (p + 1) // 2
        m = 0
        while e0 + p * m < N:
            acc.add(b * p + a * m, D * (e0 + p * m), sign)
            m += 1
        e1 = p * (p - 1) // 2
        m = 1
        while e1 + p * m < N:
            acc.add(-b * p - a * m, D * (e1 + p * m), -sign)
            m += 1
        p += 1
    return acc.to_jet(whi, D * N) + pole_factor(a, whi)


def mu_jet(a: int, b: int, N: int, whi: int) -> WJet:
    """Jet of mu(a z, b z) from w^-2 to w^whi, coefficients known below q^N."""
    if a == 0 or b == 0:
        raise DomainError(f"mu(az, bz) needs a, b nonzero (got a={a}, b={b}); mu has a pole at 0 in each slot")
    h = whi + 1
    n_int = N + 1
    s = appell_sum_jet(a, b, n_int, h)
    s = jet_mul(jet_exp_linear(Fraction(a, 2), h + 2), s)
    inv = jet_inv(theta_jet(b, n_int, h + 2))
    return jet_mul(s, inv).truncate_q(N).truncate_w(whi)


def indef_exponent(k: int, l: int, m: int) -> int:
    """k(k+1)/2 + k l + k m + l m, the quadratic form of F."""
    return k * (k + 1) // 2 + k * l + k * m + l * m


def F_terms(N: int):
    """Yield (k, l, m) on both cones with indef_exponent(k, l, m) <= N.

    Cone 1 (k >= 1, l, m >= 0): the form is >= k(k+1)/2 and increases in l
    (slope k + m >= 1) and in m (slope k + l >= 1).
    Cone 2 (k = -K, l = -L, m = -M with K >= 0, L, M >= 1): the form equals
    K(K-1)/2 + K L + K M + L M, increasing in each of K, L, M.
    """
    k = 1
    while k * (k + 1) // 2 <= N:
        l = 0
        while indef_exponent(k, l, 0) <= N:
            m = 0
            while (Q := indef_exponent(k, l, m)) <= N:
                yield k, l, m
                m += 1
            l += 1
        k += 1
    K = 0
    while indef_exponent(-K, -1, -1) <= N:
        L = 1
        while indef_exponent(-K, -L, -1) <= N:
            M = 1
            while indef_exponent(-K, -L, -M) <= N:
                yield -K, -L, -M
                M += 1
            L += 1
        K += 1


def F_jet(a: int, b: int, c: int, N: int, whi: int) -> WJet:
    """Jet of F(a z, b z, c z) = q^(-1/8) e^((-a+b+c)w/2) sum (-1)^k q^Q e^((ak+bl+cm)w).

    Holomorphic (window starts at w^0); coefficients known below q^N.
    """
    if whi < 0:
        raise ValueError("whi must be >= 0")
    acc = ExpSum()
    shift = Fraction(-a + b + c, 2)
    for k, l, m in F_terms(N):
        acc.add(shift + a * k + b * l + c * m, D * indef_exponent(k, l, m) - D // 8, -1 if k % 2 else 1)
    return acc.to_jet(whi, D * N)


def F_continued_jet(a: int, b: int, c: int, N: int, whi: int) -> WJet:
    """Jet of i theta(az) mu(az,bz) mu(az,cz) - eta^3 theta((b+c)z)/(theta(bz) theta(cz)) mu(az,(b+c)z).

    Each term has a w^-3 pole; the sum must be holomorphic, which is enforced.
    """
    if b + c == 0:
        raise DomainError("b + c must be nonzero")
    h = whi + 4
    n_int = N + 1
    mu_b = mu_jet(a, b, n_int, h)
    mu_c = mu_b if c == b else mu_jet(a, c, n_int, h)
    term1 = jet_mul(theta_jet(a, n_int, h), jet_mul(mu_b, mu_c)) * I
    inv_b = jet_inv(theta_jet(b, n_int, h + 2))
    inv_c = inv_b if c == b else jet_inv(theta_jet(c, n_int, h + 2))
    quot = jet_mul(theta_jet(b + c, n_int, h) * eta_cubed(n_int), jet_mul(inv_b, inv_c))
    term2 = jet_mul(quot, mu_jet(a, b + c, n_int, h))
    total = (term1 - term2).truncate_q(N)
    total.require_holomorphic(f"continued F({a}z,{b}z,{c}z)")
    if total.hi < whi:
        raise AssertionError("internal window margin too small")
    return WJet(0, [total.coeff(k) for k in range(0, whi + 1)])


# -- numeric: shared tail machinery ----------------------------------------------

def _tail_after(last: float, ratio: float, what: str) -> float:
    """Bound for sum_{j>=1} last * ratio^j."""
    if not ratio < 1.0:
        raise DivergentTailError(f"{what}: tail ratio {ratio:.3g} is not < 1")
    return last * ratio / (1.0 - ratio)


def _inv_one_minus_bound(logabs: float) -> float:
    """Upper bound for 1/|1 - x| given log|x| (requires |x| != 1)."""
    ax = math.exp(logabs) if logabs < 700 else math.inf
    gap = abs(1.0 - ax)
    if gap == 0.0:
        raise DomainError("denominator on the unit circle")
    return 1.0 / gap


# -- numeric mu, R, mu-hat ---------------------------------------------------------

def _appell_sum_numeric(z1: complex, z2: complex, tau: complex) -> ComplexVal:
    """sum_n (-zeta2)^n q^(n(n+1)/2) / (1 - zeta1 q^n) with n < 0 rewritten."""
    v = tau.imag
    y1, y2 = z1.imag, z2.imag
    two_pi_i = 2j * math.pi

    def term(n: int) -> complex:
        base = 1j * math.pi * n * (n + 1) * tau + n * (two_pi_i * z2 + 1j * math.pi)
        if n >= 0:
            return cmath.exp(base) / (1 - cmath.exp(two_pi_i * (z1 + n * tau)))
        x = cmath.exp(-two_pi_i * (z1 + n * tau))
        return -cmath.exp(base - two_pi_i * (z1 + n * tau)) / (1 - x)

    def logmag_num(n: int) -> float:
        # log of |numerator| (after the n < 0 rewrite)
        val = -math.pi * v * n * (n + 1) - 2 * math.pi * n * y2
        if n < 0:
            val += 2 * math.pi * (y1 + n * v)
        return val

    def logx(n: int) -> float:
        # log|x| of the geometric variable in the denominator 1 - x
        return -2 * math.pi * (y1 + n * v) if n >= 0 else 2 * math.pi * (y1 + n * v)

    # the numerators are Gaussian in n centered near -y2/v - 1/2
    centre = -y2 / v
    width = math.sqrt(45.0 / (math.pi * v)) + 2
    hi = max(1, math.ceil(centre + width), math.ceil(-y1 / v) + 2)
    lo = min(-1, math.floor(centre - width), math.floor(-y1 / v) - 2)
    terms = [term(n) for n in range(lo, hi + 1)]
    total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    scale = sum(abs(t) for t in terms)
    err = 8 * EPS * scale
    for edge, step in ((hi, 1), (lo, -1)):
        n1 = edge + step
        last = math.exp(logmag_num(n1)) * _inv_one_minus_bound(logx(n1))
        ax = math.exp(logx(n1))
        ratio = math.exp(logmag_num(n1 + step) - logmag_num(n1)) * (1 + ax) / (1 - ax)
        err += last + _tail_after(last, ratio, "Appell-Lerch sum")
    return ComplexVal(total, err)


def mu_numeric(z1, z2, tau) -> ComplexVal:
    """mu(z1, z2; tau) = zeta1^(1/2)/theta(z2) * sum_n (-zeta2)^n q^(n(n+1)/2)/(1 - zeta1 q^n)."""
    tau = check_upper_half_plane(tau)
    z1, z2 = complex(z1), complex(z2)
    check_off_lattice(z1, tau, "z1")
    check_off_lattice(z2, tau, "z2")
    s = _appell_sum_numeric(z1, z2, tau)
    return s * cmath.exp(1j * math.pi * z1) / theta_numeric(z2, tau)


def R_numeric(z, tau) -> ComplexVal:
    """R(z; tau) = sum_{n in 1/2+Z} (sgn n - E((n + y/v) sqrt(2v))) (-1)^(n-1/2) q^(-n^2/2) zeta^(-n).

    With E(x) = erf(sqrt(pi) x) for real x we have
    sgn(n) - E(x) = sgn(n) erfc(sgn(n) sqrt(pi) x), and erfc(t) = erfcx(t) e^(-t^2)
    absorbs the growth of q^(-n^2/2): each term has modulus
    erfcx(t) exp(-pi v n^2 - 2 pi n y - 2 pi y^2/v).  Since erfcx <= 1 for
    t >= 0, terms with sgn(n)(n + y/v) >= 0 are bounded by
    exp(-pi v (n + y/v)^2 - pi y^2/v), which gives the Gaussian tail bound.
    """
    tau = check_upper_half_plane(tau)
    z = complex(z)
    u, v = tau.real, tau.imag
    x, y = z.real, z.imag
    n0 = -y / v
    K = math.sqrt(45.0 / (math.pi * v)) + 1.0
    m = np.arange(math.floor(n0 - K - 0.5), math.ceil(n0 + K - 0.5) + 1)
    n = m + 0.5
    sg = np.sign(n)
    t = sg * math.sqrt(math.pi) * (n + y / v) * math.sqrt(2 * v)
    mag = erfcx(t) * np.exp(-math.pi * v * n * n - 2 * math.pi * n * y - 2 * math.pi * y * y / v)
    phase = np.exp(-1j * math.pi * n * n * u - 2j * math.pi * n * x) * np.where(m % 2 == 0, 1.0, -1.0)
    terms = sg * mag * phase
    value = complex(terms.sum())
    tail = 2 * math.exp(-math.pi * y * y / v - math.pi * v * K * K) / (1 - math.exp(-2 * math.pi * v * K))
    return ComplexVal(value, tail + 16 * EPS * float(np.abs(terms).sum()))


def mu_hat_numeric(z1, z2, tau) -> ComplexVal:
    """mu(z1, z2) + (i/2) R(z1 - z2)."""
    return mu_numeric(z1, z2, tau) + R_numeric(complex(z1) - complex(z2), tau) * 0.5j


# -- numeric F ------------------------------------------------------------------

def in_theorem_region(z2, z3, tau) -> bool:
    v = complex(tau).imag
    return 0 < complex(z2).imag < v and 0 < complex(z3).imag < v


def _cone_rows(lq, l1, l2, l3, k_of, l_of, head, log_ratio, sign: float, G: float):
    """Sum sign * (-1)^k q^(k(k+1)/2 + k l) zeta1^k zeta2^l / (1 - zeta3 q^(k+l)) over one cone.

    Rows r = 0, 1, ... have k = k_of(r) and l = l_of(r, j), j = 0, 1, ...; every
    term of row r is bounded by G * exp(head(r) + j * log_ratio(r)), where
    head is a concave quadratic in r and log_ratio(r) < 0 decreases in r.
    Returns (values, tail bound).
    """
    chunks = []
    err = 0.0
    top = -math.inf
    r = 0
    digits = math.log(1e18)
    while True:
        h, lr = head(r), log_ratio(r)
        if not lr < 0:
            raise DivergentTailError("indefinite theta row does not decay")
        top = max(top, h)
        n_l = max(1, math.ceil((h - top + digits - math.log1p(-math.exp(lr))) / -lr))
        k = float(k_of(r))
        ls = np.array([l_of(r, j) for j in range(n_l)], dtype=float)
        expo = (k * (k + 1) / 2 + k * ls) * lq + k * (l1 + 1j * math.pi) + ls * l2
        chunks.append(sign * np.exp(expo) / (1 - np.exp(l3 + (k + ls) * lq)))
        err += G * math.exp(h + n_l * lr) / -math.expm1(lr)
        h1, h2 = head(r + 1), head(r + 2)
        if h1 < top - math.log(1e19) and h2 < h1:
            rho = math.exp(h2 - h1)
            err += G * math.exp(h1) / (1 - rho) / -math.expm1(log_ratio(r + 1))
            return chunks, err
        r += 1
        if r > 100000:
            raise DivergentTailError("indefinite theta rows do not converge")


def f_L_numeric(z1, z2, z3, tau) -> ComplexVal:
    """q^(-1/8) zeta1^(-1/2) zeta2^(1/2) zeta3^(1/2)
    * sum_{k,l} rho(k-1, l) (-1)^k q^(k(k+1)/2 + k l) zeta1^k zeta2^l / (1 - zeta3 q^(k+l)).

    This is F after summing the m-direction as a geometric series.  It
    converges for 0 < Im z2 < Im tau and is meromorphic in z3, so it can be
    evaluated at z3 + tau as well.

    Tail bounds, with s = k + l and x_s = zeta3 q^s:
    cone 1 (k >= 1, l >= 0, weight +1): 1/|1 - x_s| <= G1 := sup_{s>=1} 1/|1 - x_s|;
    the l-ratio is exp(-2 pi (k v + y2)).
    cone 2 (k = -K <= 0, l = -L <= -1, weight -1): 1/|1 - x_-s| <= G2 |q|^s with
    G2 := sup_{s>=1} |q|^-s / |1 - x_-s|; the l-ratio is exp(-2 pi ((K+1) v - y2)).
    Both sups are attained for s near |y3|/v; past that the sequences are monotone.
    """
    tau = check_upper_half_plane(tau)
    z1, z2, z3 = complex(z1), complex(z2), complex(z3)
    v = tau.imag
    y1, y2, y3 = z1.imag, z2.imag, z3.imag
    if not 0 < y2 < v:
        raise DomainError(f"f_L needs 0 < Im z2 < Im tau (Im z2 = {y2}, Im tau = {v})")
    tp = 2 * math.pi
    lq, l1, l2, l3 = tp * 1j * tau, tp * 1j * z1, tp * 1j * z2, tp * 1j * z3
    s_far = 3 + math.ceil(abs(y3) / v)
    for s in range(-s_far, s_far + 1):
        if s:
            check_off_lattice(z3 + s * tau, tau, "z3 + (k+l) tau")
    G1 = max([_inv_one_minus_bound(-tp * (y3 + s * v)) for s in range(1, s_far + 1)]
             + [1.0 / -math.expm1(-tp * (y3 + s_far * v))])
    G2 = max([math.exp(tp * s * v) * _inv_one_minus_bound(tp * (s * v - y3)) for s in range(1, s_far + 1)]
             + [math.exp(tp * y3) / -math.expm1(-tp * (s_far * v - y3))])

    c1, e1 = _cone_rows(
        lq, l1, l2, l3,
        k_of=lambda r: r + 1,
        l_of=lambda r, j: j,
        head=lambda r: -tp * (v * (r + 1) * (r + 2) / 2 + (r + 1) * y1),
        log_ratio=lambda r: -tp * ((r + 1) * v + y2),
        sign=1.0, G=G1)
    c2, e2 = _cone_rows(
        lq, l1, l2, l3,
        k_of=lambda r: -r,
        l_of=lambda r, j: -(j + 1),
        head=lambda r: -tp * (v * (r * (r - 1) / 2 + 2 * r + 1) - r * y1 - y2),
        log_ratio=lambda r: -tp * ((r + 1) * v - y2),
        sign=-1.0, G=G2)
    flat = np.concatenate(c1 + c2)
    total = complex(math.fsum(flat.real), math.fsum(flat.imag))
    err = e1 + e2 + 8 * EPS * float(np.abs(flat).sum())
    pref = cmath.exp(-lq / 8 + (-l1 + l2 + l3) / 2)
    return ComplexVal(total, err) * pref


def F_continued_numeric(z1, z2, z3, tau) -> ComplexVal:
    """i theta(z1) mu(z1,z2) mu(z1,z3) - eta^3 theta(z2+z3) / (theta(z2) theta(z3)) mu(z1, z2+z3)."""
    tau = check_upper_half_plane(tau)
    z1, z2, z3 = complex(z1), complex(z2), complex(z3)
    for name, z in (("z1", z1), ("z2", z2), ("z3", z3), ("z2+z3", z2 + z3)):
        check_off_lattice(z, tau, name)
    t1 = theta_numeric(z1, tau) * mu_numeric(z1, z2, tau) * mu_numeric(z1, z3, tau) * 1j
    e3 = eta_numeric(tau) ** 3
    t2 = e3 * theta_numeric(z2 + z3, tau) / (theta_numeric(z2, tau) * theta_numeric(z3, tau))
    return t1 - t2 * mu_numeric(z1, z2 + z3, tau)


def F_numeric(z1, z2, z3, tau, mode: str = "direct") -> ComplexVal:
    """F(z1, z2, z3; tau) by the two-cone sum ("direct") or by its continuation ("continued")."""
    if mode == "direct":
        if not in_theorem_region(z2, z3, tau):
            raise DomainError("direct evaluation of F needs 0 < Im z2, Im z3 < Im tau; use mode='continued'")
        return f_L_numeric(z1, z2, z3, tau)
    if mode == "continued":
        return F_continued_numeric(z1, z2, z3, tau)
    raise ValueError(f"unknown mode {mode!r}")


def shift_relation_sides(z1, z2, z3, tau, which: str = "L") -> tuple[ComplexVal, ComplexVal]:
    """Both sides of g(z3) + q^(-1/2) zeta1 zeta3^(-1) g(z3 + tau) = (common right side),
    for g = f_L (two-cone sum) or g = f_R (continued form)."""
    tau = check_upper_half_plane(tau)
    z1, z2, z3 = complex(z1), complex(z2), complex(z3)
    g = f_L_numeric if which == "L" else F_continued_numeric
    factor = cmath.exp(-1j * math.pi * tau + 2j * math.pi * (z1 - z3))
    lhs = g(z1, z2, z3, tau) + g(z1, z2, z3 + tau, tau) * factor
    e = lambda x: cmath.exp(2j * math.pi * x)  # noqa: E731
    r1 = theta_numeric(z1, tau) * mu_numeric(z1, z2, tau) * e(-tau / 8 + z1 / 2 - z3 / 2)
    quot = eta_numeric(tau) ** 3 * theta_numeric(z2 + z3, tau) / (theta_numeric(z2, tau) * theta_numeric(z3, tau))
    r2 = quot * (1j * e(-tau / 8 + z1 / 2 - z2 / 2 - z3 / 2))
    return lhs, r1 + r2


# -- theta quotient -------------------------------------------------------------

def theta_quotient_lhs(z1, z2, tau) -> ComplexVal:
    """sum_l zeta1^l / (1 - zeta2 q^l); for l < 0 rewritten as
    -zeta1^l zeta2^-1 q^-l / (1 - zeta2^-1 q^-l).  Needs 0 < Im z1, Im z2 < Im tau."""
    tau = check_upper_half_plane(tau)
    z1, z2 = complex(z1), complex(z2)
    v, y1, y2 = tau.imag, z1.imag, z2.imag
    if not (0 < y1 < v and 0 < y2 < v):
        raise DomainError("the geometric expansion needs 0 < Im z1, Im z2 < Im tau")
    p = 2j * math.pi
    r_pos = math.exp(-2 * math.pi * y1)          # |zeta1|
    r_neg = math.exp(-2 * math.pi * (v - y1))    # |zeta1^-1 q|
    n_pos = math.ceil(40 / (-math.log(r_pos))) + 2
    n_neg = math.ceil(40 / (-math.log(r_neg))) + 2
    terms = [cmath.exp(p * l * z1) / (1 - cmath.exp(p * (z2 + l * tau))) for l in range(0, n_pos)]
    terms += [-cmath.exp(p * (-l * z1 - z2 + l * tau)) / (1 - cmath.exp(p * (l * tau - z2)))
              for l in range(1, n_neg)]
    total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    a_pos = math.exp(-2 * math.pi * (y2 + n_pos * v))
    a_neg = math.exp(-2 * math.pi * (n_neg * v - y2))
    tail = (r_pos ** n_pos / (1 - a_pos) / (1 - r_pos)
            + math.exp(2 * math.pi * y2) * r_neg ** n_neg / (1 - a_neg) / (1 - r_neg))
    return ComplexVal(total, tail + 8 * EPS * sum(abs(t) for t in terms))


def theta_quotient_rhs(z1, z2, tau) -> ComplexVal:
    """-i eta^3 theta(z1 + z2) / (theta(z1) theta(z2))."""
    tau = check_upper_half_plane(tau)
    z1, z2 = complex(z1), complex(z2)
    for name, z in (("z1", z1), ("z2", z2)):
        check_off_lattice(z, tau, name)
    e3 = eta_numeric(tau) ** 3
    return e3 * theta_numeric(z1 + z2, tau) / (theta_numeric(z1, tau) * theta_numeric(z2, tau)) * (-1j)


def theta_quotient_check(samples, tol: float = 1e-8, seed: int = 0):
    """Compare both sides of the theta-quotient identity at (tau, z1, z2) samples."""
    from .report import CheckSpec, compare_samples

    spec = CheckSpec("theta_quotient", "numeric", samples=tuple(samples), tol=tol, seed=seed)
    pairs = [((tau, z1, z2), theta_quotient_lhs(z1, z2, tau), theta_quotient_rhs(z1, z2, tau))
             for tau, z1, z2 in spec.samples]
    return compare_samples(spec, pairs)


# -- shadow operator --------------------------------------------------------------

def _dbar(f: Callable, tau: complex, h: float) -> complex:
    def fv(t):
        return complex(ComplexVal.of(f(t)).value)

    du = (fv(tau + h) - fv(tau - h)) / (2 * h)
    dv = (fv(tau + 1j * h) - fv(tau - 1j * h)) / (2 * h)
    return 0.5 * (du + 1j * dv)


def xi_numeric(f: Callable, k, tau, h: float = 1e-3) -> ComplexVal:
    """xi_k f = 2 i v^k conj(d f / d tau-bar), with d/d tau-bar = (d/du + i d/dv)/2.

    Central differences at steps h and h/2 are combined by Richardson
    extrapolation; the gap between the extrapolated and the h/2 value is the
    reported error.
    """
    tau = check_upper_half_plane(tau)
    if not 0 < h < tau.imag / 4:
        raise DomainError(f"step h = {h} must be in (0, Im(tau)/4)")
    d1 = _dbar(f, tau, h)
    d2 = _dbar(f, tau, h / 2)
    rich = (4 * d2 - d1) / 3
    pref = 2j * tau.imag ** float(k)
    return ComplexVal(pref * rich.conjugate(), abs(pref) * abs(rich - d2))
