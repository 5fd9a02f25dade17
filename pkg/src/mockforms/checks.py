"""Registry of every identity the package verifies.

Each :class:`Check` knows its mode, its default order or tolerance, and how to
draw sample points from its own region.  ``run_check`` turns a check plus
optional overrides into a timed :class:`IdentityReport`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

import numpy as np

from . import appell, classical, potential
from .errors import MockFormsError
from .gaussian import I
from .numeric import ComplexVal
from .qseries import QSeries, qs_eval
from .report import (CheckSpec, IdentityReport, TransformLaw, check_qseries_equal, check_shadow,
                     check_transform, compare_samples, timed)


@dataclass(frozen=True)
class Check:
    name: str
    mode: str
    run: Callable[[CheckSpec], IdentityReport]
    summary: str
    order: int = 0
    tol: float = 0.0
    n_samples: int = 0
    region: Callable | None = None
    fixed: tuple | None = None


REGISTRY: dict[str, Check] = {}


def register(name, mode, summary, **kw):
    def deco(fn):
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name!r}")
        REGISTRY[name] = Check(name, mode, fn, summary, **kw)
        return fn
    return deco


# -- sample regions ------------------------------------------------------------------
# tau: Im in [0.8, 2], |Re| <= 1/2.  z-regions are per check.

def _tau(rng) -> complex:
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))


def _z_strip(rng, tau: complex, lo: float = 0.1, hi: float = 0.9) -> complex:
    """Re z in [-1/2, 1/2], Im z in [lo, hi] * Im tau."""
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(lo, hi) * tau.imag)


def region_tau(rng):
    return (_tau(rng),)


def region_tau_z(rng):
    tau = _tau(rng)
    return (tau, _z_strip(rng, tau, -0.45, 0.45))


def region_tau_z2(rng):
    tau = _tau(rng)
    return (tau, _z_strip(rng, tau, -0.45, 0.45), _z_strip(rng, tau, -0.45, 0.45))


def region_strip2(rng):
    """0 < Im z1, Im z2 < Im tau."""
    tau = _tau(rng)
    return (tau, _z_strip(rng, tau), _z_strip(rng, tau))


def region_strip3(rng):
    """0 < Im z2, Im z3 < Im tau, z1 in the same strip."""
    tau = _tau(rng)
    return (tau, _z_strip(rng, tau), _z_strip(rng, tau), _z_strip(rng, tau))


def region_theta_shift(rng):
    tau, z = region_tau_z(rng)
    lam, mu = (int(x) for x in rng.integers(-1, 2, size=2))
    return (tau, z, lam, mu)


_MU_HAT_SHIFTS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 1), (0, 1, -1, 0))


def region_mu_hat_shift(rng):
    tau, z1, z2 = region_tau_z2(rng)
    return (tau, z1, z2) + _MU_HAT_SHIFTS[int(rng.integers(len(_MU_HAT_SHIFTS)))]


def draw_samples(region: Callable, count: int, seed: int) -> tuple:
    rng = np.random.default_rng(seed)
    return tuple(region(rng) for _ in range(count))


# -- helpers -------------------------------------------------------------------------

def _eval_at(series_of: Callable[[int], QSeries]) -> Callable:
    """tau -> qs_eval(series_of(N), tau) with N large enough for ~1e-17 tails."""
    def f(tau, *_):
        return qs_eval(series_of(classical._order_for(complex(tau).imag)), tau)
    return f


def _descriptor_laws(desc: classical.FormDescriptor) -> tuple[TransformLaw, TransformLaw]:
    s = TransformLaw(f"{desc.name} under S",
                     lambda tau, zs: (-1 / tau, tuple(z / tau for z in zs)),
                     lambda tau, zs: desc.s_factor(tau, zs[0] if zs else 0j))
    t = TransformLaw(f"{desc.name} under T",
                     lambda tau, zs: (tau + 1, zs),
                     lambda tau, zs: desc.t_phase)
    return s, t


def _both_laws(f: Callable, desc: classical.FormDescriptor, spec: CheckSpec) -> IdentityReport:
    s, t = _descriptor_laws(desc)
    rs = check_transform(f, s, spec)
    rt = check_transform(f, t, spec)
    worst = max((rs, rt), key=lambda r: (r.status != "pass", r.detail.get("max_error", 0.0)))
    status = "pass" if rs.passed and rt.passed else ("error" if "error" in (rs.status, rt.status) else "fail")
    return IdentityReport(spec, status, {"S": rs.detail, "T": rt.detail, "worst": worst.detail.get("law")})


def _jets_agree(spec: CheckSpec, jets: dict) -> IdentityReport:
    names = list(jets)
    ref = jets[names[0]]
    for other in names[1:]:
        d = ref.first_difference(jets[other], spec.order)
        if d is not None:
            k, idx, denom = d
            return IdentityReport(spec, "fail", {
                "pair": [names[0], other],
                "first_mismatch_w_power": k,
                "first_mismatch_exponent": str(Fraction(idx, denom)),
            })
    return IdentityReport(spec, "pass", {"compared": names, "w_range": [ref.lo, ref.hi]})


def _pairs(spec: CheckSpec, sides: Callable) -> IdentityReport:
    try:
        pairs = [(s, *sides(*s)) for s in spec.samples]
    except MockFormsError as exc:
        return IdentityReport(spec, "error", {"error": f"{type(exc).__name__}: {exc}"})
    return compare_samples(spec, pairs)


def _cv(x) -> ComplexVal:
    return ComplexVal.of(x)


# ====================================================================================
# exact identities
# ====================================================================================

@register("c_y_eta_cubed", "exact", "c_y from its defining sum equals -q^(1/16) eta^3", order=200)
def _c_y_eta_cubed(spec):
    n = spec.order
    return check_qseries_equal(potential.c_y_def(n), -classical.eta_cubed(n).shift(Fraction(1, 16)), n, spec)


@register("e2_appell", "exact",
          "2 sum_{n!=0} (-1)^n q^(n(n+3)/2)/(1-q^n)^2 = (E2 - 1)/12", order=200)
def _e2_appell(spec):
    n = spec.order
    return check_qseries_equal(classical.e2_appell_lhs(n), classical.e2_appell_rhs(n), n, spec)


@register("c_yz2_second_piece", "exact", "c_yz2,2 = q^(-1/12) (1 - E2)/6", order=200)
def _c_yz2_second(spec):
    n = spec.order
    _, second = potential.c_yz2_def(n)
    return check_qseries_equal(second, potential.c_yz2_second_closed(n), n, spec)


@register("c_yz2_split", "exact", "the two pieces of c_yz2 add up to the single-pass defining sum",
          order=60)
def _c_yz2_split(spec):
    n = spec.order
    first, second = potential.c_yz2_def(n)
    return check_qseries_equal(first + second, potential.c_yz2_def_total(n), n, spec)


@register("c_yz2_closed", "exact",
          "q^(1/12) c_yz2 = 1/2 D(-theta(6z) mu(8z,6z) + zeta^4/(1-zeta^8)) + (1 - E2)/12", order=60)
def _c_yz2_closed(spec):
    n = spec.order
    lhs = potential.c_yz2_def_total(n).shift(Fraction(1, 12))
    return check_qseries_equal(lhs, potential.c_yz2_closed(n), n, spec)


@register("c_yz2_first_piece", "exact",
          "q^(1/12) c_yz2,1 = D(-theta(3z) mu(4z,3z) + zeta^2/(1-zeta^4)) - (1 - E2)/12", order=60)
def _c_yz2_first(spec):
    n = spec.order
    first, _ = potential.c_yz2_def(n)
    return check_qseries_equal(first.shift(Fraction(1, 12)), potential.c_yz2_first_closed(n), n, spec)


@register("c_yz2_first_piece_alt", "exact",
          "q^(1/12) c_yz2,1 = -D(sum_{j!=0} (-1)^j zeta^(3j+2) q^(j(j+1)/2)/(1-zeta^4 q^j)) - (1 - E2)/12",
          order=60)
def _c_yz2_first_alt(spec):
    n = spec.order
    first, _ = potential.c_yz2_def(n)
    return check_qseries_equal(first.shift(Fraction(1, 12)), potential.c_yz2_first_alt(n), n, spec)


@register("c_yz2_auxiliary", "exact",
          "q^(1/12) c_yz2 = -3 sum_{n!=0} (-1)^n n q^(n(n+1)/2)/(1-q^n) + (1 - E2)/4", order=60)
def _c_yz2_aux(spec):
    n = spec.order
    lhs = potential.c_yz2_def_total(n).shift(Fraction(1, 12))
    return check_qseries_equal(lhs, potential.c_yz2_auxiliary(n), n, spec)


@register("c_yz4_mu_route", "exact",
          "c_yz4 = -q^(-11/48) D(i theta(3z) mu(3z,2z)^2 - eta^3 theta(4z)/theta(2z)^2 mu(3z,4z))", order=40)
def _c_yz4_mu(spec):
    n = spec.order
    return check_qseries_equal(potential.c_yz4_def(n), potential.c_yz4_closed(n, "mu"), n, spec)


@register("c_yz4_F_route", "exact", "c_yz4 = -q^(-11/48) D F(3z, 2z, 2z) from the two-cone sum", order=40)
def _c_yz4_F(spec):
    n = spec.order
    return check_qseries_equal(potential.c_yz4_def(n), potential.c_yz4_closed(n, "F"), n, spec)


@register("indef_theta_jet", "exact",
          "F(3z,2z,2z) from the cone sum equals i theta mu^2 - eta^3 theta/theta^2 mu as w-jets",
          order=40)
def _indef_theta_jet(spec):
    n = spec.order
    return _jets_agree(spec, {
        "cone_sum": appell.F_jet(3, 2, 2, n, 3),
        "continuation": appell.F_continued_jet(3, 2, 2, n, 3),
    })


@register("eta3_over_theta_three_way", "exact",
          "eta^3/theta(z) by jet inversion, partial fractions and the Bernoulli exp-form agree (w^-1..w^6)",
          order=100)
def _eta3_three_way(spec):
    n = spec.order
    return _jets_agree(spec, {
        "inverse": classical.eta3_over_theta_inverse(1, n, 6),
        "partial_fractions": classical.eta3_over_theta_partial_fractions(1, n, 6),
        "exp_form": classical.eta3_over_theta_exp_form(1, n, 6),
    })


@register("eta3_over_theta_e2", "exact", "the w^1 coefficient of eta^3/theta(z) is i E2/24", order=100)
def _eta3_e2(spec):
    n = spec.order
    jet = classical.eta3_over_theta_inverse(1, n, 1)
    return check_qseries_equal(jet.coeff(1), classical.eisenstein(2, n).scale(I / 24), n, spec)


@register("theta_derivative", "exact", "the w^1 coefficient of theta(z) is i eta^3", order=100)
def _theta_derivative(spec):
    n = spec.order
    return check_qseries_equal(classical.theta_jet(1, n, 1).coeff(1), classical.eta_cubed(n).scale(I), n, spec)


@register("theta_jet_product", "exact",
          "theta(2z) as a w-jet: half-integer sum equals the triple product", order=60)
def _theta_jet_product(spec):
    n = spec.order
    return _jets_agree(spec, {"sum": classical.theta_jet(2, n, 7),
                              "product": classical.theta_product_jet(2, n, 7)})


@register("theta_jet_odd", "exact", "theta(az) jets have vanishing even w-coefficients", order=60)
def _theta_jet_odd(spec):
    n = spec.order
    for a in (1, 2, 3, 6):
        jet = classical.theta_jet(a, n, 8)
        for k in range(0, 9, 2):
            c = jet.coeff(k)
            if not c.truncate(n).is_zero():
                return IdentityReport(spec, "fail", {"a": a, "w_power": k})
    return IdentityReport(spec, "pass", {"a": [1, 2, 3, 6], "w_powers": [0, 2, 4, 6, 8]})


@register("mu_jet_symmetry", "exact", "mu(4z, 3z) = mu(3z, 4z) as w-jets", order=30)
def _mu_jet_symmetry(spec):
    n = spec.order
    return _jets_agree(spec, {"mu(4z,3z)": appell.mu_jet(4, 3, n, 4), "mu(3z,4z)": appell.mu_jet(3, 4, n, 4)})


@register("mu_pole_cancellation", "exact",
          "-theta(bz) mu(az,bz) + zeta^(a/2)/(1-zeta^a) has no pole at z = 0", order=30)
def _mu_pole_cancellation(spec):
    n = spec.order
    for a, b in ((8, 6), (4, 3)):
        h = 2
        combo = potential._counterterm(a // 2, a, h) - appell.mu_jet(a, b, n, h) * classical.theta_jet(b, n, h + 2)
        poles = combo.truncate_q(n).pole_part()
        if poles:
            k, c = poles[0]
            return IdentityReport(spec, "fail", {"a": a, "b": b, "w_power": k})
    return IdentityReport(spec, "pass", {"pairs": [[8, 6], [4, 3]]})


@register("coefficients_integral", "exact",
          "c_y, c_yz2 and c_yz4 have rational-integer coefficients", order=60)
def _coefficients_integral(spec):
    n = spec.order
    table = potential.w_coefficients(n)
    bad = [label for label in ("y^3", "y^2z^2", "yz^4") if not potential.check_integral(table[label])]
    return IdentityReport(spec, "fail" if bad else "pass", {"non_integral": bad} if bad else {})


@register("potential_table", "exact",
          "potential slots: x^2 -> q^(1/8), xyz -> -q^(1/48), y^3 -> c_y, z^6 external", order=20)
def _potential_table(spec):
    n = spec.order
    table = potential.w_coefficients(n)
    checks = {
        "x^2": table["x^2"] == QSeries.monomial(Fraction(1, 8), 1),
        "xyz": table["xyz"] == QSeries.monomial(Fraction(1, 48), -1),
        "y^3": table["y^3"].agrees_with(potential.c_y_def(n), n),
        "z^6": table["z^6"] == potential.EXTERNAL,
    }
    bad = [k for k, ok in checks.items() if not ok]
    return IdentityReport(spec, "fail" if bad else "pass", {"mismatched": bad} if bad else {})


# ====================================================================================
# classical forms, numeric
# ====================================================================================

@register("eta_transform", "transform", "eta(tau + 1) = e^(pi i/12) eta, eta(-1/tau) = sqrt(-i tau) eta",
          tol=1e-8, n_samples=20, region=region_tau)
def _eta_transform(spec):
    return _both_laws(lambda tau: classical.eta_numeric(tau), classical.ETA, spec)


@register("c_y_modular", "transform", "-q^(-1/16) c_y is a weight 3/2 form with the eta^3 multiplier",
          tol=1e-8, n_samples=10, region=region_tau)
def _c_y_modular(spec):
    f = _eval_at(lambda n: -potential.c_y_def(n).shift(Fraction(-1, 16)))
    return _both_laws(f, classical.ETA3, spec)


@register("eisenstein_transform", "transform", "E4 and E6 are modular of weights 4 and 6",
          tol=1e-8, n_samples=10, region=region_tau)
def _eisenstein_transform(spec):
    reps = [_both_laws(lambda tau, k=k: classical.eisenstein_numeric(k, tau), classical.ek_descriptor(k), spec)
            for k in (4, 6)]
    ok = all(r.passed for r in reps)
    return IdentityReport(spec, "pass" if ok else "fail", {"E4": reps[0].detail, "E6": reps[1].detail})


@register("e2_quasimodular", "numeric", "E2(-1/tau) = tau^2 E2(tau) + 6 tau/(pi i)",
          tol=1e-8, n_samples=20, region=region_tau)
def _e2_quasi(spec):
    def sides(tau):
        lhs = classical.eisenstein_numeric(2, -1 / tau)
        rhs = classical.eisenstein_numeric(2, tau) * tau ** 2 + 6 * tau / (math.pi * 1j)
        return lhs, rhs
    return _pairs(spec, sides)


@register("e2_completed_transform", "transform", "E2 - 3/(pi v) is modular of weight 2",
          tol=1e-8, n_samples=20, region=region_tau)
def _e2hat(spec):
    return _both_laws(lambda tau: classical.e2_completed_numeric(tau), classical.E2HAT, spec)


@register("e2_at_i", "numeric", "E2(i) = 3/pi", tol=1e-12, fixed=((1j,),))
def _e2_at_i(spec):
    return _pairs(spec, lambda tau: (classical.eisenstein_numeric(2, tau), _cv(3 / math.pi)))


@register("theta_triple_product", "numeric", "theta as a half-integer sum equals the triple product",
          tol=1e-12, n_samples=100, region=region_tau_z)
def _theta_triple(spec):
    return _pairs(spec, lambda tau, z: (classical.theta_numeric(z, tau),
                                        classical.theta_triple_product_numeric(z, tau)))


@register("theta_odd", "numeric", "theta(-z) = -theta(z)", tol=1e-12, n_samples=20, region=region_tau_z)
def _theta_odd(spec):
    return _pairs(spec, lambda tau, z: (classical.theta_numeric(-z, tau), -classical.theta_numeric(z, tau)))


@register("theta_elliptic", "transform",
          "theta(z + l tau + m) = (-1)^(l+m) q^(-l^2/2) zeta^(-l) theta(z) for l, m in {-1, 0, 1}",
          tol=1e-10, n_samples=30, region=region_theta_shift)
def _theta_elliptic(spec):
    law = TransformLaw(
        "elliptic shift",
        lambda tau, zs: (tau, (zs[0] + zs[1] * tau + zs[2], zs[1], zs[2])),
        lambda tau, zs: (-1) ** (zs[1] + zs[2]) * cmath.exp(-1j * math.pi * zs[1] ** 2 * tau
                                                              - 2j * math.pi * zs[1] * zs[0]),
    )
    return check_transform(lambda tau, z, lam, mu: classical.theta_numeric(z, tau), law, spec)


@register("theta_modular", "transform",
          "theta(z/tau; -1/tau) = -i sqrt(-i tau) e^(pi i z^2/tau) theta(z; tau), theta(z; tau+1) = e^(pi i/4) theta",
          tol=1e-10, n_samples=20, region=region_tau_z)
def _theta_modular(spec):
    return _both_laws(lambda tau, z: classical.theta_numeric(z, tau), classical.theta_descriptor(1), spec)


@register("eta3_over_theta_modular", "transform",
          "eta^3/theta(z) is a Jacobi form of weight 1 and index -1/2",
          tol=1e-10, n_samples=20, region=region_tau_z)
def _eta3_over_theta_modular(spec):
    f = lambda tau, z: classical.eta_numeric(tau) ** 3 / classical.theta_numeric(z, tau)  # noqa: E731
    return _both_laws(f, classical.eta3_over_theta_descriptor(1), spec)


# ====================================================================================
# mu, R, mu-hat, F
# ====================================================================================

@register("mu_symmetry", "numeric", "mu(z1, z2) = mu(z2, z1)", tol=1e-10, n_samples=20, region=region_tau_z2)
def _mu_symmetry(spec):
    return _pairs(spec, lambda tau, z1, z2: (appell.mu_numeric(z1, z2, tau), appell.mu_numeric(z2, z1, tau)))


@register("mu_translation", "numeric", "mu(z1 + 1, z2) = -mu(z1, z2)", tol=1e-8, n_samples=20,
          region=region_tau_z2)
def _mu_translation(spec):
    return _pairs(spec, lambda tau, z1, z2: (appell.mu_numeric(z1 + 1, z2, tau), -appell.mu_numeric(z1, z2, tau)))


@register("mu_shift_tau", "numeric",
          "mu(z1, z2) + zeta2 zeta1^-1 q^-1/2 mu(z1 + tau, z2) = -i zeta2^1/2 zeta1^-1/2 q^-1/8",
          tol=1e-8, n_samples=20, region=region_tau_z2)
def _mu_shift_tau(spec):
    def sides(tau, z1, z2):
        e = lambda x: cmath.exp(2j * math.pi * x)  # noqa: E731
        lhs = appell.mu_numeric(z1, z2, tau) + appell.mu_numeric(z1 + tau, z2, tau) * e(z2 - z1 - tau / 2)
        return lhs, _cv(-1j * e(z2 / 2 - z1 / 2 - tau / 8))
    return _pairs(spec, sides)


@register("mu_residue", "numeric", "z1 mu(z1, z2) -> -1/(2 pi i theta(z2)) as z1 -> 0",
          tol=1e-8, n_samples=10, region=region_tau_z)
def _mu_residue(spec):
    h = 1e-5

    def sides(tau, z2):
        # the symmetric average cancels the linear term, leaving O(h^2)
        g = (appell.mu_numeric(h, z2, tau) * h + appell.mu_numeric(-h, z2, tau) * (-h)) * 0.5
        return g, ComplexVal.of(-1 / (2j * math.pi)) / classical.theta_numeric(z2, tau)
    return _pairs(spec, sides)


@register("R_even", "numeric", "R(-z) = R(z), so R'(0) = 0", tol=1e-12, n_samples=20, region=region_tau_z)
def _r_even(spec):
    return _pairs(spec, lambda tau, z: (appell.R_numeric(-z, tau), appell.R_numeric(z, tau)))


@register("mu_hat_elliptic", "transform",
          "mu^(z1 + k tau + l, z2 + m tau + n) = (-1)^(k+l+m+n) q^((k-m)^2/2) zeta1^(k-m) zeta2^(m-k) mu^",
          tol=1e-8, n_samples=30, region=region_mu_hat_shift)
def _mu_hat_elliptic(spec):
    def mapped(tau, zs):
        z1, z2, k, l, m, n = zs
        return tau, (z1 + k * tau + l, z2 + m * tau + n, k, l, m, n)

    def factor(tau, zs):
        z1, z2, k, l, m, n = zs
        return (-1) ** (k + l + m + n) * cmath.exp(2j * math.pi * ((k - m) ** 2 * tau / 2 + (k - m) * (z1 - z2)))

    law = TransformLaw("elliptic shifts", mapped, factor)
    return check_transform(lambda tau, z1, z2, *_: appell.mu_hat_numeric(z1, z2, tau), law, spec)


@register("mu_hat_modular", "transform",
          "mu^(z1/tau, z2/tau; -1/tau) = -sqrt(-i tau) e^(-pi i (z1-z2)^2/tau) mu^, mu^(tau + 1) = e^(-pi i/4) mu^",
          tol=1e-8, n_samples=20, region=region_tau_z2)
def _mu_hat_modular(spec):
    f = lambda tau, z1, z2: appell.mu_hat_numeric(z1, z2, tau)  # noqa: E731
    s = TransformLaw("S", lambda tau, zs: (-1 / tau, (zs[0] / tau, zs[1] / tau)),
                     lambda tau, zs: -cmath.sqrt(-1j * tau) * cmath.exp(-1j * math.pi * (zs[0] - zs[1]) ** 2 / tau))
    t = TransformLaw("T", lambda tau, zs: (tau + 1, zs), lambda tau, zs: cmath.exp(-1j * math.pi / 4))
    rs, rt = check_transform(f, s, spec), check_transform(f, t, spec)
    status = "pass" if rs.passed and rt.passed else ("error" if "error" in (rs.status, rt.status) else "fail")
    return IdentityReport(spec, status, {"S": rs.detail, "T": rt.detail})


@register("mu_jet_numeric", "numeric",
          "the w-jet of mu(2z, 3z) summed at z0 = 0.01 + 0.003i matches the Appell-Lerch sum (tau = 5i)",
          tol=1e-9, fixed=((5j, 0.01 + 0.003j),))
def _mu_jet_numeric(spec):
    jet = appell.mu_jet(2, 3, 12, 8)
    return _pairs(spec, lambda tau, z0: (jet.evaluate(2j * math.pi * z0, tau),
                                         appell.mu_numeric(2 * z0, 3 * z0, tau)))


@register("indef_theta_identity", "numeric",
          "F(z1,z2,z3) = i theta(z1) mu(z1,z2) mu(z1,z3) - eta^3 theta(z2+z3)/(theta(z2) theta(z3)) mu(z1,z2+z3)",
          tol=1e-8, n_samples=20, region=region_strip3)
def _indef_theta(spec):
    return _pairs(spec, lambda tau, z1, z2, z3: (appell.F_numeric(z1, z2, z3, tau, "direct"),
                                                 appell.F_numeric(z1, z2, z3, tau, "continued")))


@register("shift_relation_L", "numeric",
          "f_L(z3) + q^-1/2 zeta1 zeta3^-1 f_L(z3 + tau) equals the theta-mu right side",
          tol=1e-8, n_samples=20, region=region_strip3)
def _shift_L(spec):
    return _pairs(spec, lambda tau, z1, z2, z3: appell.shift_relation_sides(z1, z2, z3, tau, "L"))


@register("shift_relation_R", "numeric", "the continued form satisfies the same shift relation",
          tol=1e-8, n_samples=20, region=region_strip3)
def _shift_R(spec):
    return _pairs(spec, lambda tau, z1, z2, z3: appell.shift_relation_sides(z1, z2, z3, tau, "R"))


@register("F_antiperiodic", "numeric", "F(z1, z2, z3 + 1) = -F(z1, z2, z3)",
          tol=1e-10, n_samples=20, region=region_strip3)
def _F_antiperiodic(spec):
    return _pairs(spec, lambda tau, z1, z2, z3: (appell.F_numeric(z1, z2, z3 + 1, tau),
                                                 -appell.F_numeric(z1, z2, z3, tau)))


@register("theta_quotient", "numeric",
          "sum_l zeta1^l/(1 - zeta2 q^l) = -i eta^3 theta(z1+z2)/(theta(z1) theta(z2)) for 0 < Im z1, Im z2 < v",
          tol=1e-8, n_samples=20, region=region_strip2)
def _theta_quotient(spec):
    return _pairs(spec, lambda tau, z1, z2: (appell.theta_quotient_lhs(z1, z2, tau),
                                             appell.theta_quotient_rhs(z1, z2, tau)))


# ====================================================================================
# shadows
# ====================================================================================

_SHADOW_TAUS = ((1j,), (1 / 3 + 1j,), (2j,))


@register("R_shadow", "shadow", "xi_(1/2) R(0) = -sqrt 2 eta^3", tol=1e-4, fixed=_SHADOW_TAUS)
def _r_shadow(spec):
    return check_shadow(lambda tau: appell.R_numeric(0, tau), Fraction(1, 2),
                        lambda tau: classical.eta_numeric(tau) ** 3 * (-math.sqrt(2)), spec)


@register("e2_completed_shadow", "shadow", "xi_2 (E2 - 3/(pi v)) = 3/pi", tol=1e-6, fixed=_SHADOW_TAUS)
def _e2hat_shadow(spec):
    return check_shadow(lambda tau: classical.e2_completed_numeric(tau), 2, lambda tau: 3 / math.pi, spec)


@register("holomorphic_shadow", "shadow", "xi_4 annihilates the holomorphic form E4", tol=1e-6,
          fixed=_SHADOW_TAUS)
def _holomorphic_shadow(spec):
    return check_shadow(lambda tau: classical.eisenstein_numeric(4, tau), 4, lambda tau: 0.0, spec)


@register("chat_yz2_shadow", "shadow",
          "xi_2 of the completed c_yz2 is C v^p |eta|^6; p and C are measured", tol=1e-3,
          fixed=((1j,), (0.25 + 1.25j,), (-0.2 + 1.6j,), (2j,)))
def _chat_yz2_shadow(spec):
    rep = check_shadow(potential.chat_yz2_numeric, 2, "measure", spec,
                       normaliser=lambda tau: abs(classical.eta_numeric(tau).value) ** 6)
    if rep.status == "pass":
        c = complex(*rep.detail["constant"])
        rep.detail["constant_vs_minus_3_over_sqrt2"] = abs(c + 3 / math.sqrt(2))
    return rep


# ====================================================================================
# completions
# ====================================================================================

_COMPLETION_TAUS = ((1j,), (0.25 + 1j,), (-1 / 3 + 2j,))


@register("chat_yz2_modular", "transform", "the completed c_yz2 satisfies f(-1/tau) = tau^2 f(tau)",
          tol=1e-6, fixed=_COMPLETION_TAUS)
def _chat_yz2_modular(spec):
    law = TransformLaw("S, weight 2", lambda tau, zs: (-1 / tau, zs), lambda tau, zs: tau ** 2)
    return check_transform(lambda tau: potential.chat_yz2_numeric(tau), law, spec)


@register("chat_yz2_translation", "transform", "the completed c_yz2 is invariant under tau -> tau + 1",
          tol=1e-8, fixed=_COMPLETION_TAUS)
def _chat_yz2_translation(spec):
    law = TransformLaw("T, phase 1", lambda tau, zs: (tau + 1, zs), lambda tau, zs: 1)
    return check_transform(lambda tau: potential.chat_yz2_numeric(tau), law, spec)


@register("chat_yz4_modular", "transform",
          "the completed c_yz4 satisfies f(-1/tau) = (-i tau)^(5/2) f(tau)", tol=1e-6, fixed=_COMPLETION_TAUS)
def _chat_yz4_modular(spec):
    law = TransformLaw("S, weight 5/2", lambda tau, zs: (-1 / tau, zs),
                       lambda tau, zs: cmath.exp(2.5 * cmath.log(-1j * tau)))
    return check_transform(lambda tau: potential.chat_yz4_numeric(tau), law, spec)


@register("chat_yz4_translation", "transform",
          "the completed c_yz4 picks up e^(-pi i/4) under tau -> tau + 1 (phase measured)",
          tol=1e-8, fixed=_COMPLETION_TAUS)
def _chat_yz4_translation(spec):
    f = lambda tau: potential.chat_yz4_numeric(tau)  # noqa: E731
    law = TransformLaw("T, phase e^(-pi i/4)", lambda tau, zs: (tau + 1, zs),
                       lambda tau, zs: cmath.exp(-0.25j * math.pi))
    rep = check_transform(f, law, spec)
    if rep.status != "error":
        phases = [f(s[0] + 1).value / f(s[0]).value for s in spec.samples]
        m = complex(np.mean(phases))
        rep.detail["measured_phase"] = [m.real, m.imag]
        rep.detail["measured_phase_over_pi"] = cmath.phase(m) / math.pi
    return rep


# ====================================================================================

def make_spec(name: str, order: int | None = None, n_samples: int | None = None,
              seed: int = 0, tol: float | None = None) -> CheckSpec:
    check = REGISTRY[name]
    tol = check.tol if tol is None else tol
    if check.mode == "exact":
        return CheckSpec(name, "exact", order=check.order if order is None else order)
    if n_samples is None and check.fixed is not None:
        return CheckSpec(name, check.mode, samples=check.fixed, tol=tol, seed=seed, sampled=False)
    if check.region is None:
        raise ValueError(f"{name} has fixed samples only")
    count = check.n_samples if n_samples is None else n_samples
    return CheckSpec(name, check.mode, samples=draw_samples(check.region, count, seed), tol=tol, seed=seed)


def run_spec(spec: CheckSpec) -> IdentityReport:
    check = REGISTRY[spec.name]

    def go():
        try:
            rep = check.run(spec)
        except MockFormsError as exc:
            rep = IdentityReport(spec, "error", {"error": f"{type(exc).__name__}: {exc}"})
        return replace(rep, spec=spec)
    return timed(go)


def run_check(name: str, **overrides) -> IdentityReport:
    return run_spec(make_spec(name, **overrides))


__all__ = ["Check", "REGISTRY", "draw_samples", "make_spec", "run_check", "run_spec"]
