import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mockforms import classical as C
from mockforms.errors import ConsistencyError
from mockforms.gaussian import I
from mockforms.qseries import QSeries, qs_eval


def brute_euler(n_terms):
    """prod_{n < n_terms} (1 - q^n) by repeated polynomial multiplication."""
    p = [1] + [0] * (n_terms - 1)
    for n in range(1, n_terms):
        p = [p[i] - (p[i - n] if i >= n else 0) for i in range(n_terms)]
    return p


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def int_series(coeffs, shift=Fraction(0), order=None):
    return QSeries.from_terms([(shift + i, c) for i, c in enumerate(coeffs) if c], order)


# -- eta and eisenstein ----------------------------------------------------------

def test_eta_against_brute_product():
    N = 30
    assert C.eta(N) == int_series(brute_euler(N), Fraction(1, 24), N + Fraction(1, 24)).truncate(N)
    assert C.eta(N).coefficient(Fraction(1, 24)) == 1


def test_eta_pentagonal_support():
    pent = {k * (3 * k - 1) // 2 for k in range(-10, 11)}
    for k, _ in C.eta(60).items():
        assert (k - 2) // 48 in pent


def test_eta_cubed_leading_terms():
    e3 = C.eta_cubed(8).shift(Fraction(-1, 8))
    assert e3.agrees_with(int_series([1, -3, 0, 5, 0, 0, -7], order=7), 7)


def test_e2_against_divisor_sums():
    N = 25
    expected = int_series([1] + [-24 * sigma(1, n) for n in range(1, N)], order=N)
    assert C.eisenstein(2, N) == expected
    assert [C.eisenstein(2, 5).coefficient(n) for n in range(5)] == [1, -24, -72, -96, -168]


def test_e4_leading_terms():
    assert C.bernoulli(4) == Fraction(-1, 30)
    e4 = C.eisenstein(4, 3)
    assert [e4.coefficient(n) for n in range(3)] == [1, 240, 2160]


def test_eisenstein_rejects_bad_weights():
    for k in (1, 3, 0, -2):
        with pytest.raises(ValueError):
            C.eisenstein(k, 5)


def test_e2_order_one_is_constant():
    assert C.eisenstein(2, 1) == QSeries.constant(1, 48)


def test_bernoulli_values():
    assert [C.bernoulli(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0,
                                                  Fraction(1, 42)]


def test_completed_e2_modular_at_quarter_plus_i():
    tau = 0.25 + 1j
    lhs = C.e2_completed_numeric(-1 / tau).value
    assert abs(lhs - tau ** 2 * C.e2_completed_numeric(tau).value) < 1e-8


def test_e2_quasimodular_at_i():
    tau = 1j
    lhs = C.eisenstein_numeric(2, -1 / tau).value
    rhs = tau ** 2 * C.eisenstein_numeric(2, tau).value + 6 * tau / (math.pi * 1j)
    assert abs(lhs - rhs) < 1e-12


def test_e2_at_i_and_completed_vanishes():
    # the S fixed point forces E2(i) = 3/pi, hence E2(i) - 3/(pi * 1) = 0
    assert abs(C.eisenstein_numeric(2, 1j).value - 3 / math.pi) < 1e-14
    assert abs(C.e2_completed_numeric(1j).value) < 1e-14


@pytest.mark.parametrize("tau", [0.1 + 0.9j, -0.4 + 1.3j, 2j])
def test_eta_generators(tau):
    e = C.eta_numeric(tau).value
    assert abs(C.eta_numeric(tau + 1).value - cmath.exp(1j * math.pi / 12) * e) < 1e-8
    assert abs(C.eta_numeric(-1 / tau).value - cmath.sqrt(-1j * tau) * e) < 1e-8


def test_eta_fixed_point():
    assert abs(C.eta_numeric(1j).value - C.ETA.s_factor(1j) * C.eta_numeric(1j).value) < 1e-15
    assert abs(C.ETA.s_factor(1j) - 1) < 1e-15


# -- theta ------------------------------------------------------------------------

@pytest.mark.parametrize("tau", [1j, 2j, 1 / 3 + 1j])
def test_theta_vanishes_at_lattice_points(tau):
    assert abs(C.theta_numeric(0, tau).value) < 1e-15
    assert abs(C.theta_numeric(1 + tau, tau).value) < 1e-12


taus = st.builds(complex, st.floats(-0.5, 0.5), st.floats(0.3, 3.0))


@st.composite
def tau_z(draw):
    tau = draw(taus)
    return tau, complex(draw(st.floats(-0.5, 0.5)), draw(st.floats(-0.5, 0.5)) * tau.imag)


@given(tau_z())
def test_triple_product_agrees_with_sum(tz):
    tau, z = tz
    a, b = C.theta_numeric(z, tau), C.theta_triple_product_numeric(z, tau)
    assert abs(a.value - b.value) <= a.err + b.err + 1e-15


@given(tau_z(), st.integers(-1, 1), st.integers(-1, 1))
def test_theta_elliptic_law(tz, lam, mu):
    tau, z = tz
    lhs = C.theta_numeric(z + lam * tau + mu, tau).value
    rhs = (-1) ** (lam + mu) * cmath.exp(-1j * math.pi * lam * lam * tau - 2j * math.pi * lam * z)
    rhs *= C.theta_numeric(z, tau).value
    assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs))


@given(tau_z())
def test_theta_odd(tz):
    tau, z = tz
    assert abs(C.theta_numeric(-z, tau).value + C.theta_numeric(z, tau).value) < 1e-12


def test_theta_jet_is_odd_with_derivative_a_i_eta3():
    N = 30
    for a in (1, 2, 3, -2):
        jet = C.theta_jet(a, N, 4)
        assert jet.lo == 1
        for k in (2, 4):
            assert jet.coeff(k).truncate(N).is_zero()
        assert jet.coeff(1).agrees_with(C.eta_cubed(N).scale(I * a), N)


def test_theta_jet_rejects_zero_multiple():
    with pytest.raises(ValueError):
        C.theta_jet(0, 10, 3)


# -- eta^3 / theta ---------------------------------------------------------------

def test_eta3_over_theta_leading_term_is_minus_i():
    jet = C.eta3_over_theta_jet(1, 20, 2)
    assert jet.lo == -1
    assert jet.coeff(-1).agrees_with(QSeries.constant(-I), 20)


def test_eta3_over_theta_three_routes():
    N = 40
    a = C.eta3_over_theta_inverse(2, N, 5)
    b = C.eta3_over_theta_partial_fractions(2, N, 5)
    c = C.eta3_over_theta_exp_form(2, N, 5)
    assert a.agrees_with(b, N) and a.agrees_with(c, N)


def test_exp_form_constant_for_n_equals_one():
    # zeta(2)/(2 pi i)^2 = -1/24 = -B_2/(2 * 2!)
    assert -C.bernoulli(2) / (2 * math.factorial(2)) == Fraction(-1, 24)
    assert abs((math.pi ** 2 / 6) / (2j * math.pi) ** 2 + 1 / 24) < 1e-16


def test_z_coefficient_of_minus_2pi_eta3_over_theta():
    # [w^1] eta^3/theta = i E2/24; z = w / (2 pi i) turns -2 pi * that into pi^2 E2 / 6
    N = 30
    w1 = C.eta3_over_theta_jet(1, N, 1).coeff(1)
    assert w1.agrees_with(C.eisenstein(2, N).scale(I / 24), N)
    assert abs(-2 * math.pi * (2j * math.pi) * (1j / 24) - math.pi ** 2 / 6) < 1e-14


def test_three_way_mismatch_is_a_hard_error(monkeypatch):
    broken = lambda a, N, whi: C.eta3_over_theta_inverse(a, N, whi) + QSeries.monomial(3)  # noqa: E731
    monkeypatch.setattr(C, "eta3_over_theta_exp_form", broken)
    with pytest.raises(ConsistencyError):
        C.eta3_over_theta_jet(1, 10, 2)


# -- E2 Appell-Lerch identity -----------------------------------------------------

def test_e2_appell_rhs_first_terms_against_divisor_sums():
    rhs = C.e2_appell_rhs(4)
    oracle = [Fraction(-24 * sigma(1, n), 12) for n in (1, 2, 3)]
    assert oracle == [-2, -6, -8]
    assert [rhs.coefficient(n) for n in (1, 2, 3)] == oracle


def test_e2_appell_lhs_by_brute_geometric_expansion():
    N = 4
    acc = [Fraction(0)] * N
    for n in (1, 2, 3, -1, -2, -3):
        # q^(n(n+3)/2) / (1 - q^n)^2, expanded in positive powers
        if n > 0:
            base, step = n * (n + 3) // 2, n
        else:
            base, step = n * (n + 3) // 2 - 2 * n, -n
        m = 0
        while base + step * m < N:
            acc[base + step * m] += 2 * (-1 if n % 2 else 1) * (m + 1)
            m += 1
    assert acc[1:] == [-2, -6, -8]
    lhs = C.e2_appell_lhs(N)
    assert [lhs.coefficient(n) for n in (1, 2, 3)] == acc[1:]


def test_e2_appell_check_passes_and_order_zero_is_vacuous():
    assert C.e2_appell_check(200).status == "pass"
    assert C.e2_appell_check(0).status == "pass"
