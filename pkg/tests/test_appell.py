import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mockforms import appell as A
from mockforms.classical import e2_completed_numeric, eisenstein_numeric, eta_numeric, theta_jet, theta_numeric
from mockforms.errors import DomainError, SingularInputError
from mockforms.jets import jet_mul


def e(x):
    return cmath.exp(2j * math.pi * x)


def brute_appell(z1, z2, tau, n_max=40):
    """sum_n (-zeta2)^n q^(n(n+1)/2) / (1 - zeta1 q^n), plain truncated loop."""
    return sum((-e(z2)) ** n * e(tau * n * (n + 1) / 2) / (1 - e(z1 + n * tau)) for n in range(-n_max, n_max + 1))


def brute_F(z1, z2, z3, tau, box=18):
    """The two-cone triple sum defining F, summed over a box."""
    total = 0j
    for k in range(-box, box + 1):
        for l in range(-box, box + 1):
            for m in range(-box, box + 1):
                if (k > 0 and l >= 0 and m >= 0) or (k <= 0 and l < 0 and m < 0):
                    Q = k * (k + 1) / 2 + k * l + k * m + l * m
                    total += (-1) ** k * e(Q * tau + k * z1 + l * z2 + m * z3)
    return total * e(-tau / 8 - z1 / 2 + z2 / 2 + z3 / 2)


# -- jets ---------------------------------------------------------------------------

def test_mu_jet_rejects_zero_multiples():
    with pytest.raises(DomainError):
        A.mu_jet(3, 0, 5, 2)
    with pytest.raises(DomainError):
        A.mu_jet(0, 3, 5, 2)


def test_mu_jet_has_a_double_pole_at_most():
    assert A.mu_jet(4, 3, 10, 2).lo == -2


def test_mu_jet_times_theta_is_the_bracketed_sum():
    # theta(3z) mu(2z, 3z) = zeta^(2/2) * Appell-Lerch sum; compare at a small z with a brute loop
    tau, z0 = 2j, 0.004 + 0.001j
    prod = jet_mul(A.mu_jet(2, 3, 16, 9), theta_jet(3, 16, 11))
    got = prod.evaluate(2j * math.pi * z0, tau).value
    want = e(z0) * brute_appell(2 * z0, 3 * z0, tau)
    assert abs(got - want) < 1e-9 * abs(want)


def test_mu_jet_symmetric():
    assert A.mu_jet(4, 3, 15, 3).agrees_with(A.mu_jet(3, 4, 15, 3), 15)


def test_counterterm_cancels_the_n0_pole():
    from mockforms.potential import theta_mu_derivative
    # raises if the w^-1 term survived
    theta_mu_derivative(8, 6, 8)


def test_mu_jet_matches_numeric_at_small_z():
    tau, z0 = 5j, 0.01 + 0.003j
    jet = A.mu_jet(2, 3, 12, 8)
    got = jet.evaluate(2j * math.pi * z0, tau)
    want = A.mu_numeric(2 * z0, 3 * z0, tau)
    assert abs(got.value - want.value) < 1e-10 * abs(want.value)


@pytest.mark.parametrize("klm,exponent", [((0, -1, -1), 1), ((-1, -1, -1), 3), ((1, 0, 0), 1), ((2, 1, 0), 5)])
def test_indefinite_exponent_spot_values(klm, exponent):
    assert A.indef_exponent(*klm) == exponent


def test_cone_enumeration_matches_a_brute_box():
    N = 12
    box = {(k, l, m) for k in range(-15, 16) for l in range(-15, 16) for m in range(-15, 16)
           if ((k > 0 and l >= 0 and m >= 0) or (k <= 0 and l < 0 and m < 0)) and A.indef_exponent(k, l, m) <= N}
    assert set(A.F_terms(N)) == box


def test_F_jet_equals_continuation_jet():
    N = 15
    assert A.F_jet(3, 2, 2, N, 2).agrees_with(A.F_continued_jet(3, 2, 2, N, 2), N)


# -- numeric mu -------------------------------------------------------------------------

def test_mu_numeric_against_brute_loop():
    tau, z1, z2 = 0.2 + 1.1j, 0.3 + 0.2j, -0.1 + 0.4j
    want = e(z1 / 2) / theta_numeric(z2, tau).value * brute_appell(z1, z2, tau)
    got = A.mu_numeric(z1, z2, tau)
    assert abs(got.value - want) <= got.err + 1e-13


def test_mu_numeric_rejects_lattice_points():
    tau = 1j
    with pytest.raises(SingularInputError):
        A.mu_numeric(1 + tau + 1e-12, 0.3 + 0.1j, tau)
    with pytest.raises(SingularInputError):
        A.mu_numeric(0.3, 0.0, tau)


def test_residue_at_z1_zero():
    tau, z2 = 0.1 + 1.2j, 0.25 + 0.2j
    target = -1 / (2j * math.pi * theta_numeric(z2, tau).value)
    errs = [abs(h * A.mu_numeric(h, z2, tau).value - target) for h in (1e-2, 1e-3, 1e-4)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-3 * abs(target)


# -- R ----------------------------------------------------------------------------------

def brute_R0(tau, n_max):
    v = tau.imag
    total = 0j
    for m in range(-n_max, n_max):
        n = m + 0.5
        # sgn(n) - erf(sqrt(pi) n sqrt(2v)) = sgn(n) erfc(sqrt(pi) |n| sqrt(2v))
        diff = math.copysign(1, n) * math.erfc(math.sqrt(math.pi) * abs(n) * math.sqrt(2 * v))
        if diff == 0:
            continue  # erfc underflowed; the term is below 1e-300 * e^(pi v n^2) anyway
        total += diff * (-1) ** m * cmath.exp(-1j * math.pi * n * n * tau)
    return total


def test_R0_two_cutoffs_and_evaluator_agree():
    tau = 1j
    a, b = brute_R0(tau, 20), brute_R0(tau, 40)
    assert abs(a - b) < 1e-12
    assert abs(A.R_numeric(0, tau).value - b) < 1e-12


def test_R_error_function_difference_decays_monotonically():
    vals = [math.erfc(math.sqrt(math.pi) * (m + 0.5) * math.sqrt(2)) for m in range(8)]
    assert all(x > y > 0 for x, y in zip(vals, vals[1:]))


def test_R_derivative_vanishes_at_zero():
    tau, h = 0.3 + 1.1j, 1e-5
    d = (A.R_numeric(h, tau).value - A.R_numeric(-h, tau).value) / (2 * h)
    assert abs(d) < 1e-8


@given(st.floats(-0.5, 0.5), st.floats(0.8, 2.0), st.floats(-0.5, 0.5), st.floats(-0.4, 0.4))
def test_R_is_even(u, v, x, y):
    tau, z = complex(u, v), complex(x, y * v)
    a, b = A.R_numeric(z, tau), A.R_numeric(-z, tau)
    assert abs(a.value - b.value) <= a.err + b.err + 1e-14


# -- F ------------------------------------------------------------------------------------

def test_F_direct_matches_brute_triple_sum():
    tau = 0.1 + 1.5j
    z = (0.2 + 0.5j, -0.3 + 0.6j, 0.1 + 0.9j)
    got = A.F_numeric(*z, tau, "direct")
    assert abs(got.value - brute_F(*z, tau)) < 1e-12


def test_F_direct_outside_region_is_rejected():
    with pytest.raises(DomainError):
        A.F_numeric(0.1, 0.2 - 0.1j, 0.3 + 0.2j, 1j, "direct")
    # the continuation still evaluates there
    A.F_numeric(0.1 + 0.05j, 0.2 - 0.1j, 0.3 + 0.2j, 1j, "continued")


def test_F_continued_near_pole_is_rejected():
    with pytest.raises(SingularInputError):
        A.F_numeric(0.3 + 0.1j, 1e-12, 0.2 + 0.3j, 1j, "continued")


def test_F_antiperiodic_in_z3():
    tau, z1, z2, z3 = 0.3 + 1.2j, 0.1 + 0.2j, 0.2 + 0.4j, -0.2 + 0.7j
    a = A.F_numeric(z1, z2, z3 + 1, tau).value
    assert abs(a + A.F_numeric(z1, z2, z3, tau).value) < 1e-12


def test_unknown_mode():
    with pytest.raises(ValueError):
        A.F_numeric(0.1, 0.2j, 0.3j, 1j, "sideways")


# -- theta quotient -------------------------------------------------------------------------

def test_theta_quotient_at_tau_i():
    samples = [(1j, complex(0.05 * k - 0.5, 0.1 + 0.04 * k), complex(0.3 - 0.03 * k, 0.85 - 0.035 * k))
               for k in range(20)]
    assert A.theta_quotient_check(samples, tol=1e-8).status == "pass"


def test_theta_quotient_swap_symmetry():
    tau, z1, z2 = 1j, 0.1 + 0.3j, -0.2 + 0.6j
    assert abs(A.theta_quotient_rhs(z1, z2, tau).value - A.theta_quotient_rhs(z2, z1, tau).value) < 1e-14
    assert abs(A.theta_quotient_lhs(z1, z2, tau).value - A.theta_quotient_lhs(z2, z1, tau).value) < 1e-12


def test_theta_quotient_pole_is_rejected():
    with pytest.raises(SingularInputError):
        A.theta_quotient_rhs(1e-13, 0.2 + 0.3j, 1j)


def test_theta_quotient_lhs_needs_region():
    with pytest.raises(DomainError):
        A.theta_quotient_lhs(0.1 - 0.1j, 0.2 + 0.3j, 1j)


# -- shadow operator ---------------------------------------------------------------------------

@pytest.mark.parametrize("tau", [1j, 1 / 3 + 1j, 2j])
def test_xi_of_R_is_minus_sqrt2_eta_cubed(tau):
    got = A.xi_numeric(lambda t: A.R_numeric(0, t), 0.5, tau, 1e-3).value
    want = -math.sqrt(2) * eta_numeric(tau).value ** 3
    assert abs(got - want) < 1e-4 * abs(want)


def test_xi_kills_holomorphic_functions():
    assert abs(A.xi_numeric(lambda t: eisenstein_numeric(6, t), 6, 0.2 + 1.1j).value) < 1e-6


def test_xi_of_completed_e2_against_hand_derivative():
    # d/dtaubar of -3/(pi v) is 3i/(2 pi v^2); so xi_2 gives 2 i v^2 * conj(that) = 3/pi
    for tau in (1j, 0.4 + 1.7j):
        assert abs(A.xi_numeric(e2_completed_numeric, 2, tau).value - 3 / math.pi) < 1e-8


def test_xi_rejects_large_steps():
    with pytest.raises(DomainError):
        A.xi_numeric(lambda t: 0, 2, 0.1j, h=0.05)
