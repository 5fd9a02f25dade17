import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mockforms.classical import eta
from mockforms.errors import DenominatorError, DivergentTailError, DomainError, NotInvertibleError
from mockforms.gaussian import GaussianRational
from mockforms.qseries import QSeries, dumps, loads, qs_eval, qs_inv, qs_mul

from conftest import gaussians, invertible_qseries, qseries


def poly(*coeffs, order=None):
    return QSeries.from_terms(enumerate(coeffs), order)


def test_telescoping_product():
    assert qs_mul(poly(1, -1), poly(1, 1, 1)) == poly(1, 0, 0, -1)


def test_fractional_exponents_add():
    p = qs_mul(QSeries.monomial(Fraction(1, 16)), QSeries.monomial(Fraction(1, 8)))
    assert p == QSeries.monomial(Fraction(3, 16))


def test_truncation_propagates_pessimistically():
    a, b = eta(5), eta(50)
    p = qs_mul(a, b)
    # known below 5 + val(eta) = 5 + 1/24
    assert p.order == 5 + Fraction(1, 24)
    assert p.agrees_with(qs_mul(eta(50), eta(50)), p.order)


def test_inverse_of_one_minus_q_is_geometric():
    inv = qs_inv(poly(1, -1), order=10)
    assert inv == QSeries.from_terms([(k, 1) for k in range(10)], 10)


def test_inverse_of_monomial():
    assert qs_inv(QSeries.monomial(Fraction(1, 8))) == QSeries.monomial(Fraction(-1, 8))


def test_eta_times_its_inverse():
    e = eta(101)
    prod = qs_mul(e, qs_inv(e))
    assert prod.agrees_with(QSeries.one(), 100)
    assert prod.order >= 100


def test_zero_is_not_invertible():
    with pytest.raises(NotInvertibleError):
        qs_inv(QSeries.zero(10))


def test_denominators_are_normalized_to_the_lcm():
    a = QSeries({1: 1}, None, 2)      # q^(1/2)
    b = QSeries({1: 1}, None, 3)      # q^(1/3)
    assert qs_mul(a, b) == QSeries({5: 1}, None, 6)


def test_denominator_overflow_reports_required_value():
    a = QSeries({1: 1}, None, 48 * 1000)
    b = QSeries({1: 1}, None, 7)
    with pytest.raises(DenominatorError) as info:
        qs_mul(a, b)
    assert info.value.required == 48 * 1000 * 7


def test_exponent_not_representable():
    with pytest.raises(DenominatorError):
        QSeries.monomial(Fraction(1, 5))


def test_no_zero_is_stored_and_nothing_at_or_beyond_trunc():
    s = QSeries({0: 0, 3: 1, 48: 2, 100: 5}, 60)
    assert s.keys() == [3, 48]


def test_text_format_round_trip_and_layout():
    s = QSeries({0: 1, 5: GaussianRational(Fraction(-1, 3), 2)}, 96)
    text = dumps(s)
    assert text.splitlines() == ["denom=48 trunc=96", "0 1/1 0/1", "5 -1/3 2/1"]
    assert loads(text) == s
    assert loads(dumps(QSeries.one())).trunc is None


def test_text_format_rejects_unsorted_terms():
    with pytest.raises(ValueError, match="line 3"):
        loads("denom=48 trunc=10\n5 1/1 0/1\n2 1/1 0/1\n")


def test_eval_constant_one():
    v = qs_eval(QSeries.one(), 1j)
    assert v.value == 1 and v.err == 0


def test_eval_q_at_i():
    v = qs_eval(QSeries.monomial(1), 1j)
    assert abs(v.value - 0.00186744273170799) < 1e-15


def test_eval_eta_at_i_matches_gamma_closed_form():
    expected = math.gamma(0.25) / (2 * math.pi ** 0.75)
    v = qs_eval(eta(50), 1j)
    assert abs(v.value - expected) < 1e-14
    assert abs(v.value - 0.768225) < 1e-6


def test_eval_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        qs_eval(QSeries.one(), -1j)


def test_eval_divergent_majorant_is_an_error():
    # two known q-orders cannot bound the tail this close to the real axis
    with pytest.raises(DivergentTailError):
        qs_eval(eta(2), 0.0005j)


@pytest.mark.parametrize("tau", [0.5j, 0.3 + 0.7j, -0.4 + 1.5j, 2j])
def test_eval_error_bound_is_honest(tau):
    full = qs_eval(eta(80), tau)
    for n in (4, 8, 20):
        short = qs_eval(eta(n), tau)
        assert abs(short.value - full.value) <= short.err + full.err


@given(qseries(), qseries(), qseries())
def test_ring_axioms(a, b, c):
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert (a * (b + c)).agrees_with(a * b + a * c)
    assert (a * b) == (b * a)
    assert (a * QSeries.one()) == a
    assert (a + QSeries.zero()) == a


@given(invertible_qseries())
def test_inverse_is_two_sided(a):
    b = qs_inv(a)
    one = QSeries.one()
    assert qs_mul(a, b).agrees_with(one)
    assert qs_mul(b, a).agrees_with(one)


@given(invertible_qseries(), st.integers(1, 47))
def test_truncation_monotonicity(a, cut):
    # recomputing with more known terms never changes what was already reported
    short = a.truncate(Fraction(a.trunc - cut, 48))
    assert qs_inv(a).agrees_with(qs_inv(short), qs_inv(short).order)
    sq, sq_short = a * a, short * short
    assert sq.agrees_with(sq_short, sq_short.order)
