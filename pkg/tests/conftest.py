from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mockforms.gaussian import GaussianRational
from mockforms.qseries import QSeries

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)


@st.composite
def qseries(draw, denom=48, max_terms=6, max_index=200, exact=False):
    keys = draw(st.lists(st.integers(0, max_index), max_size=max_terms, unique=True))
    coeffs = {k: draw(gaussians) for k in keys}
    trunc = None if exact else draw(st.integers(max_index // 2, 2 * max_index))
    return QSeries(coeffs, trunc, denom)


@st.composite
def invertible_qseries(draw, max_terms=5):
    """Valuation 0 with a nonzero constant term, known below a finite order."""
    c0 = draw(gaussians.filter(bool))
    rest = draw(st.lists(st.tuples(st.integers(1, 150), gaussians), max_size=max_terms))
    coeffs = {0: c0}
    for k, c in rest:
        coeffs[k] = c
    return QSeries(coeffs, draw(st.integers(48, 240)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
