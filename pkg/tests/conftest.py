from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cfree.series import NcSeries, words

settings.register_profile("cfree", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("cfree")

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def series(draw, d=2, N=4, min_degree=0, unit=False):
    """Random sparse series over ``d`` letters to degree ``N``."""
    ws = list(words(d, N, min_degree))
    coeffs = draw(st.dictionaries(st.sampled_from(ws), small_fractions, max_size=len(ws)))
    if unit:
        coeffs[()] = Fraction(1)
    return NcSeries(d, N, coeffs)


def catalan(n):
    from math import comb
    return comb(2 * n, n) // (n + 1)


@pytest.fixture
def z():
    """``z(i, N=4, d=2)`` builds the variable series ``z_i``."""
    return lambda i, N=4, d=2: NcSeries.variable(i, d, N)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
