import hypothesis.strategies as st
import pytest
from hypothesis import settings

from iwasawa import FiniteMeasure

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def shapes(draw, primes=(2, 3, 5), max_r=3, max_d=2, min_r=1):
    return draw(st.sampled_from(primes)), draw(st.integers(min_r, max_r)), draw(st.integers(1, max_d))


@st.composite
def measures_on(draw, p, r, d, max_support=4):
    m = p**r
    point = st.tuples(*[st.integers(0, m - 1)] * d)
    coeffs = draw(st.dictionaries(point, st.integers(0, m - 1), max_size=max_support))
    return FiniteMeasure(p, r, d, coeffs)


@st.composite
def measures(draw, **kw):
    max_support = kw.pop("max_support", 4)
    p, r, d = draw(shapes(**kw))
    return draw(measures_on(p, r, d, max_support))


@st.composite
def measure_pairs(draw, **kw):
    p, r, d = draw(shapes(**kw))
    return draw(measures_on(p, r, d)), draw(measures_on(p, r, d))


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
