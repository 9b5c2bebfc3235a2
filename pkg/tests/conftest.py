from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from equistream.streams import Stream

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL = [Fraction(v) for v in range(5)]


def values(pool=SMALL):
    return st.sampled_from(pool)


@st.composite
def ep_streams(draw, pool=SMALL, max_pre=4, max_per=5):
    pre = draw(st.lists(values(pool), max_size=max_pre))
    per = draw(st.lists(values(pool), min_size=1, max_size=max_per))
    return Stream.ep(pre, per)


@st.composite
def ep_pairs(draw, pool=SMALL):
    """Two periodic streams that share a tail shape often enough to be interesting."""
    x = draw(ep_streams(pool))
    if draw(st.booleans()):
        return x, draw(ep_streams(pool))
    pre = list(x.pre)
    per = list(x.per)
    for lst in (pre, per):
        for k in range(len(lst)):
            if draw(st.integers(0, 3)) == 0:
                lst[k] = draw(values(pool))
    return x, Stream.ep(pre, per)


# acceptance lines, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
