import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def commutative_tables(draw, min_order=1, max_order=4):
    k = draw(st.integers(min_order, max_order))
    t = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(i, k):
            t[i, j] = t[j, i] = draw(st.integers(0, k - 1))
    return t.tolist()


def multiset_elems(order, min_size=2, max_size=6):
    return st.lists(st.integers(0, order - 1), min_size=min_size, max_size=max_size)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance
    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
