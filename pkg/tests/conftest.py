import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from treehardy.kalgebra import KElement

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def complexes(radius=0.9):
    return st.builds(
        lambda r, t: complex(r * np.cos(t), r * np.sin(t)),
        st.floats(0, radius), st.floats(0, 2 * np.pi),
    )


@st.composite
def kelements(draw, max_prefix=4, radius=0.9, tail_radius=0.7, k2=False):
    prefix = draw(st.lists(complexes(radius), max_size=max_prefix))
    tail = 0.0 if k2 else draw(complexes(tail_radius))
    return KElement(prefix, tail)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
