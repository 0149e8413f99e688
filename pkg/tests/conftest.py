import os

import pytest
from hypothesis import strategies as st

from ddbar.diamond import ManifoldModel

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


@st.composite
def models(draw, min_n=0, max_n=4, max_entry=8):
    """Structurally valid models with arbitrary (usually non-realizable) entries."""
    n = draw(st.integers(min_n, max_n))
    entry = st.integers(0, max_entry)
    betti = draw(st.lists(entry, min_size=2 * n + 1, max_size=2 * n + 1))
    bc = [draw(st.lists(entry, min_size=n + 1, max_size=n + 1)) for _ in range(n + 1)]
    return ManifoldModel.from_lists("random", n, betti, bc)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def golden_dir():
    return GOLDEN


# criterion number -> (passed, description); filled by test_acceptance
RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, text = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
