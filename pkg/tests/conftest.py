import pytest

from steinberg import KLStore, weyl_group

SMALL = ["A1", "A2", "A3", "B2", "B3", "G2"]
RANK_LE_3 = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


@pytest.fixture
def group():
    return weyl_group


@pytest.fixture
def store():
    """Fresh KL store per call, sharing the cached group."""
    return lambda t: KLStore(weyl_group(t))


def word(g, *letters):
    return g.from_word(letters)


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
