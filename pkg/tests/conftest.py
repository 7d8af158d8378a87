import numpy as np
import pytest
from hypothesis import settings

from paraslant.ambient import gallery_lookup
from paraslant.frame import ImmersionChart

settings.register_profile("pkg", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("pkg")


def make_chart(components, ambient="J-g-R4", params=("u", "v"), constants=None, lo=-1.0, hi=1.0, name="test"):
    return ImmersionChart(tuple(params), {p: [lo, hi] for p in params}, dict(constants or {}),
                          tuple(components), gallery_lookup(ambient), name)


@pytest.fixture
def graph_chart():
    # x = (u, v, u^2, 0) in (R^4, J, g)
    return make_chart(["u", "v", "u^2", "0"])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
