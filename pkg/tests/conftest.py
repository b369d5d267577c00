import math

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from steerkit.states import HALF_PI, TWO_PI, Rank2Params

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

angle = st.floats(0.0, HALF_PI, allow_nan=False)
azimuth = st.floats(0.0, TWO_PI, exclude_max=True, allow_nan=False)
weight = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def rank2_params(draw):
    return Rank2Params(draw(angle), draw(angle), draw(angle), draw(azimuth), draw(weight))


@st.composite
def unitary2(draw):
    """Haar-ish 2x2 unitary from three Euler angles and a phase."""
    a, b, c, g = (draw(st.floats(0.0, TWO_PI)) for _ in range(4))
    rz = lambda x: np.diag([np.exp(-0.5j * x), np.exp(0.5j * x)])
    ry = np.array([[math.cos(b / 2), -math.sin(b / 2)], [math.sin(b / 2), math.cos(b / 2)]])
    return np.exp(1j * g) * rz(a) @ ry @ rz(c)


def random_params(rng, n):
    out = []
    for _ in range(n):
        t, p, a = rng.uniform(0.0, HALF_PI, 3)
        out.append(Rank2Params(float(t), float(p), float(a), float(rng.uniform(0.0, TWO_PI)), float(rng.uniform())))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
