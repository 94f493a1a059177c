import math

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from twofermion.frames import BogoliubovParams
from twofermion.states import SSRState

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    def record(criterion, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


unit = st.floats(0.0, 1.0, allow_nan=False)
phase = st.floats(0.0, 2 * math.pi, allow_nan=False)


@st.composite
def ssr_states(draw, diagonal=False):
    raw = [draw(st.floats(1e-3, 1.0)) for _ in range(4)]
    w1, w2, v1, v2 = (x / sum(raw) for x in raw)
    b = []
    for w, v in ((w1, v1), (w2, v2)):
        r = 0.0 if diagonal else draw(unit) * math.sqrt(w * v)
        theta = draw(phase)
        b.append(r * complex(math.cos(theta), math.sin(theta)))
    return SSRState(w1=w1, w2=w2, v1=v1, v2=v2, b1=b[0], b2=b[1])


@st.composite
def su2_pairs(draw):
    x = np.array([draw(st.floats(-1, 1)) for _ in range(4)])
    n = np.linalg.norm(x)
    if n < 1e-3:
        x, n = np.array([1.0, 0, 0, 0]), 1.0
    x = x / n
    return complex(x[0], x[1]), complex(x[2], x[3])


@st.composite
def frame_params(draw):
    alpha, beta = draw(su2_pairs())
    zeta, omega = draw(su2_pairs())
    return BogoliubovParams(alpha, beta, zeta, omega, draw(phase))
