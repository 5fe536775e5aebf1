import math
import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pfconflict import PFN
from pfconflict.reference import reference_loss, reference_panel, reference_system

settings.register_profile(
    "default",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=1000, derandomize=True, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def pfns(draw):
    """Valid PFNs, drawn in polar form so the boundary mu^2 + nu^2 = 1 is reachable."""
    r = draw(st.one_of(unit, st.just(1.0), st.just(0.0)))
    theta = draw(st.floats(min_value=0.0, max_value=math.pi / 2))
    return PFN(min(r * math.cos(theta), 1.0), min(r * math.sin(theta), 1.0))


@st.composite
def weight_vectors(draw, n):
    raw = draw(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=n, max_size=n).filter(lambda w: sum(w) > 1e-3))
    total = math.fsum(raw)
    ks = [w / total for w in raw]
    ks[-1] = max(0.0, 1.0 - math.fsum(ks[:-1]))
    return ks


@pytest.fixture(scope="session")
def table():
    return reference_system()


@pytest.fixture(scope="session")
def loss():
    return reference_loss()


@pytest.fixture(scope="session")
def panel():
    return reference_panel()


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[n])
