import math
import warnings

import numpy as np
import pytest

from nehbt.coherence import BinarySystem, FarFieldWarning, SourceBody
from nehbt.radiometry import CONSTANTS


def random_system(rng, overlap_ok=False):
    """Random well-separated binary in the far field."""
    R_A = 10 ** rng.uniform(7.0, 9.5)
    R_B = R_A * rng.uniform(0.05, 1.0)
    d = (R_A + R_B) * rng.uniform(1.2, 50.0)
    D = d * 10 ** rng.uniform(4.0, 9.0)
    T_A, T_B = 10 ** rng.uniform(3.0, 4.6, 2)
    return BinarySystem(SourceBody(R_A, T_A), SourceBody(R_B, T_B), d, D)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def quiet_far_field():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FarFieldWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
