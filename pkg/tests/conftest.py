import numpy as np
import pytest

from gaquadrics import dcga, dpga, qcga

ALGEBRAS = {"dcga": dcga.ALGEBRA, "dpga": dpga.ALGEBRA, "qcga": qcga.ALGEBRA}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def rel_err(got: float, want: float, scale: float = 1.0) -> float:
    return abs(got - want) / max(abs(want), scale)
