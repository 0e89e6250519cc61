import numpy as np
import pytest

from orbitwave import specfun
from orbitwave._backend import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Touch every kernel once so JIT compilation never lands in a timed test."""
    x = np.linspace(0.1, 0.9, 4)
    specfun.laguerre_log_array(3, 1.0, x)
    specfun.hermite_log_array(3, x)
    specfun.assoc_legendre_normalized_array(3, 1, x)
    u = np.empty(4)
    kernels.kepler_solve(x, 0.5, u, 1e-13, 60)
    out = np.empty(4)
    kernels.gaussian_smooth(x, np.full(4, 2.0), out)
