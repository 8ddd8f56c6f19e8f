import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hvisolve.core import FunctionObjective

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def piecewise_linear(slopes, offsets):
    """Convex ``max_i <a_i, u> + c_i`` with an active-piece subgradient."""
    slopes = np.asarray(slopes, float)
    offsets = np.asarray(offsets, float)

    def fun(u):
        vals = slopes @ u + offsets
        i = int(np.argmax(vals))
        return vals[i], slopes[i].copy()

    return FunctionObjective(fun, slopes.shape[1])


def two_well():
    """``min((u+1)^2, (u-2)^2 - 0.5)``: local well at -1 (L = 0), global
    well at 2 (L = -0.5). A minimum of two convex pieces is DC."""

    def fun(u):
        x = u[0]
        f, g = (x + 1.0) ** 2, (x - 2.0) ** 2 - 0.5
        if f <= g:
            return f, np.array([2.0 * (x + 1.0)])
        return g, np.array([2.0 * (x - 2.0)])

    return FunctionObjective(fun, 1)


@pytest.fixture
def pl_objective():
    return piecewise_linear


@pytest.fixture(scope="session")
def default_problem():
    from hvisolve.contact import build_energy_problem

    return build_energy_problem(load=1.0)
