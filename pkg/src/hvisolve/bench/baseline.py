"""Classic normalized subgradient iteration, used as a comparison baseline."""

import math

import numpy as np

from ..asm import SolveReport, Termination
from ..core import as_vector


def diminishing_steps(t0=1.0):
    """``t_k = t0 / sqrt(k)``."""
    return lambda k: t0 / math.sqrt(k)


def baseline_plain_subgradient(obj, u0, step_rule=None, max_iters=2000):
    """``u <- u - t_k v / |v|``, keeping the best point seen.

    Stops immediately when a zero subgradient is returned.
    """
    step_rule = step_rule or diminishing_steps()
    u = as_vector(u0, obj.dim, "u0").copy()
    res = obj.evaluate(u)
    best_u, best_L = u.copy(), res.value
    trajectory = [(0, best_L, float(np.linalg.norm(res.subgradient)), float("nan"))]
    evals = 1
    termination = Termination.MAX_ITERS
    for k in range(1, max_iters + 1):
        norm = float(np.linalg.norm(res.subgradient))
        if norm == 0.0:
            termination = Termination.STATIONARY
            break
        t = step_rule(k)
        u = u - (t / norm) * res.subgradient
        res = obj.evaluate(u)
        evals += 1
        if res.value < best_L:
            best_u, best_L = u.copy(), res.value
        trajectory.append((k, best_L, norm, t))
    return SolveReport(
        u_final=best_u,
        L_final=best_L,
        serious_steps=len(trajectory) - 1,
        inner_steps_total=0,
        eta_reductions=0,
        function_evals=evals,
        subgradient_evals=evals,
        termination=termination,
        trajectory=trajectory,
    )
