"""Simulated-annealing restarts around the aggregate subgradient solver.

Each local solution is perturbed along one random coordinate axis. A trial
that beats the best value so far restarts the local solver immediately;
otherwise it restarts with the Metropolis probability at the current
temperature, and a rejected trial cools the temperature geometrically.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import asm
from .core import as_vector

__all__ = [
    "AnnealConfig",
    "Trigger",
    "HybridTermination",
    "HybridReport",
    "metropolis",
    "perturb",
    "local_seed",
    "solve_hybrid",
]


@dataclass(frozen=True)
class AnnealConfig:
    t0: float = 10.0
    tmin: float = 0.01
    alpha: float = 0.9
    max_local_searches: int = 1000
    # off by default: the literal rule only moves a coordinate upward
    signed_perturbation: bool = False

    def __post_init__(self):
        if not self.t0 > 1:
            raise ValueError("t0 must exceed 1")
        if not 0 < self.tmin < self.t0:
            raise ValueError("need 0 < tmin < t0")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.max_local_searches < 1:
            raise ValueError("max_local_searches must be positive")


class Trigger(str, enum.Enum):
    START = "Start"
    NEW_BEST = "NewBest"
    METROPOLIS_ACCEPT = "MetropolisAccept"


class HybridTermination(str, enum.Enum):
    FROZEN = "Frozen"
    LOCAL_CAP_HIT = "LocalCapHit"


@dataclass
class HybridReport:
    u_best: np.ndarray
    L_best: float
    local_searches: int
    cooling_steps: int
    accepted_uphill: int
    accepted_best: int
    termination: HybridTermination
    # (trigger, L of the restart point, L after the local solve)
    per_restart: List[Tuple[Trigger, float, float]] = field(default_factory=list)
    # (L trial, L reference, T, outcome) with outcome in new_best/accept/reject
    trials: List[Tuple[float, float, float, str]] = field(default_factory=list)
    best_history: List[float] = field(default_factory=list)
    function_evals: int = 0
    final_temperature: float = float("nan")
    local_reports: Optional[List[asm.SolveReport]] = None


def metropolis(L_u, L_w, T):
    """Acceptance probability ``min(1, exp((L_u - L_w) / T))``."""
    if T <= 0:
        raise ValueError("temperature must be positive")
    x = (L_u - L_w) / T
    if x >= 0:
        return 1.0
    return math.exp(x) if x > -745.0 else 0.0


def perturb(u, rng, signed=False):
    """Return ``u + mu e_i`` with ``mu ~ U[0, 1]`` and ``i`` uniform.

    With ``signed=True`` the step direction is ``+-e_i`` with equal odds.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.size < 1:
        raise ValueError("u must be a nonempty 1-d vector")
    mu = float(rng.random())
    i = int(rng.integers(u.size))
    if signed and rng.random() < 0.5:
        mu = -mu
    w = u.copy()
    w[i] += mu
    return w


def local_seed(seed, k):
    """Seed of the k-th local solve inside :func:`solve_hybrid`.

    Exposed so a stand-alone local run can reproduce the hybrid's first
    local solve exactly.
    """
    return [int(seed), 1, int(k)]


def solve_hybrid(obj, u0, acfg=None, lcfg=None, seed=0, keep_local_reports=False):
    """Global minimization by annealed restarts of :func:`asm.solve`.

    Parameters
    ----------
    obj : objective
    u0 : array_like
    acfg : AnnealConfig, optional
    lcfg : asm.SolverConfig, optional
    seed : int
        Drives trial generation, Metropolis draws and, through
        :func:`local_seed`, every local solve.

    Returns
    -------
    HybridReport
    """
    acfg = acfg or AnnealConfig()
    lcfg = lcfg or asm.SolverConfig()
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2**63))
    rng = np.random.default_rng([int(seed), 0])

    u_bar = as_vector(u0, obj.dim, "u0").copy()
    L_bar = obj.value(u_bar)
    u_best, L_best = u_bar.copy(), L_bar
    fevals = 1
    k = 0
    cooling = 0
    uphill = new_best = 0
    trigger = Trigger.START
    per_restart, trials, best_history = [], [], [L_best]
    local_reports = [] if keep_local_reports else None
    termination = HybridTermination.FROZEN

    while True:
        if k >= acfg.max_local_searches:
            termination = HybridTermination.LOCAL_CAP_HIT
            break
        rep = asm.solve(obj, u_bar, lcfg, seed=local_seed(seed, k))
        k += 1
        fevals += rep.function_evals
        if local_reports is not None:
            local_reports.append(rep)
        u_loc, L_loc = rep.u_final, rep.L_final
        per_restart.append((trigger, L_bar, L_loc))
        if L_loc < L_best:
            u_best, L_best = u_loc.copy(), L_loc
        best_history.append(L_best)

        frozen = False
        while True:
            T = acfg.t0 * acfg.alpha ** cooling
            w = perturb(u_loc, rng, acfg.signed_perturbation)
            L_w = obj.value(w)
            fevals += 1
            if L_w < L_best:
                u_best, L_best = w.copy(), L_w
                best_history.append(L_best)
                trials.append((L_w, L_loc, T, "new_best"))
                new_best += 1
                trigger = Trigger.NEW_BEST
                break
            beta = rng.random()
            if beta <= metropolis(L_loc, L_w, T):
                trials.append((L_w, L_loc, T, "accept"))
                if L_w > L_loc:
                    uphill += 1
                trigger = Trigger.METROPOLIS_ACCEPT
                break
            trials.append((L_w, L_loc, T, "reject"))
            cooling += 1
            if acfg.t0 * acfg.alpha ** cooling < acfg.tmin:
                frozen = True
                break
        if frozen:
            break
        u_bar, L_bar = w, L_w

    return HybridReport(
        u_best=u_best,
        L_best=L_best,
        local_searches=k,
        cooling_steps=cooling,
        accepted_uphill=uphill,
        accepted_best=new_best,
        termination=termination,
        per_restart=per_restart,
        trials=trials,
        best_history=best_history,
        function_evals=fevals,
        final_temperature=acfg.t0 * acfg.alpha ** cooling,
        local_reports=local_reports,
    )
