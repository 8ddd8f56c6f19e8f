"""Aggregate subgradient method.

The local solver keeps exactly two subgradients per null step: the newest
one and the running aggregate. For fixed sampling radius ``eta`` the inner
loop either finds a direction that passes a sufficient-decrease test (a
*serious step* follows, with an expanding line search) or drives the
aggregate norm below ``delta`` (then ``eta`` is shrunk by ``gamma``). The
run stops once ``eta < eps``.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .core import as_vector, solve_lambda

__all__ = [
    "SolverConfig",
    "InnerState",
    "InnerOutcome",
    "InnerCapHit",
    "Termination",
    "SolveReport",
    "inner_loop",
    "line_search",
    "solve",
    "stationarity_diagnostic",
    "random_direction",
]


@dataclass(frozen=True)
class SolverConfig:
    eps: float = 1e-4
    delta: float = 1e-4
    gamma: float = 0.5
    c1: float = 0.2
    c2: float = 0.05
    eta0: float = 1.0
    max_inner: int = 1000
    max_serious: int = 100_000
    expansion_factor: float = 2.0

    def __post_init__(self):
        if not (self.eps > 0 and self.delta > 0):
            raise ValueError("eps and delta must be positive")
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must lie in (0, 1)")
        if not 0 < self.c2 < self.c1 < 1:
            raise ValueError("need 0 < c2 < c1 < 1")
        if not self.eps < self.eta0:
            raise ValueError("need eps < eta0")
        if self.max_inner < 1 or self.max_serious < 1:
            raise ValueError("iteration caps must be positive")
        if not self.expansion_factor > 1:
            raise ValueError("expansion_factor must exceed 1")


class Termination(str, enum.Enum):
    ETA_BELOW_EPS = "EtaBelowEps"
    INNER_CAP_HIT = "InnerCapHit"
    SERIOUS_CAP_HIT = "SeriousCapHit"
    # used by the plain subgradient baseline
    STATIONARY = "Stationary"
    MAX_ITERS = "MaxIters"


class InnerCapHit(RuntimeError):
    """The null-step loop exceeded ``max_inner`` iterations."""

    def __init__(self, message, outcome=None):
        super().__init__(message)
        self.outcome = outcome


@dataclass
class InnerState:
    k: int
    v: np.ndarray
    vtilde: np.ndarray
    vbar: Optional[np.ndarray] = None
    lam: float = 0.0
    d: Optional[np.ndarray] = None


@dataclass
class InnerOutcome:
    """Result of one inner loop.

    ``kind`` is ``"switch"`` (aggregate norm fell to ``delta``) or
    ``"descent"``. ``v_norms``/``vbar_norms`` hold one entry per iteration
    k = 1..m and exist so the contraction estimates can be checked after
    the fact.
    """

    kind: str
    vbar: np.ndarray
    k: int
    d: Optional[np.ndarray] = None
    trial_value: Optional[float] = None
    v_norms: List[float] = field(default_factory=list)
    vbar_norms: List[float] = field(default_factory=list)
    evals: int = 0

    @property
    def is_descent(self):
        return self.kind == "descent"


@dataclass
class SolveReport:
    u_final: np.ndarray
    L_final: float
    serious_steps: int
    inner_steps_total: int
    eta_reductions: int
    function_evals: int
    subgradient_evals: int
    termination: Termination
    # (l, L after step l, |vbar|, eta); entry l = 0 is the start point
    trajectory: List[Tuple[int, float, float, float]] = field(default_factory=list)
    # (L before, L after, sigma, eta, |vbar|) per serious step
    steps: List[Tuple[float, float, float, float, float]] = field(default_factory=list)
    inner_log: Optional[List[Tuple[float, InnerOutcome]]] = None

    @property
    def converged(self):
        return self.termination == Termination.ETA_BELOW_EPS


def random_direction(rng, n):
    """Uniform sample from the unit sphere in R^n."""
    while True:
        d = rng.standard_normal(n)
        norm = np.linalg.norm(d)
        if norm > 0:
            return d / norm


def inner_loop(obj, u, eta, cfg, rng, L_u=None):
    """Run the null-step loop at ``u`` with sampling radius ``eta``.

    Returns an :class:`InnerOutcome`; raises :class:`InnerCapHit` when
    ``cfg.max_inner`` iterations pass without a switch or descent.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    u = as_vector(u, obj.dim)
    evals = 0
    if L_u is None:
        L_u = obj.value(u)
        evals += 1

    d = random_direction(rng, obj.dim)
    v = obj.evaluate(u + eta * d).subgradient
    evals += 1
    state = InnerState(k=1, v=v, vtilde=v, d=d)
    v_norms, vbar_norms = [], []
    c1_eta = cfg.c1 * eta

    while True:
        state.lam, state.vbar = solve_lambda(state.v, state.vtilde)
        vbar_norm = float(np.linalg.norm(state.vbar))
        v_norms.append(float(np.linalg.norm(state.v)))
        vbar_norms.append(vbar_norm)
        if vbar_norm <= cfg.delta:
            return InnerOutcome("switch", state.vbar, state.k, v_norms=v_norms,
                                vbar_norms=vbar_norms, evals=evals)

        state.d = -state.vbar / vbar_norm
        trial = obj.evaluate(u + eta * state.d)
        evals += 1
        if trial.value - L_u <= -c1_eta * vbar_norm:
            return InnerOutcome("descent", state.vbar, state.k, d=state.d,
                                trial_value=trial.value, v_norms=v_norms,
                                vbar_norms=vbar_norms, evals=evals)

        # null step
        state.v = trial.subgradient
        state.vtilde = state.vbar
        state.k += 1
        if state.k > cfg.max_inner:
            outcome = InnerOutcome("cap", state.vbar, state.k - 1, v_norms=v_norms,
                                   vbar_norms=vbar_norms, evals=evals)
            raise InnerCapHit(f"inner loop exceeded {cfg.max_inner} iterations "
                              f"at eta={eta:g}", outcome)


def _expand(obj, u, d, eta, c2, vbar_norm, L_u, factor, max_expansions, L_eta=None):
    """Geometric search for the largest feasible step. Returns
    ``(sigma, L(u + sigma d), evals)``."""
    evals = 0
    if L_eta is None:
        L_eta = obj.value(u + eta * d)
        evals += 1
    sigma, L_sigma = eta, L_eta
    for _ in range(max_expansions):
        trial = sigma * factor
        if not math.isfinite(trial):
            break
        try:
            L_trial = obj.value(u + trial * d)
        except (ValueError, FloatingPointError):
            break
        evals += 1
        if not math.isfinite(L_trial) or L_trial - L_u > -c2 * trial * vbar_norm:
            break
        sigma, L_sigma = trial, L_trial
    return sigma, L_sigma, evals


def line_search(obj, u, d, eta, c2, vbar_norm, expansion_factor=2.0, max_expansions=1000):
    """Largest tested ``sigma`` in ``{eta, f eta, f^2 eta, ...}`` with
    ``L(u + sigma d) - L(u) <= -c2 sigma |vbar|``.

    ``sigma = eta`` is assumed feasible (the caller has already passed the
    stronger descent test with ``c1 > c2``).
    """
    u = as_vector(u, obj.dim)
    L_u = obj.value(u)
    sigma, _, _ = _expand(obj, u, np.asarray(d, dtype=float), eta, c2, vbar_norm, L_u,
                          expansion_factor, max_expansions)
    return sigma


def solve(obj, u0, cfg=None, seed=None, record_inner=False):
    """Minimize ``obj`` from ``u0`` with the aggregate subgradient method.

    Parameters
    ----------
    obj : objective
        Provides ``dim``, ``value`` and ``evaluate``.
    u0 : array_like
        Starting point.
    cfg : SolverConfig, optional
    seed : int or sequence of int, optional
        Seeds the generator used for the initial direction of each inner
        loop. Identical inputs give bitwise-identical reports.
    record_inner : bool
        Keep every :class:`InnerOutcome` (with its ``eta``) in
        ``report.inner_log``.

    Returns
    -------
    SolveReport
        Cap hits are reported through ``termination``; they never raise.
    """
    cfg = cfg or SolverConfig()
    rng = np.random.default_rng(seed)
    u = as_vector(u0, obj.dim, "u0").copy()
    L_u = obj.value(u)
    fevals, gevals = 1, 0
    eta = cfg.eta0
    serious = inner_total = reductions = 0
    trajectory = [(0, L_u, float("nan"), eta)]
    steps = []
    inner_log = [] if record_inner else None
    termination = Termination.ETA_BELOW_EPS

    while True:
        try:
            out = inner_loop(obj, u, eta, cfg, rng, L_u=L_u)
        except InnerCapHit as exc:
            inner_total += exc.outcome.k
            fevals += exc.outcome.evals
            gevals += exc.outcome.evals
            if inner_log is not None:
                inner_log.append((eta, exc.outcome))
            termination = Termination.INNER_CAP_HIT
            break
        inner_total += out.k
        fevals += out.evals
        gevals += out.evals
        if inner_log is not None:
            inner_log.append((eta, out))

        if not out.is_descent:
            eta *= cfg.gamma
            reductions += 1
            if eta < cfg.eps:
                break
            continue

        if serious >= cfg.max_serious:
            termination = Termination.SERIOUS_CAP_HIT
            break
        vbar_norm = float(np.linalg.norm(out.vbar))
        sigma, L_new, n = _expand(obj, u, out.d, eta, cfg.c2, vbar_norm, L_u,
                                  cfg.expansion_factor, cfg.max_inner,
                                  L_eta=out.trial_value)
        fevals += n
        u = u + sigma * out.d
        steps.append((L_u, L_new, sigma, eta, vbar_norm))
        L_u = L_new
        serious += 1
        trajectory.append((serious, L_u, vbar_norm, eta))

    return SolveReport(
        u_final=u,
        L_final=L_u,
        serious_steps=serious,
        inner_steps_total=inner_total,
        eta_reductions=reductions,
        function_evals=fevals,
        subgradient_evals=gevals,
        termination=termination,
        trajectory=trajectory,
        steps=steps,
        inner_log=inner_log,
    )


def min_norm_hull(points, tol=1e-12, max_iter=None):
    """Norm of the minimum-norm point of ``conv(points)``.

    Each iteration moves the weight of the active point with the largest
    ``<p, x>`` onto the point with the smallest one; the step length is the
    two-point aggregation of :func:`solve_lambda`. Stops once the optimality
    gap ``max_active <p, x> - min <p, x>`` is at most ``tol``. The result is
    an upper bound on the exact minimum norm.
    """
    points = np.asarray(points, dtype=float)
    norms = np.einsum("ij,ij->i", points, points)
    w = np.zeros(len(points))
    start = int(np.argmin(norms))
    w[start] = 1.0
    x = points[start].copy()
    max_iter = max_iter or 1000 * len(points)
    for _ in range(max_iter):
        proj = points @ x
        lo = int(np.argmin(proj))
        active = np.flatnonzero(w > 0)
        hi = int(active[np.argmax(proj[active])])
        if proj[hi] - proj[lo] <= tol:
            break
        moved = x + w[hi] * (points[lo] - points[hi])
        lam, x = solve_lambda(moved, x)
        shift = lam * w[hi]
        w[hi] -= shift
        w[lo] += shift
        if lam == 1.0:
            w[hi] = 0.0
    return float(np.linalg.norm(x))


def stationarity_diagnostic(obj, u, eta, n_samples, seed=None):
    """Sampled estimate of ``min |v|`` over the hull of subgradients taken
    on the sphere of radius ``eta`` around ``u``.

    The value over-estimates the exact quantity: the hull is built from
    ``n_samples`` random directions only.
    """
    u = as_vector(u, obj.dim)
    if eta <= 0:
        raise ValueError("eta must be positive")
    if n_samples < obj.dim + 1:
        raise ValueError("need at least dim + 1 samples")
    rng = np.random.default_rng(seed)
    grads = [obj.evaluate(u + eta * random_direction(rng, obj.dim)).subgradient
             for _ in range(n_samples)]
    return min_norm_hull(grads)
