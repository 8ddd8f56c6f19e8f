"""Load sweeps over contact laws, solvers and starting points."""

import csv
import enum
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import List, Optional

import numpy as np

from .. import __version__, asm, hybrid
from ..contact.problem import EnergyProblem, build_energy_problem
from ..core import Whitened
from .baseline import baseline_plain_subgradient, diminishing_steps
from .config import BenchConfig

log = logging.getLogger(__name__)

CSV_COLUMNS = ["law", "load", "solver", "start", "energy", "wall_time_s", "fevals", "category"]


class Category(str, enum.Enum):
    BEST = "Best"
    NEAR_BEST = "NearBest"
    OFF = "Off"


@dataclass
class CaseResult:
    law_name: str
    load: float
    solver_name: str
    start_index: int
    L_final: float
    wall_time_s: float
    function_evals: int
    category: Optional[Category] = None
    termination: str = ""
    error: str = ""
    u_final: Optional[np.ndarray] = field(default=None, repr=False)

    def csv_row(self):
        return {
            "law": self.law_name,
            "load": repr(float(self.load)),
            "solver": self.solver_name,
            "start": self.start_index,
            "energy": repr(float(self.L_final)),
            "wall_time_s": f"{self.wall_time_s:.6f}",
            "fevals": self.function_evals,
            "category": self.category.value if self.category else "",
        }


class CaseSetup:
    """Energy for one (law, load) pair plus the scaled whitened view the
    solvers iterate on.

    The solvers see ``z -> L(u(z)) / s`` with ``s`` the magnitude of the
    no-contact minimum energy, so sampling radii, perturbations and
    temperatures are measured relative to the problem's own energy scale.
    Reported energies are always physical, re-evaluated at ``u(z)``.
    """

    def __init__(self, energy: EnergyProblem):
        self.energy = energy
        self.u_linear = energy.minimizer_without_J()
        s = abs(energy.quadratic(self.u_linear)[0])
        self.energy_scale = s if s > 0 else 1.0
        self.objective = Whitened(energy, self.energy_scale)

    @classmethod
    def build(cls, cfg: BenchConfig, law, load):
        return cls(build_energy_problem(cfg.geometry, cfg.material, law, load))


def _seed_int(*parts):
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


def generate_starts(prob, n_starts, seed):
    """Starting displacements: zero, the no-contact elastic solution, then
    that solution scaled by factors drawn from U[0.25, 1.5]."""
    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    starts = [np.zeros(prob.dim)]
    if n_starts >= 2:
        u_lin = prob.minimizer_without_J()
        starts.append(u_lin)
        rng = np.random.default_rng(seed)
        starts.extend(u_lin * f for f in rng.uniform(0.25, 1.5, n_starts - 2))
    return starts


def _run_one(setup: CaseSetup, solver, z0, seed, cfg: BenchConfig):
    W = setup.objective
    if solver == "plain_subgradient":
        rep = baseline_plain_subgradient(W, z0, diminishing_steps(cfg.plain_t0), cfg.plain_iters)
        return rep.u_final, rep.function_evals, rep.termination.value
    if solver == "asm":
        rep = asm.solve(W, z0, cfg.solver, seed=hybrid.local_seed(seed, 0))
        return rep.u_final, rep.function_evals, rep.termination.value
    if solver == "hybrid":
        rep = hybrid.solve_hybrid(W, z0, cfg.anneal, cfg.solver, seed=seed)
        return rep.u_best, rep.function_evals, rep.termination.value
    raise ValueError(f"unknown solver {solver!r}")


def run_case(setup: CaseSetup, law_name, solver, starts, seed, cfg: BenchConfig):
    """Run ``solver`` from every start; failures become rows with NaN energy.

    The asm run from start ``i`` and the first local solve of the hybrid run
    from the same start share their seed, so the hybrid can never end worse
    than asm on a given start.
    """
    results = []
    for i, u0 in enumerate(starts):
        t0 = time.perf_counter()
        try:
            z0 = setup.objective.to_z(u0)
            z, fevals, term = _run_one(setup, solver, z0, _seed_int(seed, i), cfg)
            u = setup.objective.to_u(z)
            energy = setup.energy.value(u)
            err = ""
        except Exception as exc:  # recorded per row, the sweep goes on
            log.warning("%s/%s/%s start %d failed: %s", law_name, setup.energy.problem.load,
                        solver, i, exc)
            u, energy, fevals, term, err = None, float("nan"), 0, "Error", repr(exc)
        results.append(CaseResult(law_name, setup.energy.problem.load, solver, i, energy,
                                  time.perf_counter() - t0, fevals, termination=term,
                                  error=err, u_final=u))
    return results


def categorize(results: List[CaseResult], rtol=1e-12):
    """Assign Best / NearBest / Off within one (law, load) case.

    Best: equal to the case minimum (relative ``rtol``). NearBest: strictly
    between ``0.9 L_best + 0.01`` and ``L_best``. Off otherwise, including
    failed runs.
    """
    if not results:
        raise ValueError("cannot categorize an empty case")
    finite = [r.L_final for r in results if np.isfinite(r.L_final)]
    if not finite:
        for r in results:
            r.category = Category.OFF
        return results
    best = min(finite)
    lo, hi = sorted((0.9 * best + 0.01, best))
    for r in results:
        L = r.L_final
        if not np.isfinite(L):
            r.category = Category.OFF
        elif abs(L - best) <= rtol * max(1.0, abs(best)):
            r.category = Category.BEST
        elif lo < L < hi:
            r.category = Category.NEAR_BEST
        else:
            r.category = Category.OFF
    return results


def _sweep_task(args):
    cfg, law_index, load_index = args
    law = cfg.laws[law_index]
    load = cfg.loads[load_index]
    setup = CaseSetup.build(cfg, law, load)
    case_seed = _seed_int(cfg.seed, law_index, load_index)
    starts = generate_starts(setup.energy, cfg.n_starts, case_seed)
    rows = []
    for solver in cfg.solvers:
        rows += run_case(setup, law.name, solver, starts, case_seed, cfg)
    return categorize(rows)


def sort_key(r: CaseResult):
    return (r.law_name, r.load, r.solver_name, r.start_index)


def run_sweep(cfg: BenchConfig, write=True, keep_points=False):
    """Full cartesian sweep. Returns ``(results, csv_path)``; ``csv_path`` is
    None when ``write`` is false."""
    tasks = [(cfg, i, j) for i in range(len(cfg.laws)) for j in range(len(cfg.loads))]
    started = time.perf_counter()
    results = []
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            for rows in pool.map(_sweep_task, tasks):
                results += rows
    else:
        for t in tasks:
            rows = _sweep_task(t)
            log.info("%s load=%g done", rows[0].law_name, rows[0].load)
            results += rows
    results.sort(key=sort_key)
    if not keep_points:
        for r in results:
            r.u_final = None
    path = None
    if write:
        path = write_outputs(cfg, results, time.perf_counter() - started)
    return results, path


def write_csv(results, path):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for r in sorted(results, key=sort_key):
            w.writerow(r.csv_row())


def write_outputs(cfg: BenchConfig, results, elapsed_s):
    os.makedirs(cfg.output_path, exist_ok=True)
    csv_path = os.path.join(cfg.output_path, "sweep.csv")
    write_csv(results, csv_path)
    meta = {
        "seed": cfg.seed,
        "config_hash": cfg.config_hash(),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "elapsed_s": elapsed_s,
        "rows": len(results),
        "version": __version__,
        "config": cfg.to_dict(),
    }
    with open(os.path.join(cfg.output_path, "sweep_meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2)
    return csv_path


def best_counts(results):
    """Number of (law, load) cases in which each solver reaches the case
    best with at least one start."""
    counts = {}
    cases = {}
    for r in results:
        cases.setdefault((r.law_name, r.load), []).append(r)
    for rows in cases.values():
        for solver in {r.solver_name for r in rows}:
            hit = any(r.category == Category.BEST for r in rows if r.solver_name == solver)
            counts[solver] = counts.get(solver, 0) + int(hit)
    return counts
