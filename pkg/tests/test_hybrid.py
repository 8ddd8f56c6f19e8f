import math

import numpy as np
import pytest
from scipy import stats

from conftest import two_well
from hvisolve import asm, hybrid
from hvisolve.asm import SolverConfig
from hvisolve.core import QuadPlusJ
from hvisolve.hybrid import AnnealConfig, HybridTermination, Trigger


class ScriptedRng:
    """Stand-in generator returning fixed draws."""

    def __init__(self, mu, i):
        self.mu, self.i = mu, i

    def random(self):
        return self.mu

    def integers(self, n):
        return self.i


def test_metropolis_values():
    assert hybrid.metropolis(1.0, 1.0, 0.3) == 1.0
    assert hybrid.metropolis(2.0, 2.0 - 5.0, 7.0) == 1.0
    T = 0.37
    assert abs(hybrid.metropolis(1.5, 1.5 + T * math.log(2), T) - 0.5) <= 1e-12


def test_metropolis_extremes():
    assert hybrid.metropolis(0.0, 1e300, 1e-300) == 0.0
    assert hybrid.metropolis(1e300, -1e300, 1e-300) == 1.0
    with pytest.raises(ValueError):
        hybrid.metropolis(0.0, 1.0, 0.0)


def test_perturb_zero_step():
    u = np.array([1.0, -2.0, 3.0])
    np.testing.assert_array_equal(hybrid.perturb(u, ScriptedRng(0.0, 1)), u)


def test_perturb_forced_draw():
    # i = 2 in one-based numbering is index 1
    np.testing.assert_array_equal(hybrid.perturb(np.zeros(2), ScriptedRng(0.7, 1)), [0.0, 0.7])


def test_perturb_changes_one_coordinate():
    rng = np.random.default_rng(0)
    u = np.arange(5.0)
    for _ in range(200):
        w = hybrid.perturb(u, rng)
        diff = w - u
        assert np.count_nonzero(diff) <= 1
        assert 0.0 <= diff.sum() <= 1.0


def test_perturb_distribution():
    n, draws = 4, 100_000
    rng = np.random.default_rng(123)
    u = np.zeros(n)
    idx, mus = np.empty(draws, int), np.empty(draws)
    for k in range(draws):
        w = hybrid.perturb(u, rng)
        nz = np.flatnonzero(w)
        idx[k] = nz[0] if nz.size else -1
        mus[k] = w.sum()
    assert np.all(idx >= 0)  # mu = 0 has probability zero
    counts = np.bincount(idx, minlength=n)
    p = 1.0 / n
    sigma = math.sqrt(draws * p * (1 - p))
    assert np.all(np.abs(counts - draws * p) <= 3 * sigma)
    assert stats.kstest(mus, "uniform").pvalue > 0.01


def test_perturb_signed_flag():
    rng = np.random.default_rng(1)
    steps = [hybrid.perturb(np.zeros(1), rng, signed=True)[0] for _ in range(2000)]
    assert min(steps) < 0 < max(steps)
    assert all(abs(s) <= 1 for s in steps)


def test_anneal_config_validation():
    with pytest.raises(ValueError):
        AnnealConfig(t0=1.0, tmin=0.5)
    with pytest.raises(ValueError):
        AnnealConfig(t0=5.0, tmin=5.0)
    with pytest.raises(ValueError):
        AnnealConfig(alpha=1.0)
    with pytest.raises(ValueError):
        AnnealConfig(max_local_searches=0)


def _quad():
    return QuadPlusJ(np.diag([1.0, 2.0]), [-1.0, 2.0])  # L* = -1.5 at (1, -1)


def test_convex_first_local_solve_is_global():
    acfg = AnnealConfig(t0=2.0, tmin=0.01, alpha=0.7)
    lcfg = SolverConfig(eps=1e-6, delta=1e-6)
    rep = hybrid.solve_hybrid(_quad(), [4.0, 4.0], acfg, lcfg, seed=3)
    first = rep.per_restart[0]
    assert first[0] == Trigger.START
    assert first[2] == pytest.approx(-1.5, abs=1e-9)
    # later improvements can only polish the local solver's tolerance
    assert first[2] - rep.L_best <= 1e-9
    assert rep.termination == HybridTermination.FROZEN
    assert rep.cooling_steps == math.ceil(math.log(acfg.tmin / acfg.t0, acfg.alpha))
    assert rep.final_temperature < acfg.tmin


def test_two_well_escape_small():
    acfg = AnnealConfig(t0=10.0, tmin=0.01, alpha=0.9)
    lcfg = SolverConfig(eps=1e-4, delta=1e-4)
    hits = sum(abs(hybrid.solve_hybrid(two_well(), [-1.0], acfg, lcfg, seed=s).L_best + 0.5) < 1e-3
               for s in range(8))
    assert hits >= 7


def _check_log_invariants(rep, acfg, L0):
    hist = rep.best_history
    assert all(b <= a for a, b in zip(hist, hist[1:]))
    seen = [L0] + [r[2] for r in rep.per_restart] + [t[0] for t in rep.trials]
    assert rep.L_best == min(seen)
    # temperatures: t0 alpha^j, j = rejections so far
    rejects = 0
    for L_w, L_ref, T, outcome in rep.trials:
        assert T == acfg.t0 * acfg.alpha**rejects
        rejects += outcome == "reject"
    assert rejects == rep.cooling_steps
    # each restart after the first follows a non-rejected trial of the same kind
    moves = [t for t in rep.trials if t[3] != "reject"]
    restarts = rep.per_restart[1:]
    assert len(moves) == len(restarts)
    for (L_w, _, _, outcome), (trigger, L_restart, _) in zip(moves, restarts):
        assert L_restart == L_w
        assert trigger == (Trigger.NEW_BEST if outcome == "new_best" else Trigger.METROPOLIS_ACCEPT)


def test_log_invariants_two_well():
    acfg = AnnealConfig(t0=5.0, tmin=0.05, alpha=0.8)
    lcfg = SolverConfig(eps=1e-4, delta=1e-4)
    for seed in range(5):
        rep = hybrid.solve_hybrid(two_well(), [-1.0], acfg, lcfg, seed=seed)
        _check_log_invariants(rep, acfg, two_well().value([-1.0]))


def test_hot_run_accepts_everything():
    acfg = AnnealConfig(t0=1e12, tmin=0.999e12, alpha=0.5, max_local_searches=1001)
    lcfg = SolverConfig(eps=1e-2, delta=1e-2)
    rep = hybrid.solve_hybrid(two_well(), [-1.0], acfg, lcfg, seed=0)
    assert len(rep.trials) >= 1000
    assert all(t[3] != "reject" for t in rep.trials)
    assert rep.termination == HybridTermination.LOCAL_CAP_HIT


def test_local_cap():
    acfg = AnnealConfig(t0=1e6, tmin=1.0, alpha=0.999, max_local_searches=3)
    rep = hybrid.solve_hybrid(two_well(), [-1.0], acfg, SolverConfig(), seed=0)
    assert rep.termination == HybridTermination.LOCAL_CAP_HIT
    assert rep.local_searches == 3


def test_first_local_solve_matches_standalone():
    lcfg = SolverConfig(eps=1e-4, delta=1e-4)
    rep = hybrid.solve_hybrid(two_well(), [0.3], AnnealConfig(), lcfg, seed=17,
                              keep_local_reports=True)
    alone = asm.solve(two_well(), [0.3], lcfg, seed=hybrid.local_seed(17, 0))
    assert rep.local_reports[0].L_final == alone.L_final
    assert rep.L_best <= alone.L_final


def test_determinism():
    acfg = AnnealConfig(t0=3.0, tmin=0.1, alpha=0.7)
    a = hybrid.solve_hybrid(two_well(), [-1.0], acfg, SolverConfig(), seed=5)
    b = hybrid.solve_hybrid(two_well(), [-1.0], acfg, SolverConfig(), seed=5)
    assert a.trials == b.trials and a.per_restart == b.per_restart
    assert a.u_best.tobytes() == b.u_best.tobytes()
