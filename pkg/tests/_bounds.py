"""Post-hoc checks of the inner-loop contraction and serious-step descent
bounds, computed from solver logs."""

import math
from collections import defaultdict


def inner_loop_violations(outcome, cfg):
    """List of human-readable violations for one InnerOutcome.

    For every null step k -> k+1 (the loop continued, so |vbar_k| > delta):
    |vbar_{k+1}| <= |vbar_k| and |vbar_{k+1}|^2 <= C2 |vbar_k|^2 with
    C1 the largest subgradient norm seen so far. The iteration count m must
    not exceed 2 log2(delta / C1) / log2(C2) + 1 with the final C1.
    """
    bad = []
    vn, vb = outcome.v_norms, outcome.vbar_norms
    c1_run = 0.0
    for k in range(len(vb) - 1):
        c1_run = max(c1_run, vn[k], vn[k + 1])
        if vb[k + 1] > vb[k] * (1 + 1e-12):
            bad.append(f"monotonicity k={k + 1}: {vb[k + 1]!r} > {vb[k]!r}")
        c2 = 1.0 - ((1 - cfg.c1) * cfg.delta / (2 * c1_run)) ** 2
        if vb[k + 1] ** 2 > c2 * vb[k] ** 2 * (1 + 1e-12):
            bad.append(f"contraction k={k + 1}")
    m = outcome.k
    if m > iteration_bound(max(vn), cfg):
        bad.append(f"count m={m} > bound {iteration_bound(max(vn), cfg)}")
    return bad


def iteration_bound(c1, cfg):
    if c1 <= cfg.delta:
        return 1.0  # the first aggregate already passes the switch test
    c2 = 1.0 - ((1 - cfg.c1) * cfg.delta / (2 * c1)) ** 2
    return 2 * math.log2(cfg.delta / c1) / math.log2(c2) + 1


def serious_step_violations(report, cfg, L_star=None, atol=1e-12):
    """Per-step decrease of at least c2 eta delta and, with a known lower
    bound L_star, the per-eta serious step count bound."""
    bad = []
    per_eta = defaultdict(list)
    for L0, L1, sigma, eta, vbar in report.steps:
        if L0 - L1 < cfg.c2 * eta * cfg.delta - atol:
            bad.append(f"decrease {L0 - L1!r} < {cfg.c2 * eta * cfg.delta!r}")
        per_eta[eta].append(L0)
    if L_star is not None:
        for eta, starts in per_eta.items():
            m0 = math.floor((starts[0] - L_star) / (cfg.c2 * eta * cfg.delta)) + 1
            if len(starts) > m0:
                bad.append(f"eta={eta}: {len(starts)} serious steps > M0={m0}")
    return bad
