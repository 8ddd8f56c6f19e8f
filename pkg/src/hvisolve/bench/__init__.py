"""Benchmark harness: multistart load sweeps and solver comparison."""

from .baseline import baseline_plain_subgradient, diminishing_steps
from .config import BenchConfig, load_config, save_config
from .runner import (
    CaseResult,
    CaseSetup,
    Category,
    best_counts,
    categorize,
    generate_starts,
    run_case,
    run_sweep,
)

__all__ = [
    "BenchConfig",
    "CaseResult",
    "CaseSetup",
    "Category",
    "baseline_plain_subgradient",
    "best_counts",
    "categorize",
    "diminishing_steps",
    "generate_starts",
    "load_config",
    "run_case",
    "run_sweep",
    "save_config",
]
