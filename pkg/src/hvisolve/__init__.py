"""Aggregate subgradient and annealing hybrid solvers for nonsmooth
nonconvex energies, with a beam-on-composite-foundation test problem."""

from .core import EvalResult, FunctionObjective, QuadPlusJ, Whitened, check_secant, solve_lambda

__version__ = "0.1.0"

__all__ = ["EvalResult", "FunctionObjective", "QuadPlusJ", "Whitened", "check_secant", "solve_lambda"]
