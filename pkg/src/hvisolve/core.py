"""Objective contract, the quadratic-plus-nonsmooth energy and the
two-point aggregation subproblem.

An *objective* is any object exposing ``dim``, ``evaluate(u)`` returning an
:class:`EvalResult` (value and one Clarke subgradient) and ``value(u)``.
Objectives carry no mutable evaluation state, so a single instance may be
shared by concurrent solver runs.
"""

from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ._cholesky import CholeskyFactor, NotPositiveDefinite

__all__ = [
    "EvalResult",
    "DimensionError",
    "IllPosedError",
    "NotPositiveDefinite",
    "FunctionObjective",
    "QuadPlusJ",
    "Whitened",
    "as_vector",
    "evaluate",
    "solve_lambda",
    "check_secant",
]

# J(u) -> (value, one element of the Clarke subdifferential)
NonsmoothTerm = Callable[[np.ndarray], Tuple[float, np.ndarray]]


class DimensionError(ValueError):
    pass


class IllPosedError(ValueError):
    """Raised when an evaluation produces NaN or Inf."""


class EvalResult(NamedTuple):
    value: float
    subgradient: np.ndarray


def as_vector(u, dim=None, name="u"):
    """Validate and convert ``u`` to a finite 1-d float array."""
    arr = np.asarray(u, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be 1-d, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"{name} has dimension {arr.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise IllPosedError(f"{name} has non-finite entries")
    return arr


def _checked(value, grad, dim):
    value = float(value)
    grad = np.asarray(grad, dtype=float)
    if grad.shape != (dim,):
        raise DimensionError(f"subgradient has shape {grad.shape}, expected ({dim},)")
    if not np.isfinite(value) or not np.all(np.isfinite(grad)):
        raise IllPosedError("non-finite objective value or subgradient")
    return EvalResult(value, grad)


class FunctionObjective:
    """Wrap a plain function ``fun(u) -> (value, subgradient)``."""

    def __init__(self, fun: NonsmoothTerm, dim: int):
        self.fun = fun
        self.dim = int(dim)

    def evaluate(self, u):
        u = as_vector(u, self.dim)
        value, grad = self.fun(u)
        return _checked(value, grad, self.dim)

    def value(self, u):
        return self.evaluate(u).value


class QuadPlusJ:
    """``L(u) = 1/2 <Au, u> + <b, u> + J(u)``.

    Parameters
    ----------
    A : ndarray or scipy sparse matrix
        Symmetric positive-definite (n, n) matrix. Checked on construction
        by attempting a Cholesky factorization.
    b : array_like
        Linear term, length n.
    J : callable, optional
        ``J(u) -> (value, subgradient)``; omitted means J = 0.
    """

    def __init__(self, A, b, J: Optional[NonsmoothTerm] = None):
        if sp.issparse(A):
            A = sp.csr_matrix(A, dtype=float)
        else:
            A = np.asarray(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionError(f"A must be square, got shape {A.shape}")
        self.dim = A.shape[0]
        self.b = as_vector(b, self.dim, "b")
        scale = abs(A).max()
        asym = abs(A - A.T).max()
        if asym > 1e-12 * scale:
            raise ValueError(f"A is not symmetric (max |A - A^T| = {asym:g})")
        self.A = A
        self.J = J
        self.factor = CholeskyFactor(A)

    def quadratic(self, u):
        """Value and gradient of the smooth part."""
        Au = self.A @ u
        return 0.5 * float(u @ Au) + float(self.b @ u), Au + self.b

    def evaluate(self, u):
        u = as_vector(u, self.dim)
        value, grad = self.quadratic(u)
        if self.J is not None:
            jv, jg = self.J(u)
            value += jv
            grad = grad + jg
        return _checked(value, grad, self.dim)

    def value(self, u):
        return self.evaluate(u).value

    def minimizer_without_J(self):
        """Exact minimizer ``-A^{-1} b`` of the quadratic part."""
        return -self.factor.solve(self.b)


class Whitened:
    """The objective ``z -> L(u(z)) / s`` with ``u(z) = sqrt(s) R^{-1} z``,
    where ``A = R^T R`` and ``s = energy_scale``.

    The quadratic part becomes ``1/2 |z|^2``, so first-order methods see a
    perfectly conditioned smooth part, and values are measured in units of
    ``s``. Subgradients map as ``R^{-T} v / sqrt(s)``.
    """

    def __init__(self, quad: QuadPlusJ, energy_scale=1.0):
        if not energy_scale > 0:
            raise ValueError("energy_scale must be positive")
        self.quad = quad
        self.dim = quad.dim
        self.energy_scale = float(energy_scale)
        self._root = np.sqrt(self.energy_scale)
        self._rtb = quad.factor.solve_Rt(quad.b) / self._root

    def to_z(self, u):
        return self.quad.factor.mul_R(as_vector(u, self.dim)) / self._root

    def to_u(self, z):
        return self.quad.factor.solve_R(as_vector(z, self.dim, "z")) * self._root

    def evaluate(self, z):
        z = as_vector(z, self.dim, "z")
        u = self.quad.factor.solve_R(z) * self._root
        s = self.energy_scale
        value = 0.5 * float(z @ z) + float(self.quad.b @ u) / s
        grad = z + self._rtb
        if self.quad.J is not None:
            jv, jg = self.quad.J(u)
            value += jv / s
            grad = grad + self.quad.factor.solve_Rt(jg) / self._root
        return _checked(value, grad, self.dim)

    def value(self, z):
        return self.evaluate(z).value


def evaluate(obj, u) -> EvalResult:
    """Value and one subgradient of ``obj`` at ``u``."""
    return obj.evaluate(u)


def solve_lambda(v, vtilde):
    """Minimize ``|lam v + (1 - lam) vtilde|^2`` over ``lam`` in [0, 1].

    Returns
    -------
    lam : float
    vbar : ndarray
        ``lam v + (1 - lam) vtilde``.
    """
    v = np.asarray(v, dtype=float)
    vtilde = np.asarray(vtilde, dtype=float)
    if v.shape != vtilde.shape:
        raise DimensionError(f"shape mismatch {v.shape} vs {vtilde.shape}")
    diff = vtilde - v
    denom = float(diff @ diff)
    if denom == 0.0:
        return 0.0, vtilde.copy()
    lam = min(1.0, max(0.0, float(vtilde @ diff) / denom))
    return lam, lam * v + (1.0 - lam) * vtilde


def check_secant(obj, u, d, tau):
    """Test ``L(u + tau d) - L(u) <= tau <v, d>`` with ``v`` the subgradient
    returned at ``u + tau d``. Diagnostic only."""
    u = as_vector(u, obj.dim)
    d = as_vector(d, obj.dim, "d")
    if tau <= 0:
        raise ValueError("tau must be positive")
    if abs(np.linalg.norm(d) - 1.0) > 1e-9:
        raise ValueError("d must have unit norm")
    base = obj.value(u)
    moved = obj.evaluate(u + tau * d)
    tol = 1e-9 * (1.0 + abs(base))
    return moved.value - base <= tau * float(moved.subgradient @ d) + tol
