"""Cholesky factor of a symmetric positive-definite matrix.

Banded storage is used whenever the matrix bandwidth is small compared to
its size (the structured-grid stiffness matrix has bandwidth ~20 on ~1700
dofs), dense LAPACK otherwise.
"""

import numpy as np
import scipy.sparse as sp
from scipy import linalg
from scipy.linalg import lapack


class NotPositiveDefinite(ValueError):
    pass


def bandwidth(A):
    """Largest |i - j| over the nonzero entries of ``A``."""
    if sp.issparse(A):
        coo = A.tocoo()
        if coo.nnz == 0:
            return 0
        return int(np.max(np.abs(coo.row - coo.col)))
    rows, cols = np.nonzero(np.asarray(A))
    if rows.size == 0:
        return 0
    return int(np.max(np.abs(rows - cols)))


class CholeskyFactor:
    """Upper factor ``R`` with ``A = R^T R``.

    Parameters
    ----------
    A : ndarray or sparse matrix
        Symmetric positive-definite matrix.

    Raises
    ------
    NotPositiveDefinite
        If the factorization breaks down.
    """

    def __init__(self, A):
        n, m = A.shape
        if n != m:
            raise ValueError(f"matrix must be square, got {A.shape}")
        self.n = n
        bw = bandwidth(A)
        self.banded = sp.issparse(A) and 4 * (bw + 1) < n
        if self.banded:
            self.bw = bw
            ab = np.zeros((bw + 1, n))
            Au = sp.triu(A).tocoo()
            # upper band storage: ab[bw + i - j, j] = A[i, j]
            ab[bw + Au.row - Au.col, Au.col] = Au.data
            try:
                self._ub = linalg.cholesky_banded(ab, lower=False)
            except linalg.LinAlgError as exc:
                raise NotPositiveDefinite(str(exc)) from exc
        else:
            dense = A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)
            try:
                self._R = linalg.cholesky(dense, lower=False)
            except linalg.LinAlgError as exc:
                raise NotPositiveDefinite(str(exc)) from exc

    def _tbtrs(self, rhs, trans):
        rhs = np.asarray(rhs, dtype=float)
        x, info = lapack.dtbtrs(self._ub, rhs.reshape(self.n, -1), uplo="U",
                                trans="T" if trans else "N")
        if info != 0:
            raise NotPositiveDefinite(f"dtbtrs failed with info={info}")
        return x.reshape(rhs.shape)

    def solve_R(self, z):
        """Return ``R^{-1} z``."""
        if self.banded:
            return self._tbtrs(z, 0)
        return linalg.solve_triangular(self._R, z, lower=False)

    def solve_Rt(self, v):
        """Return ``R^{-T} v``."""
        if self.banded:
            return self._tbtrs(v, 1)
        return linalg.solve_triangular(self._R, v, lower=False, trans="T")

    def mul_R(self, u):
        """Return ``R u``."""
        if self.banded:
            out = np.zeros(self.n)
            bw = self.bw
            # row i of R has entries R[i, i..i+bw] = ub[bw + i - j, j]
            for off in range(bw + 1):
                diag = self._ub[bw - off, off:]
                out[: self.n - off] += diag * u[off:]
            return out
        return self._R @ u

    def solve(self, b):
        """Return ``A^{-1} b``."""
        return self.solve_R(self.solve_Rt(b))

    def min_diagonal(self):
        if self.banded:
            return float(np.min(self._ub[-1]))
        return float(np.min(np.diag(self._R)))
