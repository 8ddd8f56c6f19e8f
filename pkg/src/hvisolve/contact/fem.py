"""Plane-strain linear elasticity on constant-strain triangles."""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .mesh import Geometry, Mesh


@dataclass(frozen=True)
class Material:
    E: float = 9.646e7  # MPa
    kappa: float = 0.4  # Poisson ratio

    def __post_init__(self):
        if self.E <= 0:
            raise ValueError("E must be positive")
        if not 0 < self.kappa < 0.5:
            raise ValueError("Poisson ratio must lie in (0, 0.5)")

    def elasticity_matrix(self):
        """Voigt-form matrix acting on ``(eps11, eps22, 2 eps12)``.

        Stress is ``lam tr(eps) I + E / (1 + kappa) eps`` with
        ``lam = E kappa / ((1 + kappa)(1 - 2 kappa))``.
        """
        E, k = self.E, self.kappa
        lam = E * k / ((1 + k) * (1 - 2 * k))
        two_mu = E / (1 + k)
        return np.array([
            [lam + two_mu, lam, 0.0],
            [lam, lam + two_mu, 0.0],
            [0.0, 0.0, 0.5 * two_mu],
        ])


def strain_matrices(coords):
    """B matrices (T, 3, 6) and areas (T,) for triangles ``coords`` (T, 3, 2)."""
    x, y = coords[..., 0], coords[..., 1]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    two_area = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (y[:, 1] - y[:, 0])
    if np.any(two_area <= 0):
        raise ValueError("triangle with non-positive area")
    B = np.zeros((len(coords), 3, 6))
    B[:, 0, 0::2] = b
    B[:, 1, 1::2] = c
    B[:, 2, 0::2] = c
    B[:, 2, 1::2] = b
    B /= two_area[:, None, None]
    return B, 0.5 * two_area


def element_stiffness(coords, mat: Material):
    """6x6 stiffness of one triangle (unit out-of-plane depth)."""
    B, area = strain_matrices(np.asarray(coords, dtype=float)[None])
    D = mat.elasticity_matrix()
    return area[0] * B[0].T @ D @ B[0]


def assemble_full_stiffness(mesh: Mesh, mat: Material):
    """Global stiffness over all 2 * n_nodes dofs, before clamping."""
    B, area = strain_matrices(mesh.nodes[mesh.triangles])
    D = mat.elasticity_matrix()
    Ke = area[:, None, None] * np.einsum("tki,kl,tlj->tij", B, D, B)
    dofs = np.empty((len(mesh.triangles), 6), dtype=np.int64)
    dofs[:, 0::2] = 2 * mesh.triangles
    dofs[:, 1::2] = 2 * mesh.triangles + 1
    rows = np.repeat(dofs, 6, axis=1).ravel()
    cols = np.tile(dofs, (1, 6)).ravel()
    n = 2 * mesh.n_nodes
    K = sp.coo_matrix((Ke.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    K.sum_duplicates()
    # exact symmetry; assembly round-off can leave ~1 ulp differences
    return ((K + K.T) * 0.5).tocsr()


def assemble_stiffness(mesh: Mesh, mat: Material):
    """Stiffness restricted to the free (unclamped) dofs, CSR."""
    K = assemble_full_stiffness(mesh, mat)
    free = mesh.free_dofs
    return K[free][:, free].tocsr()


def traction(x, geom: Geometry, load):
    """Vertical traction on the top surface: ``-L S (1 - (x - c)^2 / c^2)``
    with ``c`` the mid-span abscissa."""
    c = 0.5 * geom.length
    return -load * geom.upper_surface * (1.0 - (np.asarray(x) - c) ** 2 / c**2)


_GAUSS = np.array([-1.0, 1.0]) / np.sqrt(3.0)


def assemble_full_load(mesh: Mesh, geom: Geometry, load):
    """Consistent nodal load over all dofs (clamped ones included)."""
    if load < 0:
        raise ValueError("load must be nonnegative")
    f = np.zeros(2 * mesh.n_nodes)
    a, b = mesh.gamma_N[:, 0], mesh.gamma_N[:, 1]
    xa, xb = mesh.nodes[a, 0], mesh.nodes[b, 0]
    half = 0.5 * (xb - xa)
    for g in _GAUSS:
        xg = 0.5 * (xa + xb) + g * half
        ty = traction(xg, geom, load) * half  # Gauss weight 1
        phi_b = 0.5 * (1.0 + g)
        np.add.at(f, 2 * a + 1, ty * (1.0 - phi_b))
        np.add.at(f, 2 * b + 1, ty * phi_b)
    return f


def assemble_load(mesh: Mesh, geom: Geometry, load):
    """Load vector over the free dofs. Body forces are zero."""
    return assemble_full_load(mesh, geom, load)[mesh.free_dofs]


def rigid_body_modes(mesh: Mesh):
    """Two translations and the infinitesimal rotation about the origin,
    as (3, 2 * n_nodes) array."""
    n = mesh.n_nodes
    modes = np.zeros((3, 2 * n))
    modes[0, 0::2] = 1.0
    modes[1, 1::2] = 1.0
    modes[2, 0::2] = -mesh.nodes[:, 1]
    modes[2, 1::2] = mesh.nodes[:, 0]
    return modes
