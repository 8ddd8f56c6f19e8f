"""Structured triangulation of the rectangular beam."""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Geometry:
    """Beam dimensions in mm. ``upper_surface`` is the area S (mm^2)
    scaling the applied traction."""

    length: float = 210.0
    thickness: float = 10.0
    h_max: float = 1.75
    upper_surface: float = 1000.0

    def __post_init__(self):
        if min(self.length, self.thickness, self.h_max, self.upper_surface) <= 0:
            raise ValueError("geometry parameters must be positive")
        if self.h_max > self.thickness:
            raise ValueError("h_max must not exceed the beam thickness")


@dataclass
class Mesh:
    """Triangulated beam.

    Nodes are numbered column by column (``node = i * (ny + 1) + j`` for
    column ``i`` and row ``j``), which keeps the stiffness bandwidth small.
    Displacement dofs are interleaved, ``(2 * node, 2 * node + 1)``.
    """

    nodes: np.ndarray
    triangles: np.ndarray
    nx: int
    ny: int
    gamma_D: np.ndarray  # clamped node ids (x = 0 and x = length)
    gamma_N: np.ndarray  # (m, 2) top edges, y = thickness
    gamma_C: np.ndarray  # (m, 2) bottom edges, y = 0, outward normal (0, -1)
    gamma_D_edges: np.ndarray
    dof_map: np.ndarray  # full dof -> free dof index, -1 if clamped

    @property
    def n_nodes(self):
        return len(self.nodes)

    @property
    def n_free(self):
        return int(np.count_nonzero(self.dof_map >= 0))

    @property
    def free_dofs(self):
        return np.flatnonzero(self.dof_map >= 0)

    @property
    def contact_nodes(self):
        """Bottom nodes ordered by x."""
        return np.arange(self.nx + 1) * (self.ny + 1)

    def signed_areas(self):
        p = self.nodes[self.triangles]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def element_size(self):
        """Largest axis-aligned edge (cell width or height)."""
        return max(self.nodes[:, 0].max() / self.nx, self.nodes[:, 1].max() / self.ny)

    def element_diameters(self):
        p = self.nodes[self.triangles]
        edges = p - np.roll(p, 1, axis=1)
        return np.linalg.norm(edges, axis=2).max(axis=1)

    def boundary_edges(self):
        """All edges used by exactly one triangle, as sorted pairs."""
        t = self.triangles
        edges = np.sort(np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]]), axis=1)
        uniq, counts = np.unique(edges, axis=0, return_counts=True)
        return uniq[counts == 1]


def build_mesh(geom: Geometry) -> Mesh:
    """Structured grid of ``ceil(length / h_max) x ceil(thickness / h_max)``
    cells, each cut into two triangles with alternating diagonals."""
    nx = math.ceil(geom.length / geom.h_max - 1e-9)
    ny = math.ceil(geom.thickness / geom.h_max - 1e-9)
    xs = np.linspace(0.0, geom.length, nx + 1)
    ys = np.linspace(0.0, geom.thickness, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    nodes = np.column_stack([X.ravel(), Y.ravel()])

    def nid(i, j):
        return i * (ny + 1) + j

    tris = []
    for i in range(nx):
        for j in range(ny):
            n00, n10, n01, n11 = nid(i, j), nid(i + 1, j), nid(i, j + 1), nid(i + 1, j + 1)
            if (i + j) % 2 == 0:
                tris += [(n00, n10, n11), (n00, n11, n01)]
            else:
                tris += [(n00, n10, n01), (n10, n11, n01)]
    triangles = np.array(tris, dtype=np.int64)

    cols = np.arange(nx)
    rows = np.arange(ny)
    gamma_C = np.column_stack([nid(cols, 0), nid(cols + 1, 0)])
    gamma_N = np.column_stack([nid(cols, ny), nid(cols + 1, ny)])
    gamma_D_edges = np.concatenate([
        np.column_stack([nid(0, rows), nid(0, rows + 1)]),
        np.column_stack([nid(nx, rows), nid(nx, rows + 1)]),
    ])
    gamma_D = np.concatenate([nid(0, np.arange(ny + 1)), nid(nx, np.arange(ny + 1))])

    clamped = np.zeros(2 * len(nodes), dtype=bool)
    clamped[2 * gamma_D] = True
    clamped[2 * gamma_D + 1] = True
    dof_map = np.full(2 * len(nodes), -1, dtype=np.int64)
    dof_map[~clamped] = np.arange(np.count_nonzero(~clamped))

    mesh = Mesh(nodes, triangles, nx, ny, gamma_D, gamma_N, gamma_C, gamma_D_edges, dof_map)
    if np.any(mesh.signed_areas() <= 0):
        raise ValueError("degenerate or inverted triangle in mesh")
    return mesh
