"""Discrete beam-on-foundation energy.

The displacement ``u`` lives on the free dofs. Minimizing

    1/2 <A u, u> - <f, u> + sum_i w_i j(-u_y(x_i))

over ``u`` solves the discrete hemivariational inequality; the last sum is
the nodal (trapezoid) quadrature of the contact functional on the bottom
edge, where penetration is ``-u_y`` (outward normal ``(0, -1)``, zero gap).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from ..core import EvalResult, QuadPlusJ
from .fem import Material, assemble_load, assemble_stiffness
from .law import ContactLaw
from .mesh import Geometry, Mesh, build_mesh


class ContactTerm:
    """``J(u) = sum_i w_i j((T u)_i)`` with its chain-rule subgradient."""

    def __init__(self, trace, weights, law: ContactLaw):
        self.trace = trace
        self.trace_T = trace.T.tocsr()
        self.weights = weights
        self.law = law

    def __call__(self, u):
        xi = self.trace @ u
        j, p = self.law.evaluate(xi)
        return float(self.weights @ j), self.trace_T @ (self.weights * p)


@dataclass
class AssembledProblem:
    geom: Geometry
    mat: Material
    law: ContactLaw
    load: float
    mesh: Mesh
    A: sp.csr_matrix
    b_load: np.ndarray
    trace: sp.csr_matrix  # free dofs -> penetration at each contact node
    weights: np.ndarray   # trapezoid weights, sum = length of the contact edge

    @property
    def contact_term(self):
        return ContactTerm(self.trace, self.weights, self.law)

    def energy(self):
        return EnergyProblem(self)

    def full_displacement(self, u):
        """Embed a free-dof vector into the (n_nodes, 2) nodal field."""
        full = np.zeros(2 * self.mesh.n_nodes)
        full[self.mesh.free_dofs] = u
        return full.reshape(-1, 2)


class EnergyProblem(QuadPlusJ):
    """The assembled energy as a :class:`QuadPlusJ` with ``b = -f``."""

    def __init__(self, problem: AssembledProblem):
        super().__init__(problem.A, -problem.b_load, problem.contact_term)
        self.problem = problem


def contact_trace(mesh: Mesh):
    """Penetration operator and trapezoid weights on the contact edge."""
    nodes = mesh.contact_nodes
    cols = mesh.dof_map[2 * nodes + 1]
    rows = np.arange(len(nodes))
    keep = cols >= 0
    T = sp.csr_matrix((-np.ones(keep.sum()), (rows[keep], cols[keep])),
                      shape=(len(nodes), mesh.n_free))
    x = mesh.nodes[nodes, 0]
    h = np.diff(x)
    w = np.zeros(len(nodes))
    w[:-1] += 0.5 * h
    w[1:] += 0.5 * h
    return T, w


def contact_functional(prob: AssembledProblem, u) -> EvalResult:
    value, grad = prob.contact_term(np.asarray(u, dtype=float))
    return EvalResult(value, grad)


@lru_cache(maxsize=16)
def _assembled_parts(geom: Geometry, mat: Material):
    mesh = build_mesh(geom)
    A = assemble_stiffness(mesh, mat)
    T, w = contact_trace(mesh)
    return mesh, A, T, w


def assemble_problem(geom=None, mat=None, law=None, load=0.0) -> AssembledProblem:
    """Mesh, stiffness, load vector and contact trace for one case.

    Mesh and stiffness depend only on geometry and material and are cached
    across loads and laws.
    """
    from .law import no_contact_law

    geom = geom or Geometry()
    mat = mat or Material()
    law = law or no_contact_law()
    mesh, A, T, w = _assembled_parts(geom, mat)
    b = assemble_load(mesh, geom, load)
    return AssembledProblem(geom, mat, law, float(load), mesh, A, b, T, w)


def build_energy_problem(geom=None, mat=None, law=None, load=0.0) -> EnergyProblem:
    """Objective ``1/2 <Au,u> - <f,u> + J(Tu)`` ready for the solvers."""
    return assemble_problem(geom, mat, law, load).energy()
