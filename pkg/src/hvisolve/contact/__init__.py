"""Beam on a layered composite foundation: mesh, elasticity, contact law
and the assembled energy."""

from .fem import Material, assemble_load, assemble_stiffness, element_stiffness
from .law import ContactLaw, contact_law_eval, layered_law, no_contact_law
from .mesh import Geometry, Mesh, build_mesh
from .problem import (
    AssembledProblem,
    EnergyProblem,
    assemble_problem,
    build_energy_problem,
    contact_functional,
)

__all__ = [
    "Geometry",
    "Material",
    "Mesh",
    "ContactLaw",
    "AssembledProblem",
    "EnergyProblem",
    "build_mesh",
    "assemble_stiffness",
    "assemble_load",
    "element_stiffness",
    "contact_law_eval",
    "contact_functional",
    "layered_law",
    "no_contact_law",
    "assemble_problem",
    "build_energy_problem",
]
