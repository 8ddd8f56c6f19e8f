"""CSV export of meshes and displacement fields, and JSON problem files."""

import csv
import json
from dataclasses import asdict

import jsonschema
import numpy as np

from .fem import Material
from .law import law_from_dict, law_to_dict, no_contact_law
from .mesh import Geometry, Mesh

PROBLEM_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "hvisolve problem definition",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "geometry": {"type": "object"},
        "material": {"type": "object"},
        "law": {"type": "object"},
        "load": {"type": "number", "minimum": 0},
    },
}


def write_nodes_csv(path, mesh: Mesh, displacement=None):
    """Node table ``id, x, y, u_x, u_y``; ``displacement`` is an
    (n_nodes, 2) array, zeros when omitted."""
    disp = np.zeros((mesh.n_nodes, 2)) if displacement is None else np.asarray(displacement)
    if disp.shape != (mesh.n_nodes, 2):
        raise ValueError(f"displacement must have shape ({mesh.n_nodes}, 2)")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "x", "y", "u_x", "u_y"])
        for i, ((x, y), (ux, uy)) in enumerate(zip(mesh.nodes, disp)):
            w.writerow([i, repr(float(x)), repr(float(y)), repr(float(ux)), repr(float(uy))])


def write_elements_csv(path, mesh: Mesh):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "n0", "n1", "n2"])
        for e, tri in enumerate(mesh.triangles):
            w.writerow([e, *map(int, tri)])


def read_nodes_csv(path):
    """Returns ``(coords, displacement)`` as (n, 2) arrays."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 1:3], data[:, 3:5]


def problem_to_dict(geom: Geometry, mat: Material, law, load):
    return {
        "geometry": asdict(geom),
        "material": asdict(mat),
        "law": law_to_dict(law),
        "load": float(load),
    }


def problem_from_dict(d):
    """Returns ``(geometry, material, law, load)``; missing parts take
    defaults (no contact, zero load)."""
    jsonschema.validate(d, PROBLEM_SCHEMA)
    geom = Geometry(**d.get("geometry", {}))
    mat = Material(**d.get("material", {}))
    law = law_from_dict(d["law"]) if "law" in d else no_contact_law()
    return geom, mat, law, float(d.get("load", 0.0))


def save_problem(path, geom, mat, law, load):
    with open(path, "w") as fh:
        json.dump(problem_to_dict(geom, mat, law, load), fh, indent=2)


def load_problem(path):
    with open(path) as fh:
        return problem_from_dict(json.load(fh))
