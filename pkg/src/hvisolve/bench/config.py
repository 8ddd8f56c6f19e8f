"""Benchmark configuration and its JSON schema."""

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields
from typing import List, Optional

import jsonschema
import numpy as np

from ..asm import SolverConfig
from ..contact.fem import Material
from ..contact.law import ContactLaw, law_from_dict, law_to_dict, layered_law
from ..contact.mesh import Geometry
from ..hybrid import AnnealConfig

SOLVERS = ("plain_subgradient", "asm", "hybrid")

DEFAULT_LAYER_STIFFNESS = 5000.0
# 10 loads from below the first crack of every law to past the last crack of j2
DEFAULT_LOADS = tuple(float(x) for x in np.linspace(2.5, 25.0, 10))


def default_laws():
    return [layered_law(n, stiffness=DEFAULT_LAYER_STIFFNESS) for n in (2, 3, 7, 10)]


def default_solver_config():
    return SolverConfig(eps=1e-5, delta=1e-5, gamma=0.25, c1=0.2, c2=0.05)


def default_anneal_config():
    return AnnealConfig(t0=2.0, tmin=0.02, alpha=0.6, max_local_searches=200)


_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}

CONFIG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "hvisolve benchmark configuration",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "laws": {
            "type": "array",
            "minItems": 1,
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["n_layers"],
                        "additionalProperties": False,
                        "properties": {
                            "n_layers": {"type": "integer", "minimum": 2},
                            "name": {"type": "string"},
                            "stiffness": _POS,
                            "residual": {"type": "number", "minimum": 0, "maximum": 1},
                            "ratio": _POS,
                            "base_force": {"type": "number", "minimum": 0},
                        },
                    },
                    {
                        "type": "object",
                        "required": ["crack_depths", "layer_stiffness", "layer_start", "base_force"],
                        "additionalProperties": False,
                        "properties": {
                            "name": {"type": "string"},
                            "crack_depths": {"type": "array", "items": _POS, "minItems": 1},
                            "layer_stiffness": {"type": "array", "items": _NUM},
                            "layer_start": {"type": "array", "items": _NUM},
                            "base_force": _NUM,
                            "growth_c0": {"type": ["number", "null"]},
                            "growth_c1": _NUM,
                        },
                    },
                ]
            },
        },
        "loads": {"type": "array", "minItems": 1, "items": _POS},
        "solvers": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {"enum": list(SOLVERS)},
        },
        "n_starts": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "output_path": {"type": "string"},
        "plain_iters": {"type": "integer", "minimum": 1},
        "plain_t0": _POS,
        "workers": {"type": "integer", "minimum": 1},
        "geometry": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: _POS for k in ("length", "thickness", "h_max", "upper_surface")},
        },
        "material": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"E": _POS, "kappa": {"type": "number", "exclusiveMinimum": 0,
                                                "exclusiveMaximum": 0.5}},
        },
        "solver": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "eps": _POS, "delta": _POS, "gamma": _POS, "c1": _POS, "c2": _POS,
                "eta0": _POS, "max_inner": {"type": "integer", "minimum": 1},
                "max_serious": {"type": "integer", "minimum": 1}, "expansion_factor": _POS,
            },
        },
        "anneal": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "t0": _POS, "tmin": _POS, "alpha": _POS,
                "max_local_searches": {"type": "integer", "minimum": 1},
                "signed_perturbation": {"type": "boolean"},
            },
        },
    },
}


@dataclass
class BenchConfig:
    laws: List[ContactLaw] = field(default_factory=default_laws)
    loads: List[float] = field(default_factory=lambda: list(DEFAULT_LOADS))
    solvers: List[str] = field(default_factory=lambda: list(SOLVERS))
    n_starts: int = 5
    seed: int = 0
    output_path: str = "results"
    geometry: Geometry = field(default_factory=Geometry)
    material: Material = field(default_factory=Material)
    solver: SolverConfig = field(default_factory=default_solver_config)
    anneal: AnnealConfig = field(default_factory=default_anneal_config)
    plain_iters: int = 2000
    plain_t0: float = 0.5
    workers: int = 1

    def __post_init__(self):
        if not self.loads:
            raise ValueError("loads must be nonempty")
        loads = np.asarray(self.loads, dtype=float)
        if np.any(loads <= 0) or np.any(np.diff(loads) <= 0):
            raise ValueError("loads must be positive and strictly increasing")
        unknown = set(self.solvers) - set(SOLVERS)
        if unknown:
            raise ValueError(f"unknown solvers: {sorted(unknown)}")
        if self.n_starts < 1:
            raise ValueError("n_starts must be at least 1")
        names = [law.name for law in self.laws]
        if len(set(names)) != len(names) or "" in names:
            raise ValueError("contact laws need distinct, nonempty names")

    def to_dict(self):
        return {
            "laws": [law_to_dict(law) for law in self.laws],
            "loads": [float(x) for x in self.loads],
            "solvers": list(self.solvers),
            "n_starts": self.n_starts,
            "seed": self.seed,
            "output_path": self.output_path,
            "plain_iters": self.plain_iters,
            "plain_t0": self.plain_t0,
            "workers": self.workers,
            "geometry": asdict(self.geometry),
            "material": asdict(self.material),
            "solver": asdict(self.solver),
            "anneal": asdict(self.anneal),
        }

    def config_hash(self):
        """SHA-256 of the canonical JSON form, ignoring output location and
        worker count."""
        d = self.to_dict()
        d.pop("output_path")
        d.pop("workers")
        blob = json.dumps(d, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    @classmethod
    def from_dict(cls, d):
        jsonschema.validate(d, CONFIG_SCHEMA)
        kwargs = {}
        for f in fields(cls):
            if f.name not in d:
                continue
            value = d[f.name]
            if f.name == "laws":
                value = [law_from_dict(x) for x in value]
            elif f.name == "geometry":
                value = Geometry(**value)
            elif f.name == "material":
                value = Material(**value)
            elif f.name == "solver":
                value = SolverConfig(**{**asdict(default_solver_config()), **value})
            elif f.name == "anneal":
                value = AnnealConfig(**{**asdict(default_anneal_config()), **value})
            kwargs[f.name] = value
        return cls(**kwargs)


def load_config(path) -> BenchConfig:
    with open(path) as fh:
        return BenchConfig.from_dict(json.load(fh))


def save_config(cfg: BenchConfig, path):
    with open(path, "w") as fh:
        json.dump(cfg.to_dict(), fh, indent=2)


def law_by_name(cfg: BenchConfig, name) -> Optional[ContactLaw]:
    for law in cfg.laws:
        if law.name == name:
            return law
    return None
