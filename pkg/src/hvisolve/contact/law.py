"""Layered foundation contact law.

The foundation reaction ``p(xi)`` (force per unit length of the contact
boundary, N/mm, as a function of penetration ``xi`` in mm) rises linearly
inside each protective layer, drops when the layer cracks and stays at a
constant base level once all protective layers are gone. The potential is
``j(xi) = int_0^xi p``; both vanish for ``xi <= 0``.

The numeric defaults below are illustrative: the shapes follow the
qualitative description of composite foundations (a soft base under
``n - 1`` progressively thicker protective layers of total thickness
3 mm), not measured data.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

PROTECTIVE_THICKNESS = 3.0  # mm


@dataclass(frozen=True)
class ContactLaw:
    """Piecewise-linear reaction with ``n_layers - 1`` crack depths.

    Layer ``i`` occupies ``(s_{i-1}, s_i]`` (``s_0 = 0``); there
    ``p(xi) = layer_start[i] + layer_stiffness[i] * (xi - s_{i-1})``.
    Beyond the last crack ``p = base_force``.
    """

    crack_depths: Tuple[float, ...]
    layer_stiffness: Tuple[float, ...]
    layer_start: Tuple[float, ...]
    base_force: float
    name: str = ""
    growth_c0: float = field(default=None)
    growth_c1: float = 0.0

    def __post_init__(self):
        s = np.asarray(self.crack_depths, dtype=float)
        if s.size < 1:
            raise ValueError("need at least one protective layer")
        if len(self.layer_stiffness) != s.size or len(self.layer_start) != s.size:
            raise ValueError("one stiffness and one start level per layer")
        if np.any(np.diff(s) <= 0) or s[0] <= 0:
            raise ValueError("crack depths must be positive and increasing")
        if not np.isclose(s[-1], PROTECTIVE_THICKNESS, rtol=0, atol=1e-12):
            raise ValueError("protective layers must total 3 mm")
        if min(self.layer_stiffness) < 0 or min(self.layer_start) < 0 or self.base_force < 0:
            raise ValueError("reaction levels and slopes must be nonnegative")
        if self.growth_c0 is None:
            object.__setattr__(self, "growth_c0", float(np.max(np.abs(self.breakpoint_forces()))))
        if self.growth_c0 < 0 or self.growth_c1 < 0:
            raise ValueError("growth constants must be nonnegative")

    @property
    def n_layers(self):
        return len(self.crack_depths) + 1

    def _tables(self):
        s = np.asarray(self.crack_depths, dtype=float)
        lo = np.concatenate([[0.0], s[:-1]])
        k = np.asarray(self.layer_stiffness, dtype=float)
        p0 = np.asarray(self.layer_start, dtype=float)
        width = s - lo
        j_lo = np.concatenate([[0.0], np.cumsum(p0 * width + 0.5 * k * width**2)])
        return s, lo, k, p0, j_lo

    def breakpoint_forces(self):
        """Reaction values just after and just before each crack depth."""
        s, lo, k, p0, _ = self._tables()
        peaks = p0 + k * (s - lo)
        return np.concatenate([p0, peaks, [self.base_force]])

    def evaluate(self, xi):
        """Vectorized ``(j(xi), p(xi))``.

        At a crack depth the left limit of ``p`` is returned, one valid
        element of the Clarke subdifferential of ``j``.
        """
        xi = np.asarray(xi, dtype=float)
        s, lo, k, p0, j_lo = self._tables()
        layer = np.searchsorted(s, xi, side="left")
        inside = (xi > 0) & (layer < s.size)
        beyond = layer >= s.size
        li = np.minimum(layer, s.size - 1)
        t = xi - lo[li]
        p = np.where(inside, p0[li] + k[li] * t, 0.0)
        j = np.where(inside, j_lo[li] + p0[li] * t + 0.5 * k[li] * t**2, 0.0)
        p = np.where(beyond, self.base_force, p)
        j = np.where(beyond, j_lo[-1] + self.base_force * (xi - s[-1]), j)
        return j, p

    def force(self, xi):
        return self.evaluate(xi)[1]

    def potential(self, xi):
        return self.evaluate(xi)[0]


def contact_law_eval(law: ContactLaw, xi):
    """``(j(xi), p(xi))`` for a scalar penetration."""
    j, p = law.evaluate(float(xi))
    return float(j), float(p)


def layered_law(n_layers, stiffness=1000.0, residual=0.5, ratio=1.5, base_force=None):
    """The illustrative ``j_n`` family.

    Parameters
    ----------
    n_layers : int
        ``n >= 2``; the foundation has ``n - 1`` protective layers over a
        base.
    stiffness : float
        Reaction slope inside every protective layer (N/mm per mm).
    residual : float
        Fraction of the peak reaction kept right after a layer cracks.
    ratio : float
        Thickness ratio of consecutive layers (> 1: progressively thicker).
    base_force : float, optional
        Constant reaction after the last crack. Defaults to the last peak
        for ``n = 2`` (the reaction stops growing but does not drop, giving
        a convex C^1 potential) and to ``residual`` times the last peak
        otherwise.
    """
    if n_layers < 2:
        raise ValueError("n_layers must be at least 2")
    m = n_layers - 1
    widths = ratio ** np.arange(m)
    widths *= PROTECTIVE_THICKNESS / widths.sum()
    depths = np.cumsum(widths)
    depths[-1] = PROTECTIVE_THICKNESS
    starts = [0.0]
    for w in widths[:-1]:
        starts.append(residual * (starts[-1] + stiffness * w))
    peak = starts[-1] + stiffness * widths[-1]
    if base_force is None:
        base_force = peak if n_layers == 2 else residual * peak
    return ContactLaw(
        crack_depths=tuple(float(s) for s in depths),
        layer_stiffness=(float(stiffness),) * m,
        layer_start=tuple(float(s) for s in starts),
        base_force=float(base_force),
        name=f"j{n_layers}",
    )


def law_from_dict(d):
    if "n_layers" in d:
        params = {k: v for k, v in d.items() if k not in ("n_layers", "name")}
        law = layered_law(int(d["n_layers"]), **params)
        if "name" in d:
            law = ContactLaw(law.crack_depths, law.layer_stiffness, law.layer_start,
                             law.base_force, name=d["name"])
        return law
    return ContactLaw(
        crack_depths=tuple(d["crack_depths"]),
        layer_stiffness=tuple(d["layer_stiffness"]),
        layer_start=tuple(d["layer_start"]),
        base_force=float(d["base_force"]),
        name=d.get("name", ""),
        growth_c0=d.get("growth_c0"),
        growth_c1=d.get("growth_c1", 0.0),
    )


def law_to_dict(law: ContactLaw):
    return {
        "name": law.name,
        "crack_depths": list(law.crack_depths),
        "layer_stiffness": list(law.layer_stiffness),
        "layer_start": list(law.layer_start),
        "base_force": law.base_force,
        "growth_c0": law.growth_c0,
        "growth_c1": law.growth_c1,
    }


def no_contact_law():
    """``p = 0``: the foundation offers no resistance."""
    return ContactLaw((PROTECTIVE_THICKNESS,), (0.0,), (0.0,), 0.0, name="none")
