"""Independent reference computations shared by the test modules."""

import numpy as np
import sympy


def symbolic_element_stiffness(pts, E, kappa):
    """Hessian of the element strain energy built from linear shape
    functions and the plane-strain stress-strain law."""
    x, y = sympy.symbols("x y")
    (x1, y1), (x2, y2), (x3, y3) = [[sympy.nsimplify(c) for c in p] for p in pts]
    M = sympy.Matrix([[1, x1, y1], [1, x2, y2], [1, x3, y3]])
    q = sympy.symbols("q0:6")
    ux_coef = M.solve(sympy.Matrix([q[0], q[2], q[4]]))
    uy_coef = M.solve(sympy.Matrix([q[1], q[3], q[5]]))
    ux = ux_coef[0] + ux_coef[1] * x + ux_coef[2] * y
    uy = uy_coef[0] + uy_coef[1] * x + uy_coef[2] * y
    eps = sympy.Matrix([[sympy.diff(ux, x), (sympy.diff(ux, y) + sympy.diff(uy, x)) / 2],
                        [(sympy.diff(ux, y) + sympy.diff(uy, x)) / 2, sympy.diff(uy, y)]])
    E, k = sympy.nsimplify(E), sympy.nsimplify(kappa)
    sigma = E * k / ((1 + k) * (1 - 2 * k)) * eps.trace() * sympy.eye(2) + E / (1 + k) * eps
    density = sum(sigma[i, j] * eps[i, j] for i in range(2) for j in range(2)) / 2
    area = M.det() / 2
    energy = sympy.expand(area * density)
    return np.array(sympy.hessian(energy, q).tolist(), dtype=float)
