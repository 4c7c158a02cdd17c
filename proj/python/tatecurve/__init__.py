"""Python front end for the Tate-curve boundary operator library.

Exact results come back as ``fractions.Fraction``; points and rationals may be
given as int, Fraction or "a/b" strings.
"""

from fractions import Fraction
import json

from . import _core
from ._core import SingularityError

__all__ = [
    "SingularityError",
    "apply_D_height",
    "build_matrix",
    "delta_from_mass",
    "det_D",
    "eigenvalue_angular",
    "eigenvalue_radial",
    "greens_function",
    "height_limit_check",
    "kernel_H",
    "local_height",
    "reduce_to_E",
    "spectral_gap",
    "spectrum",
    "tree_dot",
    "two_point",
    "verify_matrix",
    "weak_delta_check",
    "weyl_count",
    "zeta_pi",
]


def _q(x):
    return str(Fraction(x))


def _f(s):
    return None if s is None else Fraction(s)


def reduce_to_E(p, m, x):
    return _f(_core.reduce_to_E(p, m, _q(x)))


def kernel_H(p, m, z, x):
    return _f(_core.kernel_H(p, m, _q(z), _q(x)))


def local_height(p, m, x):
    return _f(_core.local_height(p, m, _q(x)))


def greens_function(p, m, x, y):
    return _f(_core.greens_function(p, m, _q(x), _q(y)))


def apply_D_height(p, m, x):
    return _f(_core.apply_D_height(p, m, _q(x)))


def weak_delta_check(step_function, y):
    """step_function: dict {"p", "m", "balls": [{"v", "k", "center", "value"}]}. Returns (lhs, rhs)."""
    lhs, rhs = _core.weak_delta_check(json.dumps(step_function), _q(y))
    return Fraction(lhs), Fraction(rhs)


def eigenvalue_radial(p, m, n):
    return Fraction(_core.eigenvalue_radial(p, m, n))


def eigenvalue_angular(p, m, l):
    """(float value, exact Fraction or None)."""
    value, exact = _core.eigenvalue_angular(p, m, l)
    return value, _f(exact)


def spectrum(p, m, max_conductor):
    rows = json.loads(_core.spectrum_json(p, m, max_conductor))
    for row in rows:
        if isinstance(row["lambda"], str):
            row["lambda"] = Fraction(row["lambda"])
        if row.get("lambda_exact") is not None:
            row["lambda_exact"] = Fraction(row["lambda_exact"])
    return rows


def spectral_gap(p, m):
    return _core.spectral_gap(p, m)


def weyl_count(p, m, lam):
    return _core.weyl_count(p, m, _q(lam))


def det_D(p, m):
    out = _core.det_D(p, m)
    for key in ("det", "angular", "radial"):
        out[key] = Fraction(out[key])
    return out


def zeta_pi(p, m, s):
    return _core.zeta_pi(p, m, s)


def build_matrix(p, m, level):
    """(basis labels, exact matrix as a list of rows of Fractions)."""
    labels, rows = _core.build_matrix(p, m, level)
    return labels, [[Fraction(e) for e in row] for row in rows]


def verify_matrix(p, m, level):
    return _core.verify_matrix(p, m, level)


def two_point(p, m, x1, x2, delta):
    return _core.two_point(p, m, _q(x1), _q(x2), delta)


def height_limit_check(p, m, x1, x2):
    """(limit estimate, target 2 log p * G(x1, x2))."""
    return _core.height_limit_check(p, m, _q(x1), _q(x2))


def delta_from_mass(p, msq):
    """(delta_plus, delta_minus)."""
    return _core.delta_from_mass(p, msq)


def tree_dot(p, m, depth):
    return _core.tree_dot(p, m, depth)
