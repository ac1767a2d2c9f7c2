"""The almost complex structure ``J_p U = p × U`` on S^6 and its covariant derivative.

Points of S^6 and tangent vectors are plain length-7 arrays (leading batch
axes allowed).  ``g_tensor`` computes ``G(X, Y) = (∇̃_X J) Y`` by
differentiating along a great circle in jet arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import jets
from .cayley import cross

POINT_TOL = 1e-12
TANGENT_TOL = 1e-10


def check_point(p, tol=POINT_TOL):
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 7:
        raise ValueError("points of S^6 have 7 components")
    if np.any(np.abs(np.linalg.norm(p, axis=-1) - 1.0) > tol):
        raise ValueError("point is not on the unit sphere")
    return p


def check_tangent(p, v, tol=TANGENT_TOL):
    v = np.asarray(v, dtype=float)
    off = np.abs(np.sum(p * v, axis=-1))
    scale = np.maximum(np.linalg.norm(v, axis=-1), 1.0)
    if np.any(off > tol * scale):
        raise ValueError("vector is not tangent to S^6 at the base point")
    return v


def project_tangent(p, v):
    """``v - <v, p> p``."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    return v - np.sum(v * p, axis=-1, keepdims=True) * p


def almost_complex(p, u, check=True):
    """``J_p U = p × U``."""
    if check:
        p = check_point(p)
        u = check_tangent(p, u)
    return cross(p, u)


def _unsqueeze(j):
    return j.reshape(j.shape + (1,))


def g_tensor(p, x, y):
    """``G(X, Y) = (∇̃_X J) Y`` at ``p``.

    The curve is the great circle ``γ`` with ``γ(0) = p``, ``γ'(0) = X``, and
    ``Y`` is extended by projecting the constant field onto ``T_γ S^6``.  Then
    ``G = P_T d/dt[γ × Ỹ] - p × P_T dỸ/dt`` at ``t = 0``.
    """
    p = check_point(p)
    x = check_tangent(p, x)
    y = check_tangent(p, y)
    speed = np.linalg.norm(x, axis=-1, keepdims=True)
    moving = speed > 0
    safe = np.where(moving, speed, 1.0)
    direction = np.where(moving, x / safe, 0.0)

    s = jets.Jet.variable(0, 0.0, 1, 1)
    angle = s * safe
    gamma = jets.cos(angle) * p + jets.sin(angle) * direction
    y_ext = y - _unsqueeze(jets.dot(y, gamma)) * gamma
    jy = cross(gamma, y_ext)

    d_jy = jets.partial(jy, 0).value
    d_y = jets.partial(y_ext, 0).value
    cov_jy = project_tangent(p, d_jy)
    cov_y = project_tangent(p, d_y)
    # the angle was scaled by |X| only where X != 0
    return np.where(moving, cov_jy - cross(p, cov_y), 0.0)


def g_tensor_closed_form(p, x, y):
    """``X × Y - <X × Y, p> p``: tangential part of the ambient cross product."""
    return project_tangent(p, cross(x, y))


def random_point(rng, size=None):
    shape = (7,) if size is None else (size, 7)
    p = rng.standard_normal(shape)
    return p / np.linalg.norm(p, axis=-1, keepdims=True)


def random_tangent(rng, p):
    return project_tangent(p, rng.standard_normal(np.shape(p)))


@dataclass
class NKReport:
    samples: int
    residuals: dict = field(default_factory=dict)
    tolerance: float = 1e-8
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def verify_nearly_kahler(samples=1000, rng=None, tol=1e-8):
    """Residuals of J^2 = -1, J isometric, G(X,X) = 0, and total antisymmetry of <G(X,Y),Z>."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(rng)
    p = random_point(rng, samples)
    x, y, z = (random_tangent(rng, p) for _ in range(3))

    def rel(a, scale):
        return float(np.max(np.linalg.norm(a, axis=-1) / scale))

    nx = np.linalg.norm(x, axis=-1)
    ny = np.linalg.norm(y, axis=-1)
    nz = np.linalg.norm(z, axis=-1)
    jx = almost_complex(p, x)
    jy = almost_complex(p, y)
    res = {
        "J^2 = -Id": rel(almost_complex(p, jx) + x, nx),
        "<JX,JY> = <X,Y>": float(np.max(
            np.abs(np.sum(jx * jy, -1) - np.sum(x * y, -1)) / (nx * ny))),
        "G(X,X) = 0": rel(g_tensor(p, x, x), nx**2),
    }
    gxy = g_tensor(p, x, y)
    gxz = g_tensor(p, x, z)
    gzy = g_tensor(p, z, y)
    gyx = g_tensor(p, y, x)
    c = np.sum(gxy * z, -1)
    scale = nx * ny * nz
    res["<G(X,Y),Z> antisymmetric"] = float(np.max(np.maximum.reduce([
        np.abs(c + np.sum(gyx * z, -1)),
        np.abs(c + np.sum(gxz * y, -1)),
        np.abs(c + np.sum(gzy * x, -1)),
    ]) / scale))
    report = NKReport(samples=samples, residuals=res, tolerance=tol)
    report.failures = [k for k, v in res.items() if not v <= tol]
    return report
