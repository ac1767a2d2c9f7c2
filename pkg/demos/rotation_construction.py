"""Rotating a surface of the S^5 orthogonal to n into a 3-fold of S^6.

x(t, p) = sin(t) n + cos(t) f(p) has metric dt^2 + cos^2(t) g_N. For the
totally real flat torus the result is Lagrangian, minimal, attains equality
in Chen's inequality and carries a one-dimensional nullity distribution
along d/dt.
"""

import numpy as np

from nks6 import invariants
from nks6.constructions import catalog, rotation_immersion
from nks6.submanifold import CurvaturePackage

for key in ("great-s2", "legendrian-torus", "flat-torus"):
    surf = catalog()[key].item
    rot = rotation_immersion(surf)
    pkg = CurvaturePackage(rot, np.array([0.3, 0.4, 1.3]), order=3)
    print(f"{key}: {catalog()[key].description}")
    print(f"  Lagrangian residual  {pkg.lagrangian_residual():.2e}")
    print(f"  |H|                  {invariants.minimality_check(pkg):.2e}")
    if pkg.lagrangian_residual() > 1e-9:
        print("  not totally real: the rotation is not Lagrangian")
        continue
    d = invariants.delta_invariant(pkg)
    ric = invariants.ricci_quasi_einstein(pkg)
    dist = invariants.chen_distribution(pkg)
    form = invariants.frame_form_check(pkg)
    print(f"  tau {d.tau:.4f}, inf K {d.inf_K:.4f}, delta {d.delta:.4f} (bound {d.chen_bound:.4f})")
    print(f"  Ricci eigenvalues {np.round(ric.eigenvalues, 4)}")
    print(f"  nullity distribution dimension {dist.dimension}, frame form {form.tag}")
