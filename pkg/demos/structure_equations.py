"""Gauss, Codazzi and Ricci equations on the Lagrangian catalog examples.

Each residual compares two independent computations: intrinsic curvature from
the induced metric against extrinsic data from the second fundamental form.
"""

import numpy as np

from nks6.constructions import catalog
from nks6.submanifold import CurvaturePackage, structure_equation_residuals

for key in ("tg-s3", "legendrian-torus"):
    imm = catalog()[key].immersion3()
    worst = {}
    for u in imm.grid(3):
        res = structure_equation_residuals(CurvaturePackage(imm, u, order=3))
        for name, value in res.items():
            worst[name] = max(worst.get(name, 0.0), value)
    pkg = CurvaturePackage(imm, imm.grid(3)[13], order=3)
    print(f"{key}: |h| = {np.abs(pkg.h).max():.3f}, Lagrangian residual "
          f"{pkg.lagrangian_residual():.1e}")
    for name, value in worst.items():
        print(f"  {name:28s} {value:.2e}")
