"""Curvature of warped products I x_f N, assembled from f and the fiber, versus
curvature computed from the metric alone.
"""

import numpy as np

from nks6 import jets, warped

rng = np.random.default_rng(5)
wp = warped.random_warped_product(rng)
res = warped.curvature_oracle_compare(wp, wp.grid(4))
print(wp.label)
print(f"  formulas vs metric-only curvature: {res.max_residual:.2e} "
      f"(worst component {res.worst_component} at {np.round(res.worst_point, 3)})")
print(f"  components that must vanish:       {res.zero_component_residual:.2e}")

sphere = warped.WarpedProduct(jets.cos, warped.round_sphere_metric, (-1.2, 1.2),
                              ((-1.2, 1.2), (-3.0, 3.0)))
flat = warped.WarpedProduct(jets.cos, warped.flat_metric, (-1.2, 1.2))
for name, w in (("cos t over the round sphere", sphere), ("cos t over a flat fiber", flat)):
    p = np.array([0.3, 0.2, 0.1])
    lo, hi = warped.sectional_extremes(warped.warped_curvature_formulas(w, p),
                                       warped.warped_metric(w, p))
    print(f"{name}: dichotomy scalar {warped.dichotomy_scalar(w, p):+.3f}, "
          f"sectional curvature in [{lo:.3f}, {hi:.3f}]")
