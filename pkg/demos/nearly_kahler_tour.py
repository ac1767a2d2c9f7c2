"""The almost complex structure J_p U = p x U on S^6 and its covariant derivative G.

G(X, Y) is obtained by differentiating J along the sphere with jets and is
compared with its closed form. G(X, X) = 0 is the nearly Kähler condition.
"""

import numpy as np

from nks6 import nearly_kahler as nk

rng = np.random.default_rng(0)
p = nk.random_point(rng, 1)[0]
x = nk.random_tangent(rng, p[None])[0]
y = nk.random_tangent(rng, p[None])[0]

jx = nk.almost_complex(p, x)
print(f"point p = {np.round(p, 3)}")
print(f"|JX| - |X|     = {np.linalg.norm(jx) - np.linalg.norm(x):+.2e}")
print(f"|J(JX) + X|    = {np.linalg.norm(nk.almost_complex(p, jx) + x):.2e}")
g = nk.g_tensor(p, x, y)
print(f"G(X, Y)        = {np.round(g, 4)}")
print(f"closed form    = {np.round(nk.g_tensor_closed_form(p, x, y), 4)}")
print(f"|G(X, X)|      = {np.linalg.norm(nk.g_tensor(p, x, x)):.2e}")

rep = nk.verify_nearly_kahler(samples=1000, rng=1)
print("\nworst relative residuals over 1000 random samples:")
for name, value in rep.residuals.items():
    print(f"  {name:28s} {value:.2e}")
