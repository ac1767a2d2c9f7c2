"""Which coordinate subspaces of R^7 give Lagrangian or almost complex great spheres?

Every coordinate 4-subspace and 3-subspace is certified by sampling points
and tangent vectors of its great sphere and measuring where J sends them.
"""

from collections import Counter

from nks6.constructions import search_lagrangian_subspaces

certs = search_lagrangian_subspaces()
print(Counter((len(c.indices), c.tag) for c in certs))
print("\nLagrangian great 3-spheres (J maps tangent vectors off the subspace):")
for c in certs:
    if c.tag == "lagrangian":
        print(f"  span e{c.indices}   residual {c.lagrangian_residual:.1e}")
print("\nJ-invariant great 2-spheres (almost complex):")
for c in certs:
    if c.tag == "almost-complex":
        print(f"  span e{c.indices}   residual {c.invariance_residual:.1e}")
