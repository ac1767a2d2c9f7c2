"""The seven-dimensional cross product and Cayley multiplication.

Prints the multiplication table, then shows the identities every cross
product must satisfy, and finally exhibits a non-associative triple.
"""

import numpy as np

from nks6 import cayley

eye = np.eye(7)

print("e_j x e_k (signed index of the result):")
print("     " + " ".join(f"e{k + 1:<2d}" for k in range(7)))
for j in range(7):
    print(f"e{j + 1}  " + " ".join(f"{int(t):+3d}" if t else "  0" for t in cayley.SIGNED_TABLE[j]))

rng = np.random.default_rng(1)
x, y = rng.standard_normal((2, 7))
z = cayley.cross(x, y)
print("\nfor random x, y:")
print(f"  x.(x x y) = {x @ z:+.2e}   y.(x x y) = {y @ z:+.2e}")
print(f"  |x x y|^2 - (|x|^2|y|^2 - (x.y)^2) = {z @ z - (x @ x * (y @ y) - (x @ y) ** 2):+.2e}")

c = cayley.cayley_mul(eye[0], eye[1])
print(f"\nCayley product e1 e2: real part {c.real_part:g}, imaginary part {c.imaginary_part}")

i, j, k = cayley.nonassociativity_witness()
left = cayley.cross(cayley.cross(eye[i - 1], eye[j - 1]), eye[k - 1])
right = cayley.cross(eye[i - 1], cayley.cross(eye[j - 1], eye[k - 1]))
print(f"(e{i} x e{j}) x e{k} = {left}")
print(f"e{i} x (e{j} x e{k}) = {right}")
