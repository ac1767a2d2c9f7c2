"""Purely imaginary Cayley numbers and the 7-dimensional cross product.

Vectors are plain ``numpy`` arrays whose last axis has length 7 and holds the
coefficients of ``e1 .. e7``.  All functions broadcast over leading axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import jets

# Row j, column k holds the signed index of e_j x e_k (0 on the diagonal).
_TABLE_ROWS = (
    (0, +3, -2, +5, -4, +7, -6),
    (-3, 0, +1, +6, -7, -4, +5),
    (+2, -1, 0, -7, -6, +5, +4),
    (-5, -6, +7, 0, +1, +2, -3),
    (+4, +7, +6, -1, 0, -3, -2),
    (-7, +4, -5, -2, +3, 0, +1),
    (+6, -5, -4, +3, +2, -1, 0),
)

SIGNED_TABLE = np.array(_TABLE_ROWS, dtype=np.int64)


def _structure_constants(table):
    c = np.zeros((7, 7, 7))
    for j in range(7):
        for k in range(7):
            s = table[j, k]
            if s:
                c[j, k, abs(s) - 1] = np.sign(s)
    return c


#: ``STRUCTURE[j, k, l]`` is the e_l coefficient of e_{j+1} x e_{k+1}.
STRUCTURE = _structure_constants(SIGNED_TABLE)


def _oriented_pairs(structure):
    """For each l, the three 0-based pairs (j, k) with ``e_j × e_k = +e_l``."""
    pairs = [np.argwhere(structure[:, :, l] > 0) for l in range(7)]
    return np.array([p[:, 0] for p in pairs]), np.array([p[:, 1] for p in pairs])


_PAIR_J, _PAIR_K = _oriented_pairs(STRUCTURE)
STRUCTURE.flags.writeable = False


def basis(k):
    """Return e_k (1-based, as in the multiplication table)."""
    if not 1 <= k <= 7:
        raise ValueError(f"basis index must be in 1..7, got {k}")
    e = np.zeros(7)
    e[k - 1] = 1.0
    return e


def cross(x, y):
    """Bilinear extension of the multiplication table.

    Either argument may be a :class:`~nks6.jets.Jet` whose last value axis has
    length 7; the product is then taken in jet arithmetic.
    """
    if isinstance(x, jets.Jet) or isinstance(y, jets.Jet):
        xc = jets.einsum("jkl,...j->...kl", STRUCTURE, x)
        return jets.einsum("...kl,...k->...l", xc, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    # sum over the three oriented pairs of each component: exactly antisymmetric
    terms = x[..., _PAIR_J] * y[..., _PAIR_K] - x[..., _PAIR_K] * y[..., _PAIR_J]
    return terms.sum(axis=-1)


def triple(x, y, z):
    """The 3-form ``<x × y, z>``."""
    return jets.dot(cross(x, y), z)


@dataclass(frozen=True)
class CayleyNumber:
    """``real_part * e0 + imaginary_part``."""

    real_part: float
    imaginary_part: np.ndarray

    def __post_init__(self):
        im = np.asarray(self.imaginary_part, dtype=float)
        if im.shape != (7,):
            raise ValueError("imaginary part must have 7 components")
        object.__setattr__(self, "imaginary_part", im)

    def as_array(self):
        """Coordinates in the basis e0 .. e7."""
        return np.concatenate([[self.real_part], self.imaginary_part])


def cayley_mul(x, y, convention="positive"):
    """Product of two purely imaginary Cayley numbers.

    ``convention="positive"`` gives ``<x,y> e0 + x × y``; ``"octonion"`` gives the
    usual ``-<x,y> e0 + x × y`` of imaginary octonions.  Only the real part
    depends on the choice.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if convention == "positive":
        sign = 1.0
    elif convention == "octonion":
        sign = -1.0
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return CayleyNumber(sign * float(x @ y), cross(x, y))


def associative_triples():
    """Index triples (1-based) ``i<j<k`` with ``e_i × e_j = ±e_k``."""
    out = []
    for i, j in combinations(range(1, 8), 2):
        k = abs(int(SIGNED_TABLE[i - 1, j - 1]))
        if k > j:
            out.append((i, j, k))
    return sorted(out)


def nonassociativity_witness():
    """First triple of distinct basis indices with ``(e_i×e_j)×e_k != e_i×(e_j×e_k)``."""
    for i in range(1, 8):
        for j in range(1, 8):
            for k in range(1, 8):
                if len({i, j, k}) < 3:
                    continue
                a, b, c = basis(i), basis(j), basis(k)
                if not np.array_equal(cross(cross(a, b), c), cross(a, cross(b, c))):
                    return (i, j, k)
    return None


@dataclass
class AlgebraReport:
    trials: int
    antisymmetry: float = 0.0
    orthogonality: float = 0.0
    norm_identity: float = 0.0
    basis_exact: bool = True
    failure: str | None = None
    failing_inputs: tuple | None = field(default=None, repr=False)

    @property
    def passed(self):
        return self.failure is None


def _pair_residuals(x, y):
    xy = cross(x, y)
    yx = cross(y, x)
    nx2 = np.sum(x * x, axis=-1)
    ny2 = np.sum(y * y, axis=-1)
    scale = np.maximum(nx2 * ny2, 1e-300)
    anti = np.max(np.abs(xy + yx), axis=-1) / np.sqrt(scale)
    orth = np.maximum(
        np.abs(np.sum(xy * x, axis=-1)), np.abs(np.sum(xy * y, axis=-1))
    ) / (np.sqrt(scale) * np.sqrt(np.maximum(nx2, ny2)))
    dot = np.sum(x * y, axis=-1)
    norm = np.abs(np.sum(xy * xy, axis=-1) + dot**2 - nx2 * ny2) / scale
    return anti, orth, norm


def verify_algebra(trials=10_000, rng=None, tol=1e-12):
    """Check antisymmetry, orthogonality and the norm identity.

    All 49 basis pairs are checked exactly, then ``trials`` random Gaussian
    pairs with relative tolerance ``tol``.
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    rng = np.random.default_rng(rng)
    report = AlgebraReport(trials=trials)

    eye = np.eye(7)
    bx = np.repeat(eye, 7, axis=0)
    by = np.tile(eye, (7, 1))
    bxy = cross(bx, by)
    exact = (
        np.array_equal(bxy, -cross(by, bx))
        and not np.any(np.sum(bxy * bx, axis=-1))
        and not np.any(np.sum(bxy * by, axis=-1))
        and np.array_equal(
            np.sum(bxy * bxy, axis=-1) + np.sum(bx * by, axis=-1) ** 2,
            np.ones(49),
        )
    )
    report.basis_exact = bool(exact)
    if not exact:
        report.failure = "basis identities"
        return report

    if trials == 0:
        return report
    x = rng.standard_normal((trials, 7))
    y = rng.standard_normal((trials, 7))
    anti, orth, norm = _pair_residuals(x, y)
    report.antisymmetry = float(anti.max())
    report.orthogonality = float(orth.max())
    report.norm_identity = float(norm.max())
    for name, r in (("antisymmetry", anti), ("orthogonality", orth), ("norm identity", norm)):
        bad = np.flatnonzero(r > tol)
        if bad.size:
            i = int(bad[0])
            report.failure = name
            report.failing_inputs = (x[i], y[i])
            break
    return report
