"""Concrete immersions into S^6.

* :func:`rotation_immersion` builds ``(t, p) ↦ sin t n + cos t f(p)`` from a
  surface lying in the totally geodesic ``S^5 = n^⊥ ∩ S^6``.
* :func:`search_lagrangian_subspaces` classifies coordinate subspaces by how
  ``J`` acts on their great spheres.
* :func:`catalog` collects the named examples used by the verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import jets
from .cayley import cross, triple
from .submanifold import Immersion
from .warped import WarpedProduct

T_MARGIN = 0.1
NORMAL_TOL = 1e-10
CERT_TOL = 1e-12


@dataclass(frozen=True)
class SurfaceInS5:
    """A 2-dimensional immersion inside ``normal^⊥ ∩ S^6``."""

    immersion: Immersion
    normal: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if self.immersion.dim != 2:
            raise ValueError("SurfaceInS5 wraps a surface")
        if abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise ValueError("normal must be a unit vector")
        object.__setattr__(self, "normal", n)

    @property
    def label(self):
        return self.immersion.label

    def normal_residual(self, n=7):
        pts = self.immersion(self.immersion.grid(n, margin=0.0))
        return float(np.max(np.abs(pts @ self.normal)))


def rotation_immersion(surface, margin=T_MARGIN, check=True):
    """``x(t, u, v) = sin(t) n + cos(t) f(u, v)`` on ``(-π/2 + margin, π/2 - margin) × domain``."""
    if check:
        r = surface.normal_residual()
        if r > NORMAL_TOL:
            raise ValueError(f"surface is not contained in n^⊥ (residual {r:.3e})")
    n = surface.normal
    f = surface.immersion.map

    def x(u):
        t, a, b = u
        return jets.sin(t) * n + jets.cos(t) * f([a, b])

    domain = ((-np.pi / 2 + margin, np.pi / 2 - margin),) + surface.immersion.domain
    return Immersion(3, domain, x, f"rotation of {surface.label}")


def _lift_affine(x):
    """Same affine jet one order higher (exact: the new coefficients vanish)."""
    if x.order >= jets.MAX_ORDER:
        raise ValueError("cannot lift a jet beyond the maximal order")
    n = x.nvars
    if np.any(x.coef[..., n + 1:] != 0):
        raise ValueError("only affine coordinate jets can be lifted")
    extra = jets.ncoef(n, x.order + 1) - jets.ncoef(n, x.order)
    pad = np.zeros(x.coef.shape[:-1] + (extra,))
    return jets.Jet(np.concatenate([x.coef, pad], axis=-1), n, x.order + 1)


def surface_metric(imm):
    """Induced metric of a surface as a function of coordinate jets ``[u, v]``.

    The coordinates must be affine jets (as produced by :func:`jets.seed`);
    they are lifted one order so the metric keeps the requested order.
    """
    def metric(q):
        q = [_lift_affine(x) for x in q]
        n = q[0].nvars
        # the coordinates are affine in the jet variables: q_a = q_a(0) + c[a] . s
        c = np.array([x.coef[1:n + 1] for x in q])
        ds = jets.gradient(imm.map(q))          # ds[k, x] = ∂f^x / ∂s_k
        pinv = np.linalg.solve(c @ c.T, c)      # ∂f/∂q_a = Σ_k pinv[a, k] ∂f/∂s_k
        df = jets.einsum("ak,kx->ax", pinv, ds)
        return jets.einsum("ax,bx->ab", df, df)
    return metric


def rotation_warped_product(surface, margin=T_MARGIN):
    """``(-π/2, π/2) ×_cos N`` with ``N`` carrying the metric induced by ``surface``."""
    return WarpedProduct(jets.cos, surface_metric(surface.immersion),
                         (-np.pi / 2 + margin, np.pi / 2 - margin),
                         surface.immersion.domain, label=f"cos-warped {surface.label}")


# ----------------------------------------------------------------------------
# coordinate subspaces

@dataclass(frozen=True)
class SubspaceCertificate:
    indices: tuple                # 1-based basis indices
    lagrangian_residual: float    # max |<p × U, e_k>|, k in the subspace
    invariance_residual: float    # max |p × U - its projection onto the subspace|
    tag: str


def _sample_sphere(rng, idx, samples):
    k = len(idx)
    p = rng.standard_normal((samples, k))
    p /= np.linalg.norm(p, axis=1, keepdims=True)
    u = rng.standard_normal((samples, k))
    u -= np.sum(u * p, axis=1, keepdims=True) * p
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    emb = np.eye(7)[[i - 1 for i in idx]]
    return p @ emb, u @ emb


def _certify(idx, rng, samples):
    p, u = _sample_sphere(rng, idx, samples)
    ju = cross(p, u)
    mask = np.zeros(7, dtype=bool)
    mask[[i - 1 for i in idx]] = True
    inside = float(np.abs(ju[:, mask]).max())
    outside = float(np.abs(ju[:, ~mask]).max())
    if inside <= CERT_TOL:
        tag = "lagrangian" if len(idx) == 4 else "totally-real"
    elif outside <= CERT_TOL:
        tag = "almost-complex"
    else:
        tag = "mixed"
    return SubspaceCertificate(tuple(idx), inside, outside, tag)


def search_lagrangian_subspaces(samples=200, seed=0):
    """Classify all 35 coordinate 4-subspaces and all 35 coordinate 3-subspaces."""
    rng = np.random.default_rng(seed)
    out = []
    for k in (4, 3):
        for idx in combinations(range(1, 8), k):
            out.append(_certify(idx, rng, samples))
    return out


@lru_cache(maxsize=None)
def _canonical_lagrangian_indices():
    for cert in search_lagrangian_subspaces():
        if cert.tag == "lagrangian":
            return cert.indices
    raise RuntimeError("no coordinate Lagrangian 4-subspace found")


# ----------------------------------------------------------------------------

@dataclass
class Fullness:
    dimension: int
    normals: np.ndarray           # rows: unit vectors orthogonal to the span
    singular_values: np.ndarray

    @property
    def normal(self):
        return self.normals[0] if self.dimension == 6 else None


def linear_fullness(imm, samples=64, seed=0, tol=1e-8):
    """Dimension of the linear span of ``imm`` from sampled positions."""
    if samples < 8:
        raise ValueError("need at least 8 samples")
    rng = np.random.default_rng(seed)
    lo = np.array([a for a, _ in imm.domain])
    hi = np.array([b for _, b in imm.domain])
    pts = imm(lo + (hi - lo) * rng.random((samples, imm.dim)))
    _, sv, vt = np.linalg.svd(pts)
    rank = int(np.sum(sv > tol * sv[0]))
    if 0 < rank < len(sv):
        ratio = sv[rank - 1] / max(sv[rank], 1e-300)
        if ratio < 10:
            raise ValueError(f"rank gap ambiguous (ratio {ratio:.3g})")
    normals = vt[rank:]
    return Fullness(rank, normals, sv)


# ----------------------------------------------------------------------------
# example surfaces

def great_sphere(a, b, c, domain=((-1.2, 1.2), (-3.0, 3.0)), label="great S^2"):
    """Latitude/longitude chart of the great 2-sphere in span{a, b, c}."""
    a, b, c = (np.asarray(x, dtype=float) for x in (a, b, c))

    def f(q):
        u, v = q
        cu = jets.cos(u)
        return cu * jets.cos(v) * a + cu * jets.sin(v) * b + jets.sin(u) * c

    return Immersion(2, domain, f, label)


def small_sphere(radius, a, b, c, n, domain=((-1.2, 1.2), (-3.0, 3.0))):
    """Umbilic sphere ``radius · S^2 + sqrt(1 - radius²) n`` in the 3-sphere of span{a,b,c,n}."""
    if not 0 < radius <= 1:
        raise ValueError("radius must lie in (0, 1]")
    g = great_sphere(a, b, c, domain).map
    n = np.asarray(n, dtype=float)
    lift = np.sqrt(1 - radius**2)

    def f(q):
        return g(q) * radius + lift * n

    return Immersion(2, domain, f, f"small sphere r={radius}")


def lagrangian_three_sphere(indices=None):
    """Totally geodesic S^3 in a coordinate 4-subspace, projective chart ``(1, y) / |(1, y)|``."""
    idx = indices or _canonical_lagrangian_indices()
    e = np.eye(7)[[i - 1 for i in idx]]

    def x(y):
        y1, y2, y3 = y
        r = jets.sqrt(1.0 + y1 * y1 + y2 * y2 + y3 * y3)
        return (e[0] + y1 * e[1] + y2 * e[2] + y3 * e[3]) / r

    dom = ((-1.0, 1.0),) * 3
    return Immersion(3, dom, x, f"totally geodesic S^3 in span{tuple(idx)}")


def _torus_map(pairs, phase=0.0):
    """``(1/√3) Σ_k cos(α_k) a_k + sin(α_k) b_k`` with ``α = (u + phase, v, -u - v)``."""
    pairs = [(np.asarray(a, dtype=float), np.asarray(b, dtype=float)) for a, b in pairs]
    s = 1.0 / np.sqrt(3.0)

    def f(q):
        u, v = q
        alphas = (u + phase, v, -u - v)
        out = 0.0
        for (a, b), al in zip(pairs, alphas):
            out = out + jets.cos(al) * a + jets.sin(al) * b
        return out * s

    return f


TORUS_DOMAIN = ((0.0, 2 * np.pi), (0.0, 2 * np.pi))


def flat_torus():
    """``(1/√3)(cos α1, sin α1, cos α2, sin α2, cos α3, sin α3, 0)``, α = (u, v, -u-v)."""
    e = np.eye(7)
    imm = Immersion(2, TORUS_DOMAIN, _torus_map([(e[0], e[1]), (e[2], e[3]), (e[4], e[5])]),
                    "flat torus")
    return SurfaceInS5(imm, e[6])


def _complex_pairs(n):
    """Three pairs ``(a_k, n × a_k)`` spanning ``n^⊥``, the ``a_k`` taken from the standard basis."""
    pairs, used = [], [n]
    for k in range(7):
        a = np.eye(7)[k]
        if any(abs(a @ w) > 1e-12 for w in used):
            continue
        b = cross(n, a)
        pairs.append((a, b))
        used += [a, b]
        if len(pairs) == 3:
            return pairs
    raise RuntimeError("could not build a complex basis of n^⊥")


def legendrian_torus(normal=None):
    """Minimal flat torus in ``normal^⊥ ∩ S^6`` that is totally real for J.

    The three complex lines come from the complex structure ``n ×`` on
    ``n^⊥``, which makes the torus horizontal for ``n``; the phase of the first
    line is then solved so that ``<f × f_u, f_v>`` vanishes.
    """
    n = np.eye(7)[6] if normal is None else np.asarray(normal, dtype=float)
    pairs = _complex_pairs(n)

    def form(phase):
        g = jets.seed([0.0, 0.0], 1)
        x = _torus_map(pairs, phase)(g)
        return float(triple(x.value, jets.partial(x, 0).value, jets.partial(x, 1).value))

    a, b = form(0.0), form(np.pi / 2)
    phase = float(np.arctan2(-a, b))
    imm = Immersion(2, TORUS_DOMAIN, _torus_map(pairs, phase), "legendrian torus")
    return SurfaceInS5(imm, n)


def perturbed_surface():
    """A non-minimal surface in the S^5 orthogonal to e7 (normalized bumped great sphere)."""
    e = np.eye(7)
    g = great_sphere(e[0], e[1], e[3]).map

    def f(q):
        u, v = q
        p = g(q) + (0.4 * u * v) * e[4]
        return p / jets.sqrt(jets.dot(p, p))

    imm = Immersion(2, ((-1.2, 1.2), (-3.0, 3.0)), f, "perturbed sphere")
    return SurfaceInS5(imm, e[6])


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str            # "immersion" (3-dimensional) or "surface"
    item: object
    description: str

    def immersion3(self):
        """The 3-dimensional immersion of this entry (the rotation immersion for surfaces)."""
        if self.kind == "immersion":
            return self.item
        return rotation_immersion(self.item)


@lru_cache(maxsize=None)
def catalog():
    """Named examples keyed by stable identifiers."""
    idx = _canonical_lagrangian_indices()
    e = np.eye(7)[[i - 1 for i in idx]]
    gs2 = SurfaceInS5(great_sphere(e[0], e[1], e[2], label="great S^2"), e[3])
    entries = [
        CatalogEntry("tg-s3", "immersion", lagrangian_three_sphere(idx),
                     f"totally geodesic Lagrangian S^3 in span{idx}"),
        CatalogEntry("great-s2", "surface", gs2,
                     "great S^2 inside the certified Lagrangian S^3, normal e%d" % idx[3]),
        CatalogEntry("flat-torus", "surface", flat_torus(),
                     "minimal flat torus with C^3 pairs (e1,e2),(e3,e4),(e5,e6)"),
        CatalogEntry("legendrian-torus", "surface", legendrian_torus(),
                     "minimal flat torus aligned with the complex structure e7 ×"),
        CatalogEntry("perturbed", "surface", perturbed_surface(),
                     "non-minimal perturbation of a great sphere"),
    ]
    return {entry.id: entry for entry in entries}


def get_entry(name):
    cat = catalog()
    if name not in cat:
        raise KeyError(f"unknown catalog id {name!r}; choose from {sorted(cat)}")
    return cat[name]
