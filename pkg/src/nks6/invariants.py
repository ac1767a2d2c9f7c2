"""Pointwise invariants of submanifolds: sectional and scalar curvature, inf K,
Chen's delta invariant, the Ricci spectrum, minimality, total reality, the
ellipse of curvature, Chen's distribution and eigenframe normal forms.

Unless stated otherwise, vectors are chart components at the package point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cayley import cross
from .submanifold import CurvaturePackage, NotLagrangian

PLANE_TOL = 1e-10
TIE_TOL = 1e-7

# Levi-Civita symbol in three dimensions.
_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_i, _k, _j] = -1.0


@dataclass(frozen=True)
class PlaneSpec:
    """Two g-orthonormal tangent vectors (chart components)."""

    v: np.ndarray
    w: np.ndarray

    @classmethod
    def from_vectors(cls, g, v, w):
        """Gram–Schmidt ``v, w`` with respect to ``g``."""
        v = np.asarray(v, dtype=float)
        w = np.asarray(w, dtype=float)
        nv = np.sqrt(v @ g @ v)
        if nv == 0:
            raise ValueError("degenerate plane")
        v = v / nv
        w = w - (v @ g @ w) * v
        nw = np.sqrt(max(w @ g @ w, 0.0))
        if nw <= PLANE_TOL:
            raise ValueError("degenerate plane")
        return cls(v, w / nw)

    def check(self, g, tol=PLANE_TOL):
        gram = np.array([[self.v @ g @ self.v, self.v @ g @ self.w],
                         [self.w @ g @ self.v, self.w @ g @ self.w]])
        if np.abs(gram - np.eye(2)).max() > tol:
            raise ValueError("plane vectors are not g-orthonormal")


def sectional_curvature(pkg, plane):
    """``K = R(v, w, w, v)`` for g-orthonormal ``v, w``."""
    plane.check(pkg.metric)
    return float(np.einsum("ijkl,i,j,k,l->", pkg.riemann, plane.v, plane.w, plane.w, plane.v))


def scalar_curvature(pkg):
    """``τ = Σ_{a<b} K(E_a ∧ E_b)`` over the orthonormal frame."""
    rf = pkg.in_frame(pkg.riemann, 4)
    d = pkg.dim
    return float(sum(rf[a, b, b, a] for a in range(d) for b in range(a + 1, d)))


def plane_curvature_form(pkg):
    """Symmetric ``M`` with ``K(n^⊥) = n·M·n`` for unit ``n`` in frame components (d = 3)."""
    if pkg.dim != 3:
        raise ValueError("plane-normal parametrization needs d = 3")
    rf = pkg.in_frame(pkg.riemann, 4)
    m = 0.25 * np.einsum("abk,dcm,abcd->km", _EPS, _EPS, rf)
    return 0.5 * (m + m.T)


def _sphere_grid(n_phi=64, n_theta=32):
    theta = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    phi = np.arange(n_phi) * 2 * np.pi / n_phi
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], -1).reshape(-1, 3)


def _tangent_basis(n):
    a = np.eye(3)[np.argmin(np.abs(n))]
    b1 = np.cross(n, a)
    b1 /= np.linalg.norm(b1)
    return np.stack([b1, np.cross(n, b1)])


def minimize_on_sphere(m, grid=(64, 32), tol=1e-10, max_iter=50):
    """Minimize ``n·M·n`` over unit ``n``: coarse grid, then Riemannian Newton.

    Returns ``(n, value, grid_value, converged)``.
    """
    pts = _sphere_grid(*grid)
    vals = np.einsum("pi,ij,pj->p", pts, m, pts)
    best = int(np.argmin(vals))
    n = pts[best]
    grid_val = float(vals[best])
    val = grid_val
    converged = False
    for _ in range(max_iter):
        basis = _tangent_basis(n)
        q = n @ m @ n
        grad = 2 * basis @ (m @ n)
        hess = 2 * (basis @ m @ basis.T - q * np.eye(2))
        evals, evecs = np.linalg.eigh(hess)
        # saddle-free Newton; flat directions carry no gradient at a minimum
        flat = np.abs(evals) <= 1e-14
        scale = np.where(flat, 0.0, 1.0 / np.where(flat, 1.0, np.abs(evals)))
        step = -(evecs * scale) @ (evecs.T @ grad)
        cand = n + basis.T @ step
        cand /= np.linalg.norm(cand)
        cand_val = float(cand @ m @ cand)
        if cand_val > val:
            converged = np.linalg.norm(grad) <= tol
            break
        moved = np.linalg.norm(cand - n)
        n, val = cand, cand_val
        if moved <= tol:
            converged = True
            break
    return n, min(val, grid_val), grid_val, converged


@dataclass
class DeltaReport:
    tau: float
    inf_K: float
    plane: PlaneSpec
    delta: float
    chen_bound: float
    equality_gap: float
    grid_inf_K: float = float("nan")
    converged: bool = True


def chen_bound(n, mean_curvature_norm, ambient_curvature=1.0):
    """Right-hand side of Chen's first inequality in a space form."""
    return (n * n * (n - 2) / (2 * (n - 1)) * mean_curvature_norm**2
            + 0.5 * (n + 1) * (n - 2) * ambient_curvature)


def delta_invariant(pkg, grid=(64, 32)):
    """``δ = τ - inf K`` with inf K found by plane-normal minimization."""
    if pkg.dim != 3:
        raise ValueError("delta invariant is implemented for d = 3")
    tau = scalar_curvature(pkg)
    m = plane_curvature_form(pkg)
    n, inf_k, grid_val, ok = minimize_on_sphere(m, grid)
    b = _tangent_basis(n)
    e = pkg.frame
    plane = PlaneSpec.from_vectors(pkg.metric, b[0] @ e, b[1] @ e)
    bound = chen_bound(3, np.linalg.norm(pkg.mean_curvature))
    delta = tau - inf_k
    return DeltaReport(tau=tau, inf_K=inf_k, plane=plane, delta=delta,
                       chen_bound=bound, equality_gap=bound - delta,
                       grid_inf_K=grid_val, converged=ok)


@dataclass
class RicciReport:
    eigenvalues: np.ndarray
    multiplicity: int
    quasi_einstein: bool
    min_gap: float


def ricci_quasi_einstein(pkg, tol=TIE_TOL):
    """Ricci eigenvalues (ascending) and the largest multiplicity within ``tol`` relative."""
    ev = np.linalg.eigvalsh(pkg.in_frame(pkg.ricci, 2))
    radius = float(np.max(np.abs(ev)))
    thresh = tol * radius
    gaps = np.diff(ev)
    mult, run = 1, 1
    for gp in gaps:
        run = run + 1 if gp <= thresh else 1
        mult = max(mult, run)
    min_gap = float(gaps.min() / radius) if radius > 0 else 0.0
    return RicciReport(ev, mult, mult >= pkg.dim - 1, min_gap)


def minimality_check(pkg):
    """``|H|`` with ``H = trace_g h / d``."""
    return float(np.linalg.norm(pkg.mean_curvature))


def totally_real_check(imm, u):
    """``max |<J E_a, E_b>|`` over a g-orthonormal frame at ``u``."""
    return CurvaturePackage(imm, u, order=2).lagrangian_residual()


@dataclass
class EllipseReport:
    orthogonality: float
    length_difference: float
    semi_axes: tuple
    status: str

    @property
    def residuals(self):
        return (self.orthogonality, self.length_difference)


def ellipse_circle_check(pkg, rotation=0.0, tol=1e-8):
    """Is the (centered) ellipse of curvature a circle?

    In the orthonormal frame rotated by ``rotation`` the residuals are
    ``|<h(e1,e1), h(e1,e2)>|`` and ``||h(e1,e1)| - |h(e1,e2)||``.
    ``semi_axes`` are frame independent.
    """
    if pkg.dim != 2:
        raise ValueError("ellipse of curvature is defined here for surfaces")
    if minimality_check(pkg) > tol:
        raise ValueError("surface is not minimal: the ellipse is not centered")
    c, s = np.cos(rotation), np.sin(rotation)
    e = np.array([[c, s], [-s, c]]) @ pkg.frame
    h = np.einsum("ai,bj,ijx->abx", e, e, pkg.h)
    a, b = h[0, 0], h[0, 1]
    gram = np.array([[a @ a, a @ b], [a @ b, b @ b]])
    axes = tuple(float(np.sqrt(max(x, 0.0))) for x in np.linalg.eigvalsh(gram)[::-1])
    orth = float(abs(a @ b))
    diff = float(abs(np.linalg.norm(a) - np.linalg.norm(b)))
    if axes[0] <= tol:
        status = "point"
    elif axes[0] - axes[1] <= tol:
        status = "circle"
    else:
        status = "ellipse"
    return EllipseReport(orth, diff, axes, status)


@dataclass
class Distribution:
    dimension: int
    basis: np.ndarray          # rows: chart components
    singular_values: np.ndarray


def chen_distribution(pkg, tol=1e-8):
    """``{X : (n-1) h(X, Y) = n <X, Y> H for all Y}``, solved in the orthonormal frame."""
    n = pkg.dim
    hf = pkg.in_frame(pkg.h, 2)
    big = (n - 1) * hf - n * np.einsum("ab,x->abx", np.eye(n), pkg.mean_curvature)
    # rows (b, x), columns a
    mat = big.transpose(1, 2, 0).reshape(-1, n)
    _, sv, vt = np.linalg.svd(mat)
    scale = max(1.0, float(np.abs(mat).max()))
    rank = int(np.sum(sv > tol * scale))
    null = vt[rank:]
    return Distribution(n - rank, null @ pkg.frame, sv)


def angle_between(pkg, u, v):
    """Angle between two chart vectors as lines (in [0, π/2])."""
    g = pkg.metric
    c = abs(u @ g @ v) / np.sqrt((u @ g @ u) * (v @ g @ v))
    return float(np.arccos(min(1.0, c)))


@dataclass
class FrameForm:
    tag: str
    mu: tuple
    a: float
    b: float
    c: float
    d: float
    eigenvector_residual: float
    mu_gap: float
    normalization_residual: float
    frame: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)


def _adapted_frame(pkg, base):
    g = pkg.metric
    cols = [np.asarray(base, dtype=float)] + [np.eye(3)[k] for k in range(3)]
    out = []
    for v in cols:
        for w in out:
            v = v - (w @ g @ v) * w
        nv = np.sqrt(max(v @ g @ v, 0.0))
        if nv > 1e-8:
            out.append(v / nv)
        if len(out) == 3:
            break
    return np.array(out)


def jh_coefficients(pkg, frame):
    """``T[a, b, c] = <J h(F_a, F_b), F_c>`` for chart frame rows ``F``."""
    amb = frame @ pkg.tangents
    h = np.einsum("ai,bj,ijx->abx", frame, frame, pkg.h)
    jh = cross(pkg.position, h)
    return np.einsum("abx,cx->abc", jh, amb)


def frame_form_check(pkg, base=None, tol=TIE_TOL, zero_tol=1e-7):
    """Normal form of ``Jh`` in a frame adapted to ``base`` (default ``∂_0``).

    ``E_1`` is the normalized base direction; ``E_2, E_3`` diagonalize
    ``A_{JE_1}`` on ``E_1^⊥`` when its eigenvalues there differ, otherwise they
    are rotated so that the ``E_3`` component of ``Jh(E_2,E_2)`` vanishes with
    ``<Jh(E_2,E_2), E_2> >= 0``.

    ``mu[k] = <Jh(E_1,E_k), E_k>``; ``a, d`` are the ``E_2, E_3`` components
    of ``Jh(E_2,E_2)`` and ``b, c`` those of ``Jh(E_3,E_3)``.
    """
    if pkg.lagrangian_residual() > 1e-9 or pkg.dim != 3:
        raise NotLagrangian("frame normal forms need a Lagrangian package")
    base = np.eye(3)[0] if base is None else np.asarray(base, dtype=float)
    f = _adapted_frame(pkg, base)
    t = jh_coefficients(pkg, f)
    scale = max(1.0, float(np.abs(t).max()))

    # A_{JE_1} E_1 = -Jh(E_1, E_1)
    eig_res = float(np.linalg.norm(t[0, 0, 1:]) / scale)
    block = 0.5 * (t[0, 1:, 1:] + t[0, 1:, 1:].T)
    ev, vec = np.linalg.eigh(block)
    gap = float(abs(ev[1] - ev[0]))
    if gap > 1e3 * tol * scale:
        rot = vec.T
    else:
        a0, d0 = t[1, 1, 1], t[1, 1, 2]
        th = np.arctan2(d0, a0) / 3.0
        rot = np.array([[np.cos(th), np.sin(th)], [-np.sin(th), np.cos(th)]])
    f = np.vstack([f[0], rot @ f[1:]])
    t = jh_coefficients(pkg, f)

    mu = (float(t[0, 0, 0]), float(t[0, 1, 1]), float(t[0, 2, 2]))
    a, d = float(t[1, 1, 1]), float(t[1, 1, 2])
    b, c = float(t[2, 2, 1]), float(t[2, 2, 2])
    mu_gap = abs(mu[1] - mu[2])
    m = 0.5 * (mu[1] + mu[2])
    off = max(abs(t[0, 1, 2]), abs(t[0, 0, 1]), abs(t[0, 0, 2]))
    norm_res = max(abs(mu[0] + 2 * m), abs(b + a), abs(c), abs(d), off) / scale

    if np.abs(t).max() <= zero_tol:
        tag = "degenerate"
    elif gap > tol * scale and gap <= 1e3 * tol * scale:
        tag = "ambiguous"
    elif eig_res > zero_tol or mu_gap > zero_tol or norm_res > zero_tol:
        tag = "neither"
    elif abs(m) <= zero_tol and abs(a) > zero_tol:
        tag = "case1"
    elif abs(m) > zero_tol:
        tag = "mean-nonzero"
    else:
        tag = "neither"
    return FrameForm(tag, mu, a, b, c, d, eig_res, mu_gap, norm_res, f, t)


def case1_renamed(form):
    """``Jh`` coefficients after renaming ``E_1, E_2, E_3 -> E_3, E_1, E_2``."""
    perm = [1, 2, 0]
    return form.coefficients[np.ix_(perm, perm, perm)]
