"""Warped products ``I ×_f N`` with a one-dimensional base.

Chart coordinates are ``(t, u, v)``: ``t`` on the base interval, ``(u, v)`` on
the fiber chart.  The metric is ``dt² + f(t)² g_N``.  Curvature is assembled
from the warped-product formulas (Hessian of ``f``, gradient of ``f``, fiber
curvature) and can be compared against the metric-only computation of
:mod:`nks6.submanifold`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jets
from .submanifold import intrinsic_curvature, lower_curvature

BASE = (0,)
FIBER = (1, 2)


@dataclass(frozen=True)
class WarpedProduct:
    """``f`` maps a 1-variable jet to a jet; ``fiber_metric`` maps ``[u, v]`` to a 2×2 jet.

    ``fiber_curvature`` optionally overrides the Gaussian curvature of
    ``g_N`` (a function of ``(u, v)``).
    """

    warping: object
    fiber_metric: object
    interval: tuple = (-1.0, 1.0)
    fiber_domain: tuple = ((-1.0, 1.0), (-1.0, 1.0))
    fiber_curvature: object = None
    label: str = ""

    def f_derivatives(self, t):
        """``(f, f', f'')`` at ``t``."""
        j = self.warping(jets.Jet.variable(0, t, 1, 2))
        return tuple(float(jets.extract_partial(j, (k,))) for k in range(3))

    def metric_jet(self, point, order=2):
        t, u, v = jets.seed(point, order)
        f = self.warping(t)
        gn = self.fiber_metric([u, v])
        f2 = f * f
        zero = jets.Jet.constant(0.0, 3, order)
        one = zero + 1.0
        return jets.stack([
            jets.stack([one, zero, zero]),
            jets.stack([zero, f2 * gn[0, 0], f2 * gn[0, 1]]),
            jets.stack([zero, f2 * gn[1, 0], f2 * gn[1, 1]]),
        ])

    def fiber_metric_jet(self, q, order=2):
        return self.fiber_metric(jets.seed(q, order))

    def gaussian_curvature(self, q):
        if self.fiber_curvature is not None:
            return float(self.fiber_curvature(np.asarray(q, dtype=float)))
        return brioschi(self.fiber_metric_jet(q, 2))

    def grid(self, n=5, margin=0.1):
        counts = (n,) * 3 if np.isscalar(n) else tuple(n)
        boxes = (tuple(self.interval),) + tuple(tuple(b) for b in self.fiber_domain)
        axes = []
        for (lo, hi), c in zip(boxes, counts):
            lo, hi = lo + margin * (hi - lo), hi - margin * (hi - lo)
            axes.append(np.linspace(lo, hi, c) if c > 1 else np.array([(lo + hi) / 2]))
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


def brioschi(g):
    """Gaussian curvature of a 2×2 metric jet (order >= 2) by Brioschi's formula."""
    def d(x, *idx):
        return float(jets.extract_partial(x, idx))

    e, f, gg = g[0, 0], g[0, 1], g[1, 1]
    E, F, G = e.value.item(), f.value.item(), gg.value.item()
    Eu, Ev = d(e, 1, 0), d(e, 0, 1)
    Fu, Fv = d(f, 1, 0), d(f, 0, 1)
    Gu, Gv = d(gg, 1, 0), d(gg, 0, 1)
    Evv, Fuv, Guu = d(e, 0, 2), d(f, 1, 1), d(gg, 2, 0)
    a = np.array([
        [-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev],
        [Fv - 0.5 * Gu, E, F],
        [0.5 * Gv, F, G],
    ])
    b = np.array([
        [0.0, 0.5 * Ev, 0.5 * Gu],
        [0.5 * Ev, E, F],
        [0.5 * Gu, F, G],
    ])
    return float((np.linalg.det(a) - np.linalg.det(b)) / (E * G - F * F) ** 2)


def warped_metric(wp, point):
    """``diag(1, f² g_N)`` at ``(t, u, v)``."""
    f = wp.f_derivatives(point[0])[0]
    if f <= 0:
        raise ValueError(f"warping function must be positive, f({point[0]}) = {f}")
    return wp.metric_jet(point, order=1).value


def assemble_curvature(metric, hess_f, grad_f, f, fiber_curvature_op, base_curvature_op=None):
    """Assemble ``R(∂_i,∂_j)∂_k`` (component ``l``) of ``B ×_f F``.

    ``hess_f`` is the base Hessian of ``f`` (covariant), ``grad_f`` the base
    gradient (vector), ``fiber_curvature_op`` the lifted fiber curvature
    operator on fiber indices, ``base_curvature_op`` that of the base.
    Base coordinates are assumed orthonormal (``g_B = I``).
    """
    n = metric.shape[0]
    r = np.zeros((n,) * 4)
    grad2 = float(grad_f @ grad_f)
    hb = {x: i for i, x in enumerate(BASE)}
    hf = {v: i for i, v in enumerate(FIBER)}
    for x in BASE:
        for y in BASE:
            for z in BASE:
                if base_curvature_op is not None:
                    for l in BASE:
                        r[x, y, z, l] = base_curvature_op[hb[x], hb[y], hb[z], hb[l]]
    for x in BASE:
        for v in FIBER:
            for y in BASE:
                # R(X,V)Y = H^f(X,Y)/f V
                val = hess_f[hb[x], hb[y]] / f
                r[x, v, y, v] += val
                r[v, x, y, v] -= val
            for w in FIBER:
                # R(X,V)W = -<V,W>/f ∇_X ∇f, and ∇_X ∇f = H^f(X, .)^♯ for flat g_B
                for l in BASE:
                    val = -metric[v, w] / f * hess_f[hb[x], hb[l]]
                    r[x, v, w, l] += val
                    r[v, x, w, l] -= val
    for v in FIBER:
        for w in FIBER:
            for u in FIBER:
                for l in FIBER:
                    r[v, w, u, l] = fiber_curvature_op[hf[v], hf[w], hf[u], hf[l]]
                # + |∇f|²/f² (<V,U> W - <W,U> V)
                r[v, w, u, w] += grad2 / f**2 * metric[v, u]
                r[v, w, u, v] -= grad2 / f**2 * metric[w, u]
    return r


def warped_curvature_formulas(wp, point):
    """Curvature of ``I ×_f N`` at ``(t, u, v)`` from the warped-product formulas."""
    t = point[0]
    f, fp, fpp = wp.f_derivatives(t)
    if f <= 0:
        raise ValueError("warping function must be positive")
    metric = warped_metric(wp, point)
    k_n = wp.gaussian_curvature(point[1:])
    gn = wp.fiber_metric_jet(point[1:], 1).value
    # 2-d fiber: ^F R(V,W)U = K_N (g_N(W,U) V - g_N(V,U) W)
    eye = np.eye(2)
    fiber_op = k_n * (np.einsum("wu,vl->vwul", gn, eye) - np.einsum("vu,wl->vwul", gn, eye))
    return assemble_curvature(metric, np.array([[fpp]]), np.array([fp]), f, fiber_op)


def orthonormal_frame(metric):
    return np.linalg.inv(np.linalg.cholesky(metric))


def _frame_lower(r, metric):
    e = orthonormal_frame(metric)
    low = lower_curvature(r, metric)
    return np.einsum("ai,bj,ck,dl,ijkl->abcd", e, e, e, e, low)


@dataclass
class OracleResult:
    max_residual: float
    worst_point: np.ndarray
    worst_component: tuple
    zero_component_residual: float


def curvature_oracle_compare(wp, points):
    """Max componentwise difference (orthonormal frame, all indices lowered)
    between the assembled curvature and the metric-only curvature."""
    worst, worst_pt, worst_idx, zero_res = -1.0, None, None, 0.0
    for p in np.atleast_2d(points):
        metric = warped_metric(wp, p)
        formula = _frame_lower(warped_curvature_formulas(wp, p), metric)
        r_int = intrinsic_curvature(wp.metric_jet(p, 2))
        oracle = _frame_lower(r_int, metric)
        diff = np.abs(formula - oracle)
        idx = np.unravel_index(np.argmax(diff), diff.shape)
        if diff[idx] > worst:
            worst, worst_pt, worst_idx = float(diff[idx]), p, tuple(int(i) for i in idx)
        zero_res = max(zero_res, mixed_zero_residual(r_int))
    return OracleResult(worst, np.asarray(worst_pt), worst_idx, zero_res)


def mixed_zero_residual(r):
    """Components ``R(X,Y)V`` and ``R(V,W)X`` (base X, Y; fiber V, W), which must vanish."""
    vals = [r[x, y, v] for x in BASE for y in BASE for v in FIBER]
    vals += [r[v, w, x] for v in FIBER for w in FIBER for x in BASE]
    return float(np.max(np.abs(vals)))


def dichotomy_scalar(wp, point):
    """``K_N(q) - f'(t)² + f(t) f''(t)``."""
    f, fp, fpp = wp.f_derivatives(point[0])
    return wp.gaussian_curvature(point[1:]) - fp**2 + f * fpp


def sectional_extremes(r, metric):
    """(min, max) sectional curvature over all planes of a 3-dimensional metric."""
    from .invariants import _EPS
    rf = _frame_lower(r, metric)
    m = 0.25 * np.einsum("abk,dcm,abcd->km", _EPS, _EPS, rf)
    ev = np.linalg.eigvalsh(0.5 * (m + m.T))
    return float(ev[0]), float(ev[-1])


# ----------------------------------------------------------------------------
# sample families

def round_sphere_metric(q):
    """Unit-sphere metric in latitude/longitude ``(u, v)``: ``du² + cos²u dv²``."""
    u, _ = q
    c = jets.cos(u)
    zero = u * 0.0
    return jets.stack([jets.stack([zero + 1.0, zero]), jets.stack([zero, c * c])])


def flat_metric(q):
    u, _ = q
    zero = u * 0.0
    return jets.stack([jets.stack([zero + 1.0, zero]), jets.stack([zero, zero + 1.0])])


def constant_curvature_fiber(k):
    """Metric of constant Gaussian curvature ``k > 0`` (a sphere of radius 1/√k)."""
    def metric(q):
        return round_sphere_metric(q) * (1.0 / k)
    return metric


def random_warped_product(rng, interval=(-1.0, 1.0), fiber_domain=((-1.0, 1.0), (-1.0, 1.0))):
    """Cubic positive warping function and a polynomial SPD fiber metric (rejection sampled)."""
    ts = np.linspace(*interval, 33)
    while True:
        c = rng.uniform(-0.5, 0.5, 4)
        c[0] = rng.uniform(0.8, 1.5)
        if np.all(np.polyval(c[::-1], ts) > 0.1):
            break
    us = np.linspace(*fiber_domain[0], 9)
    vs = np.linspace(*fiber_domain[1], 9)
    uu, vv = np.meshgrid(us, vs)
    while True:
        pe, pf, pg = (rng.uniform(-0.3, 0.3, 6) for _ in range(3))
        pe[0] += 1.0
        pg[0] += 1.0
        pf[0] *= 0.5

        def quad(p, u, v):
            return p[0] + p[1] * u + p[2] * v + p[3] * u * u + p[4] * u * v + p[5] * v * v

        e, f, g = quad(pe, uu, vv), quad(pf, uu, vv), quad(pg, uu, vv)
        if np.all(e > 0.2) and np.all(e * g - f * f > 0.1):
            break

    def warping(t, c=c):
        return c[0] + t * (c[1] + t * (c[2] + t * c[3]))

    def metric(q, pe=pe, pf=pf, pg=pg):
        u, v = q
        e, f, g = quad(pe, u, v), quad(pf, u, v), quad(pg, u, v)
        return jets.stack([jets.stack([e, f]), jets.stack([f, g])])

    return WarpedProduct(warping, metric, tuple(interval), tuple(fiber_domain),
                         label=f"random cubic {np.round(c, 3).tolist()}")
