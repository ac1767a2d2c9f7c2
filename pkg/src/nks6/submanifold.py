"""Extrinsic geometry of 2- and 3-dimensional submanifolds of S^6.

An :class:`Immersion` is a chart map written with the polymorphic functions of
:mod:`nks6.jets`, so the same code evaluates on floats and on jets.  A
:class:`CurvaturePackage` expands the map to a jet at one chart point and
derives, lazily, every tensor used by the structure equations.

Index conventions (coordinate basis ``∂_i``):

* ``christoffel[l, i, j]`` is ``Γ^l_ij``.
* ``curvature[i, j, k, l]`` is the ``∂_l`` component of ``R(∂_i, ∂_j) ∂_k``
  with ``R(X,Y) = ∇_X ∇_Y - ∇_Y ∇_X - ∇_[X,Y]``, so the unit sphere has
  ``R(X,Y)Z = <Y,Z>X - <X,Z>Y``.
* ``h[i, j]``, ``nabla_h[k, i, j]`` and ``nabla2_h[m, k, i, j]`` are ambient
  vectors in R^7; the first slot of the derivatives is the differentiation
  direction.
* ``normal_curvature[i, j]`` is the 7×7 matrix of ``R^⊥(∂_i, ∂_j)`` acting on
  the normal space (zero on its complement).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from . import jets
from .cayley import cross
from .nearly_kahler import g_tensor

SPHERE_TOL = 1e-10
RANK_TOL = 1e-8
MAX_CONDITION = 1e10


class DegenerateMetric(ValueError):
    pass


class NotLagrangian(ValueError):
    pass


@dataclass(frozen=True)
class Immersion:
    """A chart ``domain`` (one ``(lo, hi)`` pair per axis) mapped into S^6 ⊂ R^7."""

    dim: int
    domain: tuple
    map: object
    label: str = ""

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError("only 2- and 3-dimensional immersions are supported")
        dom = tuple((float(lo), float(hi)) for lo, hi in self.domain)
        if len(dom) != self.dim or any(lo >= hi for lo, hi in dom):
            raise ValueError("domain must be a non-empty box with one interval per axis")
        object.__setattr__(self, "domain", dom)

    def __call__(self, u):
        """Positions at chart points ``u`` (shape ``(..., dim)``), evaluated pointwise."""
        u = np.asarray(u, dtype=float)
        flat = u.reshape(-1, self.dim)
        out = np.array([np.asarray(self.map(list(q)), dtype=float) for q in flat])
        return out.reshape(u.shape[:-1] + (7,))

    def jet(self, u, order):
        out = self.map(jets.seed(u, order))
        if not isinstance(out, jets.Jet):
            raise TypeError("immersion map must return a jet when given jets")
        return out

    def safe_box(self, margin=0.1):
        return tuple((lo + margin * (hi - lo), hi - margin * (hi - lo))
                     for lo, hi in self.domain)

    def grid(self, n=5, margin=0.1):
        """Uniform grid over the safe sub-box; ``n`` is an int or one count per axis."""
        counts = (n,) * self.dim if np.isscalar(n) else tuple(n)
        if len(counts) != self.dim or min(counts) < 1:
            raise ValueError("bad grid resolution")
        axes = [np.linspace(lo, hi, c) if c > 1 else np.array([(lo + hi) / 2])
                for (lo, hi), c in zip(self.safe_box(margin), counts)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def center(self):
        return np.array([(lo + hi) / 2 for lo, hi in self.domain])


# ----------------------------------------------------------------------------
# metric-only (intrinsic) curvature

def christoffel_from_metric(g):
    """``Γ^l_ij`` as a jet, from a jet-valued metric (one order is lost)."""
    ginv = jets.inv(g.truncate(g.order - 1))
    dg = jets.gradient(g)                       # dg[k, i, j] = ∂_k g_ij
    lower = 0.5 * (dg + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0))
    # lower[i, j, s] = ½(∂_i g_js + ∂_j g_is - ∂_s g_ij)
    return jets.einsum("ls,ijs->lij", ginv, lower)


def curvature_from_christoffel(gam):
    """``R(∂_i,∂_j)∂_k`` components (value at the expansion point)."""
    dgam = jets.gradient(gam).value             # dgam[m, l, i, j] = ∂_m Γ^l_ij
    g0 = gam.value
    r = np.einsum("iljk->ijkl", dgam) - np.einsum("jlik->ijkl", dgam)
    r += np.einsum("lis,sjk->ijkl", g0, g0) - np.einsum("ljs,sik->ijkl", g0, g0)
    return r


def intrinsic_curvature(g):
    """Curvature operator components from a metric jet of order >= 2."""
    if g.order < 2:
        raise ValueError("metric jet must have order >= 2")
    return curvature_from_christoffel(christoffel_from_metric(g))


def lower_curvature(r, g):
    """``R[i,j,k,l] = <R(∂_i,∂_j)∂_k, ∂_l>``."""
    return np.einsum("ijks,sl->ijkl", r, g)


def curvature_symmetry_residual(rlow):
    """Max violation of pair antisymmetry, pair exchange and first Bianchi."""
    return max(
        np.abs(rlow + rlow.transpose(1, 0, 2, 3)).max(),
        np.abs(rlow + rlow.transpose(0, 1, 3, 2)).max(),
        np.abs(rlow - rlow.transpose(2, 3, 0, 1)).max(),
        np.abs(rlow + rlow.transpose(1, 2, 0, 3) + rlow.transpose(2, 0, 1, 3)).max(),
    )


# ----------------------------------------------------------------------------

def _outer(a, b):
    return jets.einsum("...a,...b->...ab", a, b)


class CurvaturePackage:
    """All pointwise extrinsic and intrinsic data of an immersion at ``point``.

    ``order`` is the jet order of the immersion map: 2 gives h, 3 adds R and
    ∇h, 4 adds ∇²h.
    """

    def __init__(self, immersion, point, order=4):
        point = np.asarray(point, dtype=float)
        if point.shape != (immersion.dim,):
            raise ValueError("chart point has the wrong dimension")
        if order < 2:
            raise ValueError("need at least second-order jets")
        self.immersion = immersion
        self.point = point
        self.order = order
        self.dim = immersion.dim
        self._x = immersion.jet(point, order)

        pos = self._x.value
        if abs(np.linalg.norm(pos) - 1.0) > SPHERE_TOL:
            raise ValueError(f"immersion leaves S^6 at {point}: |x| = {np.linalg.norm(pos)}")
        sv = np.linalg.svd(self.tangents, compute_uv=False)
        if sv[-1] <= RANK_TOL:
            raise DegenerateMetric(f"differential is rank deficient at {point}")
        if np.linalg.cond(self.metric) > MAX_CONDITION:
            raise DegenerateMetric(f"metric condition number exceeds {MAX_CONDITION:g}")

    def _need(self, order, what):
        if self.order < order:
            raise ValueError(f"{what} needs jets of order {order}, package has {self.order}")

    # first-order data ---------------------------------------------------
    @cached_property
    def _dx(self):
        return jets.gradient(self._x)            # (d, 7), order m-1

    @cached_property
    def _g(self):
        return jets.einsum("ia,ja->ij", self._dx, self._dx)

    @cached_property
    def _ginv(self):
        return jets.inv(self._g)

    @property
    def position(self):
        return self._x.value

    @property
    def tangents(self):
        """Rows are ``∂_i x``."""
        return self._dx.value

    @property
    def metric(self):
        return self._g.value

    @cached_property
    def metric_inverse(self):
        return np.linalg.inv(self.metric)

    @cached_property
    def frame(self):
        """Rows are the chart components of a g-orthonormal frame (Gram–Schmidt on ``∂_i``)."""
        g = self.metric
        # lower-triangular L with L g L^T = I
        chol = np.linalg.cholesky(g)
        return np.linalg.inv(chol)

    @property
    def frame_ambient(self):
        return self.frame @ self.tangents

    def to_ambient(self, v):
        return np.asarray(v) @ self.tangents

    def to_chart(self, w):
        """Chart components of the tangential part of an ambient vector."""
        return (np.asarray(w) @ self.tangents.T) @ self.metric_inverse

    def in_frame(self, t, slots):
        """Contract the first ``slots`` axes of a coordinate tensor with the orthonormal frame."""
        e = self.frame
        for k in range(slots):
            t = np.moveaxis(np.tensordot(e, t, axes=([1], [k])), 0, k)
        return t

    # connection -----------------------------------------------------------
    @cached_property
    def _gamma(self):
        return christoffel_from_metric(self._g)   # order m-2

    @property
    def christoffel(self):
        return self._gamma.value

    @cached_property
    def _projectors(self):
        x, dx = self._x.truncate(self.order - 1), self._dx
        tangential = jets.einsum("ia,ib->ab", dx, jets.einsum("ij,jb->ib", self._ginv, dx))
        normal = jets.Jet.constant(np.eye(7), x.nvars, x.order) - _outer(x, x) - tangential
        return tangential, normal

    @property
    def normal_projector(self):
        return self._projectors[1].value

    # second fundamental form -------------------------------------------
    @cached_property
    def _ddx(self):
        return jets.gradient(self._dx)            # (d, d, 7), order m-2

    @cached_property
    def _h(self):
        pn = self._projectors[1]
        return jets.einsum("ab,ijb->ija", pn, self._ddx)

    @property
    def h(self):
        return self._h.value

    @cached_property
    def mean_curvature(self):
        return np.einsum("ij,ija->a", self.metric_inverse, self.h) / self.dim

    def shape_operator(self, xi, tol=1e-8):
        """Chart matrix of ``A_ξ``: ``(A_ξ ∂_j)^k = g^{ki} <h_ij, ξ>``."""
        xi = np.asarray(xi, dtype=float)
        pn = self.normal_projector
        if np.linalg.norm(xi - pn @ xi) > tol * max(1.0, np.linalg.norm(xi)):
            raise ValueError("ξ is not normal to the submanifold")
        return self.metric_inverse @ (self.h @ xi)

    # J-frame (Lagrangian) --------------------------------------------------
    def lagrangian_residual(self):
        """max |<J e_a, e_b>| over an orthonormal frame."""
        e = self.frame_ambient
        je = cross(self.position, e)
        return float(np.abs(je @ e.T).max())

    def require_lagrangian(self, tol=1e-9, cubic_tol=1e-7):
        """Raise unless J swaps tangent and normal here and the cubic form is symmetric.

        The cubic-form test catches points where J happens to be totally real
        without the immersion being Lagrangian nearby.
        """
        if self.dim != 3:
            raise NotLagrangian("Lagrangian submanifolds of S^6 are 3-dimensional")
        r = self.lagrangian_residual()
        if r > tol:
            raise NotLagrangian(f"J does not map tangent to normal (residual {r:.3e})")
        c = cubic_symmetry_residual(self)
        if c > cubic_tol:
            raise NotLagrangian(f"cubic form <h(X,Y),JZ> is not symmetric (residual {c:.3e})")

    @cached_property
    def j_normals(self):
        """``J ∂_i = x × ∂_i x`` for each chart direction (rows)."""
        return cross(self.position, self.tangents)

    @cached_property
    def j_shape_operators(self):
        """``A_{J∂_i}`` chart matrices, stacked on the first axis."""
        return np.einsum("kl,lja,ia->ikj", self.metric_inverse, self.h, self.j_normals)

    # curvature ------------------------------------------------------------
    @cached_property
    def curvature(self):
        """Intrinsic R from the metric jets alone."""
        self._need(3, "intrinsic curvature")
        return intrinsic_curvature(self._g)

    @cached_property
    def riemann(self):
        return lower_curvature(self.curvature, self.metric)

    @cached_property
    def riemann_gauss(self):
        """Gauss equation with the ambient curvature 1 and ``<h, h>`` terms."""
        g, h = self.metric, self.h
        hh = np.einsum("ija,kla->ijkl", h, h)
        return (np.einsum("jk,il->ijkl", g, g) - np.einsum("ik,jl->ijkl", g, g)
                + hh.transpose(2, 0, 1, 3)          # <h_jk, h_il>
                - hh.transpose(0, 2, 1, 3))         # <h_ik, h_jl>

    @cached_property
    def curvature_gauss_lagrangian(self):
        """``R(X,Y)Z = <Y,Z>X - <X,Z>Y + [A_JX, A_JY]Z`` in chart components."""
        d, g = self.dim, self.metric
        a = self.j_shape_operators
        comm = np.einsum("ikl,jlm->ijkm", a, a) - np.einsum("jkl,ilm->ijkm", a, a)
        # comm[i,j,k,m] = ([A_i, A_j])[k, m] as a matrix acting on ∂_m
        eye = np.eye(d)
        r = (np.einsum("jk,il->ijkl", g, eye) - np.einsum("ik,jl->ijkl", g, eye)
             + comm.transpose(0, 1, 3, 2))
        return r

    @cached_property
    def ricci(self):
        """``Ric(∂_j, ∂_k) = trace(X ↦ R(X, ∂_j)∂_k)``."""
        return np.einsum("ijki->jk", self.curvature)

    # normal connection ----------------------------------------------------
    @cached_property
    def normal_curvature(self):
        """``R^⊥(∂_i, ∂_j) = P [∂_i P, ∂_j P] P`` for the normal projector P."""
        pn = self._projectors[1]
        p0 = pn.value
        dp = jets.gradient(pn).value
        comm = np.einsum("iab,jbc->ijac", dp, dp) - np.einsum("jab,ibc->ijac", dp, dp)
        return np.einsum("ab,ijbc,cd->ijad", p0, comm, p0)

    @cached_property
    def normal_curvature_jframe(self):
        """``R^⊥(∂_i,∂_j) J∂_k`` from second normal-covariant derivatives of the J-frame.

        Returned as ``[i, j, k, :]`` ambient vectors.
        """
        self._need(3, "normal curvature of the J-frame")
        pn = self._projectors[1]
        xi = cross(self._x.truncate(self.order - 1), self._dx)        # (k, 7)
        first = jets.einsum("ab,jkb->jka", pn, jets.gradient(xi))     # ∇⊥_j ξ_k
        second = jets.einsum("ab,ijkb->ijka", pn, jets.gradient(first))
        s = second.value
        return s - s.transpose(1, 0, 2, 3)

    # covariant derivatives of h -------------------------------------------
    @cached_property
    def _nabla_h(self):
        self._need(3, "∇h")
        pn, gam, h = self._projectors[1], self._gamma, self._h
        dh = jets.gradient(h)                                         # [k, i, j, a]
        t = jets.einsum("ab,kijb->kija", pn, dh)
        t = t - jets.einsum("lki,lja->kija", gam, h)
        t = t - jets.einsum("lkj,ila->kija", gam, h)
        return t

    @property
    def nabla_h(self):
        return self._nabla_h.value

    @cached_property
    def nabla2_h(self):
        self._need(4, "∇²h")
        pn, gam, nh = self._projectors[1], self._gamma, self._nabla_h
        dnh = jets.gradient(nh).value                                  # [m, k, i, j, a]
        g0 = gam.value
        nh0 = nh.value
        t = np.einsum("ab,mkijb->mkija", pn.value, dnh)
        t -= np.einsum("lmk,lija->mkija", g0, nh0)
        t -= np.einsum("lmi,klja->mkija", g0, nh0)
        t -= np.einsum("lmj,kila->mkija", g0, nh0)
        return t

    @cached_property
    def normal_derivative_of_j_frame(self):
        """``∇⊥_{∂_i} J∂_j`` as ``[i, j, :]``."""
        xi = cross(self._x.truncate(self.order - 1), self._dx)
        return np.einsum("ab,ijb->ija", self.normal_projector, jets.gradient(xi).value)


# ----------------------------------------------------------------------------
# operations

def fundamental_data(imm, u, order=4):
    pkg = CurvaturePackage(imm, u, order)
    pkg.christoffel
    return pkg


def second_fundamental_form(imm, u, order=4):
    pkg = fundamental_data(imm, u, order)
    pkg.h
    return pkg


def shape_operator(pkg, xi):
    return pkg.shape_operator(xi)


def _rel(a, scale=1.0):
    return float(np.max(np.abs(a)) / scale) if np.size(a) else 0.0


def curvature_tensor(pkg, tol=1e-7):
    """Intrinsic R and Gauss-equation R (chart components, lowered) with their disagreement.

    Lagrangian packages are compared against the ``[A_JX, A_JY]`` form,
    everything else against the general ``<h, h>`` form.
    """
    intrinsic = pkg.riemann
    try:
        pkg.require_lagrangian()
        extrinsic = lower_curvature(pkg.curvature_gauss_lagrangian, pkg.metric)
    except NotLagrangian:
        extrinsic = pkg.riemann_gauss
    residual = _rel(pkg.in_frame(intrinsic - extrinsic, 4))
    if residual > tol:
        raise ValueError(f"intrinsic and Gauss-equation curvature disagree by {residual:.3e}")
    return intrinsic, extrinsic, residual


def normal_curvature(pkg):
    """Compare ``R^⊥(X,Y)JZ`` from the normal connection with both closed forms.

    Returns ``(from_connection, j_commutator_form, gauss_ricci_form)`` in the
    orthonormal frame, each indexed ``[a, b, c, :]`` for ``R^⊥(E_a,E_b)JE_c``.
    """
    pkg.require_lagrangian()
    e = pkg.frame
    jz = cross(pkg.position, pkg.frame_ambient)                     # J E_c
    rperp = pkg.in_frame(pkg.normal_curvature, 2)
    conn = np.einsum("abij,cj->abci", rperp, jz)

    a = np.einsum("cj,jkl->ckl", e, pkg.j_shape_operators)           # A_{JE_c} (chart)
    comm = np.einsum("akl,blm->abkm", a, a) - np.einsum("bkl,alm->abkm", a, a)
    # [A_a, A_b] E_c in chart components, then ambient, then J
    vec = np.einsum("abkm,cm->abck", comm, e)
    form_j = cross(pkg.position, pkg.to_ambient(vec))

    r = pkg.in_frame(pkg.curvature, 3)                               # R(E_a,E_b)E_c chart comps
    form_gr = cross(pkg.position, pkg.to_ambient(r))
    eye = np.eye(3)
    form_gr = form_gr + np.einsum("ac,bi->abci", eye, jz) - np.einsum("bc,ai->abci", eye, jz)
    return conn, form_j, form_gr


def nabla_h(pkg):
    return pkg.nabla_h


def nabla2_h(pkg):
    return pkg.nabla2_h


def ricci_identity_residual(pkg):
    """Antisymmetrized ∇²h minus ``R^⊥(X,Y)h(Z,W) - h(R(X,Y)Z,W) - h(Z,R(X,Y)W)``."""
    n2 = pkg.nabla2_h
    lhs = n2 - n2.transpose(1, 0, 2, 3, 4)
    r, h = pkg.curvature, pkg.h
    rhs = (np.einsum("ijab,klb->ijkla", pkg.normal_curvature, h)
           - np.einsum("ijks,sla->ijkla", r, h)
           - np.einsum("ijls,ksa->ijkla", r, h))
    return _rel(pkg.in_frame(lhs - rhs, 4))


def tsinghua_forms(pkg):
    """Cyclic sums over (W,X,Y) of the two forms of the differentiated Codazzi identity.

    Returns ``(with_normal_curvature, with_j)`` in chart components,
    indexed ``[w, x, y, z, :]``.  The first is
    ``R^⊥(W,X)h(Y,Z) - h(Y,R(W,X)Z)`` summed cyclically, the second
    ``J R(W,X) J h(Y,Z) + h(Y,R(W,X)Z)`` summed cyclically.
    """
    pkg.require_lagrangian()
    r, h, rp = pkg.curvature, pkg.h, pkg.normal_curvature
    term_rp = np.einsum("wxab,yzb->wxyza", rp, h)
    term_h = np.einsum("wxzs,ysa->wxyza", r, h)
    jh = cross(pkg.position, h)                                      # tangent
    jh_chart = pkg.to_chart(jh)                                      # [y, z, k]
    rjh = np.einsum("wxkl,yzk->wxyzl", r, jh_chart)
    term_j = cross(pkg.position, pkg.to_ambient(rjh))

    def cyclic(t):
        # t[w,x,y] + t[x,y,w] + t[y,w,x]
        return t + t.transpose(2, 0, 1, 3, 4) + t.transpose(1, 2, 0, 3, 4)

    return cyclic(term_rp - term_h), cyclic(term_j + term_h)


def verify_tsinghua_identity(pkg, w, x, y, z):
    """Norm of the cyclic sum ``J R(W,X) J h(Y,Z) + h(Y, R(W,X)Z)`` for chart vectors."""
    _, form = tsinghua_forms(pkg)
    val = np.einsum("wxyza,w,x,y,z->a", form, w, x, y, z)
    return float(np.linalg.norm(val))


def codazzi_residual(pkg):
    nh = pkg.in_frame(pkg.nabla_h, 3)
    return max(_rel(nh - nh.transpose(1, 0, 2, 3)), _rel(nh - nh.transpose(0, 2, 1, 3)))


def symmetric_slot_residual(pkg):
    """``(∇²h)(W,X,Y,Z) - (∇²h)(W,Y,X,Z)``."""
    n2 = pkg.in_frame(pkg.nabla2_h, 4)
    return _rel(n2 - n2.transpose(0, 2, 1, 3, 4))


def shape_identity_residual(pkg):
    """``A_{JY}X + J h(X,Y)`` over frame vectors."""
    pkg.require_lagrangian()
    a = pkg.j_shape_operators                                         # [j, k, i]: A_{J∂_j} ∂_i
    lhs = pkg.to_ambient(np.einsum("jki->ijk", a))                   # [i, j, :]
    rhs = -cross(pkg.position, pkg.h)
    return _rel(pkg.in_frame(lhs - rhs, 2))


def cubic_form(pkg):
    """``<h(E_a,E_b), J E_c>`` in the orthonormal frame."""
    jz = cross(pkg.position, pkg.frame_ambient)
    return np.einsum("aby,cy->abc", pkg.in_frame(pkg.h, 2), jz)


def cubic_symmetry_residual(pkg):
    c = cubic_form(pkg)
    return max(_rel(c - c.transpose(1, 0, 2)), _rel(c - c.transpose(0, 2, 1)),
               _rel(c - c.transpose(2, 1, 0)))


def normal_j_derivative_residual(pkg):
    """``∇⊥_X JY - (G(X,Y) + J ∇_X Y)`` for coordinate fields."""
    pkg.require_lagrangian()
    d = pkg.dim
    p, t = pkg.position, pkg.tangents
    lhs = pkg.normal_derivative_of_j_frame
    rhs = np.empty_like(lhs)
    for i, j in product(range(d), repeat=2):
        nabla = pkg.christoffel[:, i, j] @ t
        rhs[i, j] = g_tensor(p, t[i], t[j]) + cross(p, nabla)
    return _rel(pkg.in_frame(lhs - rhs, 2))


def structure_equation_residuals(pkg):
    """Every Lagrangian structure-equation residual at one package (orthonormal frame)."""
    pkg.require_lagrangian()
    _, extrinsic, gauss = curvature_tensor(pkg, tol=np.inf)
    conn, form_j, form_gr = normal_curvature(pkg)
    out = {
        "gauss_dual_path": gauss,
        "codazzi": codazzi_residual(pkg),
        "ricci_equation": _rel(conn - form_j),
        "ricci_gauss_form": _rel(conn - form_gr),
        "shape_operator_identity": shape_identity_residual(pkg),
        "cubic_form_symmetry": cubic_symmetry_residual(pkg),
        "normal_j_derivative": normal_j_derivative_residual(pkg),
        "curvature_symmetries": float(curvature_symmetry_residual(pkg.in_frame(pkg.riemann, 4))),
    }
    jframe = pkg.in_frame(pkg.normal_curvature_jframe, 3)
    conn_coords = np.einsum("abij,cj->abci", pkg.in_frame(pkg.normal_curvature, 2),
                            cross(pkg.position, pkg.frame_ambient))
    out["normal_curvature_dual_path"] = _rel(jframe - conn_coords)
    return out


def tsinghua_residuals(pkg):
    f35, f36 = tsinghua_forms(pkg)
    return {
        "symmetric_slot": symmetric_slot_residual(pkg),
        "ricci_identity": ricci_identity_residual(pkg),
        "cyclic_normal_form": _rel(pkg.in_frame(f35, 4)),
        "cyclic_j_form": _rel(pkg.in_frame(f36, 4)),
        "forms_consistent": _rel(pkg.in_frame(f35 + f36, 4)),
    }
