"""Verification suites: each one turns a :class:`RunConfig` into a :class:`Report`.

Every random draw comes from ``numpy.random.default_rng(config.seed)`` (or a
child of it), so a suite run is a pure function of its configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import cayley, constructions, invariants, nearly_kahler, submanifold, warped
from .report import Check, MaxTracker, Report, conditional, now

SUITES = ("algebra", "nearly-kahler", "structure-equations", "tsinghua",
          "warped-oracle", "theorem1")

LAGRANGIAN_TOL = 1e-9

DEFAULT_TOLERANCES = {
    "algebra": {
        "table_entries": 0.0,
        "basis_identities": 0.0,
        "antisymmetry": 1e-12,
        "orthogonality": 1e-12,
        "norm_identity": 1e-12,
        "nonassociativity_witness": 0.0,
        "cayley_mul_basis": 0.0,
    },
    "nearly-kahler": {
        "j_squared": 1e-12,
        "j_isometry": 1e-12,
        "g_xx_zero": 1e-9,
        "g_antisymmetry": 1e-8,
        "g_orthogonality": 1e-8,
        "g_closed_form": 1e-10,
    },
    "structure-equations": {
        "lagrangian": LAGRANGIAN_TOL,
        "minimality": 1e-8,
        "gauss_dual_path": 1e-7,
        "codazzi": 1e-7,
        "ricci_equation": 1e-7,
        "ricci_gauss_form": 1e-7,
        "normal_curvature_dual_path": 1e-7,
        "shape_operator_identity": 1e-8,
        "cubic_form_symmetry": 1e-8,
        "normal_j_derivative": 1e-7,
        "curvature_symmetries": 1e-8,
    },
    "tsinghua": {
        "lagrangian": LAGRANGIAN_TOL,
        "symmetric_slot": 1e-6,
        "ricci_identity": 1e-6,
        "cyclic_normal_form": 1e-6,
        "cyclic_j_form": 1e-6,
        "forms_consistent": 1e-8,
        "random_frames": 1e-6,
    },
    "warped-oracle": {
        "oracle_random": 1e-7,
        "mixed_zero_components": 1e-9,
        "oracle_trivial_warping": 1e-12,
        "oracle_near_boundary": 1e-6,
        "exp_flat_mixed": 1e-10,
        "dichotomy_cos_round": 1e-10,
        "sectional_cos_round": 1e-7,
        "dichotomy_cos_k2": 1e-10,
    },
    "theorem1": {
        "surface_in_s5": 1e-10,
        "metric_tt": 1e-10,
        "metric_t_fiber": 1e-10,
        "metric_fiber_block": 1e-10,
        "warped_metric_identity": 1e-10,
        "totally_real": LAGRANGIAN_TOL,
        "minimality": 1e-8,
        "delta_equality_gap": 1e-6,
        "second_fundamental_form_zero": 1e-9,
        "sectional_constant": 1e-8,
        "scalar_curvature": 1e-7,
        "dichotomy_scalar_zero": 1e-10,
        "ellipse_circle": 1e-8,
        "linear_fullness": 1e-8,
        "quasi_einstein": 1e-6,
        "distribution_dimension": 0.0,
        "distribution_alignment": 1e-6,
        "frame_form_case1": 0.0,
        "frame_form_normalization": 1e-7,
        "dichotomy_eigenvector": 1e-6,
        "dichotomy_mu_equal": 1e-6,
    },
}

# hypotheses of the rotation construction, measured on the surface
HYPOTHESIS_TOL = {"minimal": 1e-8, "totally_real": LAGRANGIAN_TOL,
                  "totally_geodesic": 1e-9, "ellipse_circle": 1e-8}
DICHOTOMY_THRESHOLD = 1e-3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """``grid`` holds 2 or 3 counts; 3-dimensional sweeps use 3 (a 2-count grid
    repeats its first count for the ``t`` axis) and surface sweeps the last two."""

    catalog: str | None = None
    grid: tuple = (5, 5, 5)
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    samples: int | None = None
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        self.grid = tuple(int(n) for n in self.grid)
        if len(self.grid) not in (2, 3) or min(self.grid) < 2:
            raise ConfigError("grid needs 2 or 3 resolutions, each >= 2")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        self.seed = int(self.seed)
        for name, tol in self.tolerances.items():
            if not tol > 0:
                raise ConfigError(f"tolerance {name} must be positive")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.catalog is not None and self.catalog not in constructions.catalog():
            raise ConfigError(f"unknown catalog id {self.catalog!r}; "
                              f"choose from {sorted(constructions.catalog())}")

    @property
    def grid3(self):
        return self.grid if len(self.grid) == 3 else (self.grid[0],) + self.grid

    @property
    def grid2(self):
        return self.grid[-2:]


class _Context:
    def __init__(self, suite, config):
        defaults = DEFAULT_TOLERANCES[suite]
        unknown = sorted(set(config.tolerances) - set(defaults))
        if unknown:
            raise ConfigError(f"unknown tolerance name(s) for {suite}: {unknown}; "
                              f"known: {sorted(defaults)}")
        self.tol = {**defaults, **config.tolerances}
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        self.checks = []

    def add(self, check):
        self.checks.append(check)

    def track(self, tracker, name, catalog="", note=""):
        self.add(tracker.check(name, self.tol[name], catalog, note))

    def skip(self, name, reason, catalog=""):
        self.add(conditional(name, self.tol[name], reason, catalog))


# ----------------------------------------------------------------------------
# algebra / nearly Kähler

def _algebra(ctx):
    eye = np.eye(7)
    worst, at = 0.0, []
    for j in range(7):
        for k in range(7):
            t = int(cayley.SIGNED_TABLE[j, k])
            expected = np.zeros(7) if t == 0 else np.sign(t) * eye[abs(t) - 1]
            r = float(np.abs(cayley.cross(eye[j], eye[k]) - expected).max())
            if r > worst:
                worst, at = r, [j + 1, k + 1]
    ctx.add(Check("table_entries", worst, ctx.tol["table_entries"], at,
                  note="cross(e_j, e_k) against the signed table, 49 entries"))

    trials = ctx.config.samples or 10_000
    rep = cayley.verify_algebra(trials=trials, rng=ctx.rng, tol=ctx.tol["norm_identity"])
    ctx.add(Check("basis_identities", 0.0 if rep.basis_exact else 1.0,
                  ctx.tol["basis_identities"], note="exact on all 49 basis pairs"))
    for name, value in (("antisymmetry", rep.antisymmetry),
                        ("orthogonality", rep.orthogonality),
                        ("norm_identity", rep.norm_identity)):
        ctx.add(Check(name, value, ctx.tol[name], note=f"{trials} random pairs, relative"))

    w = cayley.nonassociativity_witness()
    ctx.add(Check("nonassociativity_witness", 0.0 if w else 1.0,
                  ctx.tol["nonassociativity_witness"], list(w or []),
                  note=f"(e{w[0]} x e{w[1]}) x e{w[2]} != e{w[0]} x (e{w[1]} x e{w[2]})" if w
                  else "no witness found"))

    r = 0.0
    for x, y, re, im in ((eye[0], eye[1], 0.0, eye[2]), (eye[0], eye[0], 1.0, np.zeros(7))):
        c = cayley.cayley_mul(x, y)
        r = max(r, abs(c.real_part - re), float(np.abs(c.imaginary_part - im).max()))
    ctx.add(Check("cayley_mul_basis", r, ctx.tol["cayley_mul_basis"],
                  note="e1.e2 = e3 and e1.e1 = e0"))


def _nearly_kahler(ctx):
    samples = ctx.config.samples or 1000
    rep = nearly_kahler.verify_nearly_kahler(samples=samples, rng=ctx.rng)
    names = {"J^2 = -Id": "j_squared", "<JX,JY> = <X,Y>": "j_isometry",
             "G(X,X) = 0": "g_xx_zero", "<G(X,Y),Z> antisymmetric": "g_antisymmetry"}
    for key, name in names.items():
        ctx.add(Check(name, rep.residuals[key], ctx.tol[name],
                      note=f"{samples} random samples, relative"))

    p = nearly_kahler.random_point(ctx.rng, samples)
    x = nearly_kahler.random_tangent(ctx.rng, p)
    y = nearly_kahler.random_tangent(ctx.rng, p)
    g = nearly_kahler.g_tensor(p, x, y)
    scale = np.linalg.norm(x, axis=-1) * np.linalg.norm(y, axis=-1)
    orth = max(float(np.max(np.abs(np.sum(g * v, -1)) / (scale * s)))
               for v, s in ((p, 1.0), (x, np.linalg.norm(x, axis=-1)),
                            (y, np.linalg.norm(y, axis=-1))))
    ctx.add(Check("g_orthogonality", orth, ctx.tol["g_orthogonality"],
                  note="<G(X,Y), v> for v = p, X, Y"))
    closed = nearly_kahler.g_tensor_closed_form(p, x, y)
    ctx.add(Check("g_closed_form", float(np.max(np.linalg.norm(g - closed, axis=-1) / scale)),
                  ctx.tol["g_closed_form"], note="jet derivative against X x Y - <X x Y, p> p"))


# ----------------------------------------------------------------------------
# sweeps over Lagrangian catalog immersions

def _selected(config, kinds=("immersion", "surface")):
    cat = constructions.catalog()
    ids = [config.catalog] if config.catalog else list(cat)
    return [cat[i] for i in ids if cat[i].kind in kinds]


def _lagrangian_gate(ctx, entry, imm, points):
    """Emit the Lagrangian record; return True when the sweep should proceed."""
    tracker = MaxTracker()
    for u in points:
        tracker.update(invariants.totally_real_check(imm, u), u)
    explicit = ctx.config.catalog is not None
    tol = ctx.tol["lagrangian"] if explicit else None
    ctx.add(Check("lagrangian", tracker.value, tol, tracker.point, entry.id,
                  note="max |<J E_a, E_b>| over the grid"))
    return tracker.value <= ctx.tol["lagrangian"]


def _lagrangian_sweep(ctx, compute, names, order):
    for entry in _selected(ctx.config):
        imm = entry.immersion3()
        points = imm.grid(ctx.config.grid3)
        if not _lagrangian_gate(ctx, entry, imm, points):
            for name in names:
                ctx.skip(name, "input is not Lagrangian", entry.id)
            continue
        trackers = {name: MaxTracker() for name in names}
        for u in points:
            pkg = submanifold.CurvaturePackage(imm, u, order=order)
            for name, value in compute(ctx, pkg).items():
                trackers[name].update(value, u)
        for name in names:
            ctx.track(trackers[name], name, entry.id)


def _structure(ctx, pkg):
    out = submanifold.structure_equation_residuals(pkg)
    out["minimality"] = invariants.minimality_check(pkg)
    return out


STRUCTURE_NAMES = ("minimality", "gauss_dual_path", "codazzi", "ricci_equation",
                   "ricci_gauss_form", "normal_curvature_dual_path",
                   "shape_operator_identity", "cubic_form_symmetry",
                   "normal_j_derivative", "curvature_symmetries")

TSINGHUA_NAMES = ("symmetric_slot", "ricci_identity", "cyclic_normal_form",
                  "cyclic_j_form", "forms_consistent", "random_frames")


def _tsinghua(ctx, pkg):
    out = submanifold.tsinghua_residuals(pkg)
    e = pkg.frame
    coeffs = ctx.rng.standard_normal((4, 3))
    coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
    w, x, y, z = coeffs @ e                      # random g-unit chart vectors
    out["random_frames"] = submanifold.verify_tsinghua_identity(pkg, w, x, y, z)
    return out


def _structure_suite(ctx):
    _lagrangian_sweep(ctx, _structure, STRUCTURE_NAMES, order=3)


def _tsinghua_suite(ctx):
    _lagrangian_sweep(ctx, _tsinghua, TSINGHUA_NAMES, order=4)


# ----------------------------------------------------------------------------
# warped products

def _fixed_products():
    k2 = warped.constant_curvature_fiber(2.0)
    return {
        "cos_round": warped.WarpedProduct(warped.jets.cos, warped.round_sphere_metric,
                                          (-1.2, 1.2), ((-1.2, 1.2), (-3.0, 3.0)),
                                          label="cos x round S^2"),
        "cos_k2": warped.WarpedProduct(warped.jets.cos, k2, (-1.2, 1.2),
                                       ((-1.2, 1.2), (-3.0, 3.0)), label="cos x S^2(K=2)"),
        "exp_flat": warped.WarpedProduct(warped.jets.exp, warped.flat_metric, label="exp x flat"),
        "near_boundary": warped.WarpedProduct(warped.jets.cos, warped.round_sphere_metric,
                                              (np.pi / 2 - 0.15, np.pi / 2 - 0.1),
                                              ((-1.2, 1.2), (-3.0, 3.0)),
                                              label="cos x round S^2 near t = pi/2"),
    }


def _warped_suite(ctx):
    grid = ctx.config.grid3
    n_products = ctx.config.samples or 20
    oracle, zero = MaxTracker(), MaxTracker()
    children = ctx.rng.spawn(n_products)
    for child in children:
        wp = warped.random_warped_product(child)
        for p in wp.grid(grid):
            res = warped.curvature_oracle_compare(wp, [p])
            oracle.update(res.max_residual, p)
            zero.update(res.zero_component_residual, p)
    ctx.track(oracle, "oracle_random", note=f"{n_products} seeded random (f, g_N) pairs")
    ctx.track(zero, "mixed_zero_components", note="R(X,Y)V and R(V,W)X")

    trivial = MaxTracker()
    rnd = warped.random_warped_product(ctx.rng)
    flat_base = warped.WarpedProduct(lambda t: t * 0.0 + 1.0, rnd.fiber_metric,
                                     rnd.interval, rnd.fiber_domain, label="f = 1")
    for p in flat_base.grid(grid):
        trivial.update(warped.curvature_oracle_compare(flat_base, [p]).max_residual, p)
    ctx.track(trivial, "oracle_trivial_warping", note="f = 1 over a random fiber")

    fixed = _fixed_products()
    near = MaxTracker()
    for p in fixed["near_boundary"].grid(grid, margin=0.0):
        near.update(warped.curvature_oracle_compare(fixed["near_boundary"], [p]).max_residual, p)
    ctx.track(near, "oracle_near_boundary", note="f = cos t up to t = pi/2 - 0.1")

    mixed = MaxTracker()
    wp = fixed["exp_flat"]
    for p in wp.grid(grid):
        r = warped.warped_curvature_formulas(wp, p)
        # R(∂_t, ∂_a)∂_t = ∂_a for a = u, v
        mixed.update(max(float(np.abs(r[0, a, 0] - np.eye(3)[a]).max()) for a in (1, 2)), p)
    ctx.track(mixed, "exp_flat_mixed", note="R(E1, V)E1 = V for f = exp(t), flat fiber")

    dich, sect, dich2 = MaxTracker(), MaxTracker(), MaxTracker()
    for p in fixed["cos_round"].grid(grid):
        wp = fixed["cos_round"]
        dich.update(abs(warped.dichotomy_scalar(wp, p)), p)
        f, _, fpp = wp.f_derivatives(p[0])
        lo, hi = warped.sectional_extremes(warped.warped_curvature_formulas(wp, p),
                                           warped.warped_metric(wp, p))
        sect.update(max(abs(lo + fpp / f), abs(hi + fpp / f)), p)
        dich2.update(abs(warped.dichotomy_scalar(fixed["cos_k2"], p) - 1.0), p)
    ctx.track(dich, "dichotomy_cos_round", note="K_N - f'^2 + f f'' for f = cos t, K_N = 1")
    ctx.track(sect, "sectional_cos_round", note="all sectional curvatures equal -f''/f")
    ctx.track(dich2, "dichotomy_cos_k2", note="equals 1 for f = cos t, K_N = 2")


# ----------------------------------------------------------------------------
# rotation construction

def _surface_hypotheses(ctx, entry):
    """Measure the hypotheses of the rotation construction on the surface grid."""
    surf = entry.item
    imm = surf.immersion
    points = imm.grid(ctx.config.grid2)
    tr = {k: MaxTracker() for k in ("minimal", "totally_real", "totally_geodesic")}
    circle = MaxTracker()
    circle_ok = True
    for q in points:
        pkg = submanifold.CurvaturePackage(imm, q, order=2)
        tr["minimal"].update(invariants.minimality_check(pkg), q)
        tr["totally_real"].update(pkg.lagrangian_residual(), q)
        tr["totally_geodesic"].update(float(np.abs(pkg.in_frame(pkg.h, 2)).max()), q)
        if invariants.minimality_check(pkg) <= HYPOTHESIS_TOL["minimal"]:
            ell = invariants.ellipse_circle_check(pkg)
            circle.update(max(ell.residuals), q)
            circle_ok &= ell.status == "circle"
        else:
            circle_ok = False
    held = {k: t.value <= HYPOTHESIS_TOL[k] for k, t in tr.items()}
    held["ellipse_circle"] = circle_ok and circle.value is not None
    for k, t in tr.items():
        ctx.add(Check(f"hypothesis_{k}", t.value, None, t.point, entry.id,
                      note="holds" if held[k] else "does not hold"))
    ctx.add(Check("hypothesis_ellipse_circle", circle.value, None, circle.point, entry.id,
                  note="holds" if held["ellipse_circle"] else "does not hold"))

    if held["totally_real"] and held["totally_geodesic"]:
        branch = "totally-geodesic"
    elif (held["totally_real"] and held["minimal"] and held["ellipse_circle"]
          and not held["totally_geodesic"]):
        branch = "ideal"
    else:
        branch = "conditional"
    return branch, held, circle


IDEAL_NAMES = ("totally_real", "minimality", "delta_equality_gap", "ellipse_circle",
               "linear_fullness", "quasi_einstein", "distribution_dimension",
               "distribution_alignment", "frame_form_case1", "frame_form_normalization",
               "dichotomy_eigenvector", "dichotomy_mu_equal")
GEODESIC_NAMES = ("totally_real", "minimality", "delta_equality_gap",
                  "second_fundamental_form_zero", "sectional_constant", "scalar_curvature",
                  "dichotomy_scalar_zero")


def _metric_checks(ctx, entry, rot, wp, points):
    surf = entry.item
    tt, tf, fb, wm = MaxTracker(), MaxTracker(), MaxTracker(), MaxTracker()
    for u in points:
        pkg = submanifold.CurvaturePackage(rot, u, order=2)
        g = pkg.metric
        fs = submanifold.CurvaturePackage(surf.immersion, u[1:], order=2).metric
        tt.update(abs(g[0, 0] - 1.0), u)
        tf.update(max(abs(g[0, 1]), abs(g[0, 2])), u)
        fb.update(float(np.abs(g[1:, 1:] - np.cos(u[0]) ** 2 * fs).max()), u)
        wm.update(float(np.abs(g - warped.warped_metric(wp, u)).max()), u)
    ctx.track(tt, "metric_tt", entry.id, "<x_t, x_t> = 1")
    ctx.track(tf, "metric_t_fiber", entry.id, "<x_t, x_u> = <x_t, x_v> = 0")
    ctx.track(fb, "metric_fiber_block", entry.id, "<x_a, x_b> = cos^2 t g(f_a, f_b)")
    ctx.track(wm, "warped_metric_identity", entry.id, "induced metric = dt^2 + cos^2 t g_N")


def _geodesic_branch(ctx, entry, rot, wp, points):
    names = GEODESIC_NAMES
    tr = {n: MaxTracker() for n in names}
    for u in points:
        pkg = submanifold.CurvaturePackage(rot, u, order=3)
        d = invariants.delta_invariant(pkg)
        ev = np.linalg.eigvalsh(invariants.plane_curvature_form(pkg))
        f, _, fpp = wp.f_derivatives(u[0])
        vals = {
            "totally_real": pkg.lagrangian_residual(),
            "minimality": invariants.minimality_check(pkg),
            "delta_equality_gap": abs(d.equality_gap),
            "second_fundamental_form_zero": float(np.abs(pkg.in_frame(pkg.h, 2)).max()),
            "sectional_constant": float(np.abs(ev + fpp / f).max()),
            "scalar_curvature": abs(d.tau - 3.0),
            "dichotomy_scalar_zero": abs(warped.dichotomy_scalar(wp, u)),
        }
        for n in names:
            tr[n].update(vals[n], u)
    notes = {"sectional_constant": "all sectional curvatures equal -f''/f = 1",
             "delta_equality_gap": "|chen_bound - delta|, chen_bound = 2 + 9/4 |H|^2"}
    for n in names:
        ctx.track(tr[n], n, entry.id, notes.get(n, ""))


def _ideal_branch(ctx, entry, rot, wp, points, circle):
    surf = entry.item
    names = [n for n in IDEAL_NAMES if n not in ("ellipse_circle", "linear_fullness")]
    tr = {n: MaxTracker() for n in names}
    tags = set()
    e_t = np.eye(3)[0]
    for u in points:
        pkg = submanifold.CurvaturePackage(rot, u, order=3)
        d = invariants.delta_invariant(pkg)
        ric = invariants.ricci_quasi_einstein(pkg)
        dist = invariants.chen_distribution(pkg)
        form = invariants.frame_form_check(pkg, base=e_t)
        tags.add(form.tag)
        vals = {
            "totally_real": pkg.lagrangian_residual(),
            "minimality": invariants.minimality_check(pkg),
            "delta_equality_gap": abs(d.equality_gap),
            "quasi_einstein": ric.min_gap,
            "distribution_dimension": abs(dist.dimension - 1),
            "frame_form_case1": 0.0 if form.tag == "case1" else 1.0,
            "frame_form_normalization": form.normalization_residual,
        }
        if dist.dimension == 1:
            vals["distribution_alignment"] = invariants.angle_between(pkg, dist.basis[0], e_t)
        if abs(warped.dichotomy_scalar(wp, u)) > DICHOTOMY_THRESHOLD:
            vals["dichotomy_eigenvector"] = form.eigenvector_residual
            vals["dichotomy_mu_equal"] = form.mu_gap
        for n, v in vals.items():
            tr[n].update(v, u)
    notes = {
        "delta_equality_gap": "|chen_bound - delta|, chen_bound = 2 + 9/4 |H|^2",
        "quasi_einstein": "smallest relative gap between Ricci eigenvalues",
        "distribution_alignment": "angle between D and d/dt",
        "frame_form_case1": "tags seen: " + ", ".join(sorted(tags)),
        "dichotomy_eigenvector": "|A_{JE1}E1 - <A_{JE1}E1, E1>E1| where the scalar exceeds "
                                 f"{DICHOTOMY_THRESHOLD:g}",
        "dichotomy_mu_equal": "|mu2 - mu3| where the scalar exceeds "
                              f"{DICHOTOMY_THRESHOLD:g}",
    }
    for n in IDEAL_NAMES:
        if n == "ellipse_circle":
            ctx.track(circle, n, entry.id, "surface: (|<h11,h12>|, ||h11| - |h12||)")
        elif n == "linear_fullness":
            seed = int(ctx.rng.integers(2**32))
            full = constructions.linear_fullness(surf.immersion, samples=64, seed=seed)
            if full.dimension == 6:
                ctx.add(Check(n, 1.0 - abs(float(full.normal @ surf.normal)), ctx.tol[n],
                              catalog=entry.id, note="span has dimension 6; 1 - |<n_fit, n>|"))
            else:
                ctx.add(Check(n, 1.0, ctx.tol[n], catalog=entry.id,
                              note=f"span has dimension {full.dimension}, expected 6"))
        else:
            ctx.track(tr[n], n, entry.id, notes.get(n, ""))


def _theorem1_suite(ctx):
    entries = _selected(ctx.config, kinds=("surface",))
    if ctx.config.catalog and not entries:
        raise ConfigError(f"theorem1 needs a surface catalog entry, got {ctx.config.catalog!r}")
    branches = {}
    for entry in entries:
        surf = entry.item
        ctx.add(Check("surface_in_s5", surf.normal_residual(), ctx.tol["surface_in_s5"],
                      catalog=entry.id, note="max |<f, n>| on a 7x7 grid"))
        rot = constructions.rotation_immersion(surf, check=False)
        wp = constructions.rotation_warped_product(surf)
        points = rot.grid(ctx.config.grid3)
        _metric_checks(ctx, entry, rot, wp, points)

        branch, held, circle = _surface_hypotheses(ctx, entry)
        branches[entry.id] = branch
        if branch == "totally-geodesic":
            _geodesic_branch(ctx, entry, rot, wp, points)
        elif branch == "ideal":
            _ideal_branch(ctx, entry, rot, wp, points, circle)
        else:
            failed = ", ".join(("non_totally_geodesic" if k == "totally_geodesic" else k)
                               for k, v in held.items()
                               if v == (k == "totally_geodesic")) or "none"
            for n in IDEAL_NAMES:
                ctx.skip(n, f"no qualifying input (failed hypotheses: {failed})", entry.id)
    ctx.branches = branches


RUNNERS = {
    "algebra": _algebra,
    "nearly-kahler": _nearly_kahler,
    "structure-equations": _structure_suite,
    "tsinghua": _tsinghua_suite,
    "warped-oracle": _warped_suite,
    "theorem1": _theorem1_suite,
}


def run_suite(config, suite):
    """Run one suite and return its :class:`Report`."""
    if suite not in RUNNERS:
        raise ConfigError(f"unknown suite {suite!r}; choose from {SUITES}")
    ctx = _Context(suite, config)
    RUNNERS[suite](ctx)
    meta = {"catalog": config.catalog or "all", "grid": list(config.grid),
            "tolerance_overrides": dict(sorted(config.tolerances.items()))}
    if config.samples is not None:
        meta["samples"] = config.samples
    if hasattr(ctx, "branches"):
        meta["branches"] = ctx.branches
    return Report(suite, __version__, config.seed, ctx.checks, meta, timestamp=now())
