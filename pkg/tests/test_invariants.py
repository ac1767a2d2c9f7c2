from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nks6 import jets
from nks6 import invariants as inv
from nks6.constructions import get_entry, great_sphere
from nks6.submanifold import CurvaturePackage, Immersion, NotLagrangian

TG = get_entry("tg-s3").item
ROT = get_entry("legendrian-torus").immersion3()
GREAT_ROT = get_entry("great-s2").immersion3()
PERTURBED = get_entry("perturbed").immersion3()
E = np.eye(7)


def small_three_sphere(r):
    """Sphere of radius r in the slice x_7 = sqrt(1 - r^2), chart (1, y) / |(1, y)|."""
    def f(u):
        p = [u[0] * 0.0 + 1.0, u[0], u[1], u[2]]
        n = jets.sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3])
        x = [r * c / n for c in p]
        zero = u[0] * 0.0
        return jets.stack([x[0], x[1], x[2], x[3], zero, zero, zero + np.sqrt(1 - r * r)])
    return Immersion(3, ((-1.0, 1.0),) * 3, f, f"small S^3 r={r}")


def test_plane_spec():
    g = np.diag([1.0, 4.0, 9.0])
    p = inv.PlaneSpec.from_vectors(g, [1, 1, 0], [0, 1, 0])
    p.check(g)
    with pytest.raises(ValueError):
        inv.PlaneSpec.from_vectors(g, [1, 0, 0], [2, 0, 0])
    with pytest.raises(ValueError):
        inv.PlaneSpec(np.array([1.0, 0, 0]), np.array([1.0, 0, 0])).check(g)


@pytest.mark.parametrize("u", [np.zeros(3), np.array([0.3, -0.5, 0.2])])
def test_unit_sectional_curvature_on_round_s3(u):
    pkg = CurvaturePackage(TG, u, order=3)
    rng = np.random.default_rng(0)
    for _ in range(5):
        plane = inv.PlaneSpec.from_vectors(pkg.metric, *rng.standard_normal((2, 3)))
        assert abs(inv.sectional_curvature(pkg, plane) - 1.0) <= 1e-9
    assert abs(inv.scalar_curvature(pkg) - 3.0) <= 1e-9


def test_flat_torus_surface_sectional_curvature():
    surf = get_entry("flat-torus").item.immersion
    pkg = CurvaturePackage(surf, np.array([0.7, -1.1]), order=3)
    plane = inv.PlaneSpec.from_vectors(pkg.metric, [1, 0], [0, 1])
    assert abs(inv.sectional_curvature(pkg, plane)) <= 1e-12
    assert abs(inv.scalar_curvature(pkg)) <= 1e-12


def test_mixed_plane_on_great_sphere_rotation():
    pkg = CurvaturePackage(GREAT_ROT, np.array([0.4, 0.3, 0.8]), order=3)
    plane = inv.PlaneSpec.from_vectors(pkg.metric, [1, 0, 0], [0, 1, 1])
    assert abs(inv.sectional_curvature(pkg, plane) - 1.0) <= 1e-9


@pytest.mark.parametrize("r", [0.5, 0.8])
def test_delta_on_small_three_sphere(r):
    pkg = CurvaturePackage(small_three_sphere(r), np.array([0.1, 0.2, -0.3]), order=3)
    c = 1.0 / r**2
    rep = inv.delta_invariant(pkg)
    assert abs(rep.tau - 3 * c) <= 1e-8 * c
    assert abs(rep.inf_K - c) <= 1e-8 * c
    assert abs(rep.delta - 2 * c) <= 1e-8 * c
    bound = 9 / 4 * (1 - r * r) / r**2 + 2
    assert abs(rep.chen_bound - bound) <= 1e-8 * bound
    assert rep.equality_gap >= 0


def test_delta_minimizer_refines_grid():
    pkg = CurvaturePackage(PERTURBED, np.array([0.2, 0.5, 0.7]), order=3)
    rep = inv.delta_invariant(pkg)
    assert rep.converged
    assert rep.inf_K <= rep.grid_inf_K + 1e-15
    assert abs(inv.sectional_curvature(pkg, rep.plane) - rep.inf_K) <= 1e-9
    ev = np.linalg.eigvalsh(inv.plane_curvature_form(pkg))
    assert abs(rep.inf_K - ev[0]) <= 1e-9


@given(st.lists(st.floats(-3, 3), min_size=6, max_size=6))
def test_minimize_on_sphere_finds_smallest_eigenvalue(c):
    a = np.array([[c[0], c[1], c[2]], [c[1], c[3], c[4]], [c[2], c[4], c[5]]])
    n, val, grid_val, _ = inv.minimize_on_sphere(a)
    assert abs(np.linalg.norm(n) - 1) <= 1e-12
    assert val <= grid_val + 1e-15
    assert abs(val - np.linalg.eigvalsh(a)[0]) <= 1e-8


def test_ricci_on_constant_curvature():
    c = 1 / 0.6**2
    pkg = CurvaturePackage(small_three_sphere(0.6), np.array([0.2, 0.1, 0.0]), order=3)
    rep = inv.ricci_quasi_einstein(pkg)
    assert np.allclose(rep.eigenvalues, 2 * c, rtol=1e-8)
    assert rep.multiplicity == 3 and rep.quasi_einstein


def test_ricci_multiplicity_two_on_legendrian_rotation():
    pkg = CurvaturePackage(ROT, np.array([0.3, 0.4, 1.3]), order=3)
    rep = inv.ricci_quasi_einstein(pkg)
    assert rep.multiplicity == 2 and rep.quasi_einstein
    assert abs(rep.eigenvalues.sum() - 2 * inv.scalar_curvature(pkg)) <= 1e-9


def test_minimality():
    pkg = CurvaturePackage(TG, np.array([0.1, 0.2, 0.3]), order=2)
    assert inv.minimality_check(pkg) <= 1e-12
    pkg = CurvaturePackage(small_three_sphere(0.5), np.zeros(3), order=2)
    assert abs(inv.minimality_check(pkg) - np.sqrt(0.75) / 0.5) <= 1e-10


def test_totally_real():
    assert inv.totally_real_check(TG, np.array([0.2, -0.4, 0.1])) <= 1e-12
    complex_s2 = great_sphere(E[0], E[1], E[2])
    assert abs(inv.totally_real_check(complex_s2, np.array([0.3, 0.5])) - 1.0) <= 1e-12


def fake_surface(h11, h12):
    h = np.array([[h11, h12], [h12, -h11]])
    return SimpleNamespace(dim=2, frame=np.eye(2), h=h, mean_curvature=np.zeros(7))


def test_ellipse_point_on_great_sphere():
    surf = great_sphere(E[0], E[1], E[3])
    pkg = CurvaturePackage(surf, np.array([0.2, 0.4]), order=2)
    rep = inv.ellipse_circle_check(pkg)
    assert rep.status == "point"
    assert max(rep.residuals) <= 1e-12


def test_ellipse_circle_any_rotation():
    pkg = fake_surface(0.7 * E[2], 0.7 * E[5])
    for angle in (0.0, np.pi / 6, 1.0):
        rep = inv.ellipse_circle_check(pkg, rotation=angle)
        assert rep.status == "circle"
        assert max(rep.residuals) <= 1e-12
        assert np.allclose(rep.semi_axes, (0.7, 0.7), atol=1e-12)


def test_ellipse_semi_axes_frame_independent():
    pkg = fake_surface(0.9 * E[2], 0.4 * E[5])
    base = inv.ellipse_circle_check(pkg)
    turned = inv.ellipse_circle_check(pkg, rotation=np.pi / 6)
    assert base.status == turned.status == "ellipse"
    assert np.allclose(base.semi_axes, (0.9, 0.4), atol=1e-12)
    assert np.allclose(turned.semi_axes, base.semi_axes, atol=1e-12)
    # the residual pair itself depends on the frame
    assert abs(turned.orthogonality - base.orthogonality) > 0.1


def test_ellipse_rejects_non_minimal():
    pkg = CurvaturePackage(get_entry("perturbed").item.immersion, np.array([0.3, 0.4]), order=2)
    with pytest.raises(ValueError):
        inv.ellipse_circle_check(pkg)


def test_chen_distribution():
    assert inv.chen_distribution(CurvaturePackage(TG, np.zeros(3), order=2)).dimension == 3
    pkg = CurvaturePackage(ROT, np.array([0.3, 0.4, 1.3]), order=2)
    dist = inv.chen_distribution(pkg)
    assert dist.dimension == 1
    assert inv.angle_between(pkg, dist.basis[0], np.eye(3)[0]) <= 1e-8
    pkg = CurvaturePackage(PERTURBED, np.array([0.3, 0.4, 0.5]), order=2)
    assert inv.chen_distribution(pkg).dimension == 0


def test_angle_between():
    pkg = CurvaturePackage(TG, np.zeros(3), order=2)
    assert abs(inv.angle_between(pkg, np.eye(3)[0], np.eye(3)[1]) - np.pi / 2) <= 1e-12
    assert inv.angle_between(pkg, np.eye(3)[0], -np.eye(3)[0]) == 0.0


def test_frame_form_degenerate_on_totally_geodesic():
    form = inv.frame_form_check(CurvaturePackage(TG, np.array([0.1, 0.2, 0.3]), order=2))
    assert form.tag == "degenerate"


def test_frame_form_case1_on_legendrian_rotation():
    pkg = CurvaturePackage(ROT, np.array([0.3, 0.4, 1.3]), order=2)
    form = inv.frame_form_check(pkg)
    assert form.tag == "case1"
    assert form.eigenvector_residual <= 1e-10
    assert form.mu_gap <= 1e-10
    assert max(abs(m) for m in form.mu) <= 1e-10
    assert abs(form.a) > 0.1
    assert abs(form.b + form.a) <= 1e-10
    renamed = inv.case1_renamed(form)
    expected = np.zeros((3, 3, 3))
    expected[0, 0, 0] = form.a
    expected[1, 1, 0] = expected[1, 0, 1] = expected[0, 1, 1] = -form.a
    assert np.abs(renamed - expected).max() <= 1e-10


def test_frame_form_requires_lagrangian():
    pkg = CurvaturePackage(PERTURBED, np.array([0.3, 0.4, 0.5]), order=2)
    with pytest.raises(NotLagrangian):
        inv.frame_form_check(pkg)
