import numpy as np
import pytest
from hypothesis import given, strategies as st

from nks6 import jets
from nks6 import submanifold as sm
from nks6.cayley import basis, cross
from nks6.constructions import get_entry, small_sphere
from nks6.submanifold import CurvaturePackage, Immersion

TG = get_entry("tg-s3").item
ROT = get_entry("legendrian-torus").immersion3()
PERTURBED = get_entry("perturbed").immersion3()
LAGRANGIAN = {"tg-s3": TG, "great-s2": get_entry("great-s2").immersion3(), "legendrian": ROT}


def frame_box(imm):
    lo, hi = zip(*imm.safe_box())
    return st.tuples(*[st.floats(a, b) for a, b in zip(lo, hi)]).map(np.array)


def test_immersion_validation():
    with pytest.raises(ValueError):
        Immersion(4, ((0, 1),) * 4, lambda u: u)
    with pytest.raises(ValueError):
        Immersion(2, ((0, 1), (1, 0)), lambda u: u)


def test_off_sphere_and_degenerate():
    def scaled(u):
        return 2.0 * TG.map(u)

    with pytest.raises(ValueError):
        CurvaturePackage(Immersion(3, TG.domain, scaled), np.zeros(3))

    def pinched(u):
        a, b, c = u
        return TG.map([a, b, c * 0.0])

    with pytest.raises(sm.DegenerateMetric):
        CurvaturePackage(Immersion(3, TG.domain, pinched), np.zeros(3))


def test_round_metric_at_chart_center():
    pkg = sm.fundamental_data(TG, np.zeros(3))
    assert np.allclose(pkg.metric, np.eye(3), atol=1e-15)
    assert np.abs(pkg.christoffel).max() < 1e-15


def test_totally_geodesic_s3():
    pkg = sm.second_fundamental_form(TG, np.array([0.2, -0.3, 0.4]))
    assert np.abs(pkg.h).max() <= 1e-9
    g = pkg.metric
    expected = np.einsum("jk,il->ijkl", g, np.eye(3)) - np.einsum("ik,jl->ijkl", g, np.eye(3))
    assert np.abs(pkg.curvature - expected).max() <= 1e-9
    assert np.abs(pkg.nabla_h).max() <= 1e-9
    assert np.abs(pkg.nabla2_h).max() <= 1e-8
    assert np.abs(sm.shape_operator(pkg, cross(pkg.position, pkg.tangents[0]))).max() <= 1e-9


def test_totally_geodesic_normal_curvature():
    pkg = CurvaturePackage(TG, np.array([0.1, 0.5, -0.2]))
    conn, form_j, form_gr = sm.normal_curvature(pkg)
    # h = 0 and the ambient curvature has no normal part, so R^⊥ vanishes
    assert np.abs(conn).max() <= 1e-9
    assert np.abs(form_j).max() <= 1e-9
    assert np.abs(form_gr).max() <= 1e-9
    # antisymmetric in the first two slots, so X = Y gives zero
    assert np.abs(conn + conn.transpose(1, 0, 2, 3)).max() <= 1e-12


@pytest.mark.parametrize("radius", [0.3, 0.6, 0.9])
def test_small_sphere_umbilic(radius):
    e = np.eye(7)
    surf = small_sphere(radius, e[0], e[1], e[3], e[6])
    pkg = CurvaturePackage(surf, np.array([0.3, 0.7]), order=3)
    hf = pkg.in_frame(pkg.h, 2)
    k = np.sqrt(1 - radius**2) / radius
    assert abs(np.linalg.norm(hf[0, 0]) - k) <= 1e-10
    assert abs(np.linalg.norm(hf[1, 1]) - k) <= 1e-10
    assert np.linalg.norm(hf[0, 1]) <= 1e-10
    assert abs(np.linalg.norm(pkg.mean_curvature) - k) <= 1e-10


def test_flat_torus_surface_is_flat():
    surf = get_entry("flat-torus").item.immersion
    pkg = CurvaturePackage(surf, np.array([1.0, 2.0]), order=3)
    assert np.abs(pkg.curvature).max() <= 1e-12


def test_rotation_slice_at_t0():
    surf = get_entry("legendrian-torus").item.immersion
    q = np.array([0.4, 1.3])
    rot_pkg = CurvaturePackage(ROT, np.array([0.0, *q]), order=2)
    surf_pkg = CurvaturePackage(surf, q, order=2)
    assert np.allclose(rot_pkg.position, surf_pkg.position, atol=1e-15)
    assert np.allclose(rot_pkg.metric[1:, 1:], surf_pkg.metric, atol=1e-15)


def test_rotation_h_tt_vanishes_but_h_does_not():
    pkg = CurvaturePackage(ROT, np.array([0.3, 0.4, 1.3]), order=2)
    assert np.linalg.norm(pkg.h[0, 0]) <= 1e-12
    assert np.abs(pkg.h).max() > 0.1


def test_shape_operator_trace_and_symmetry():
    pkg = CurvaturePackage(ROT, np.array([0.3, 0.4, 1.3]), order=2)
    g = pkg.metric
    for xi in pkg.j_normals:
        a = pkg.shape_operator(xi)
        assert np.abs(g @ a - (g @ a).T).max() <= 1e-12
        assert abs(np.trace(a) - 3 * pkg.mean_curvature @ xi) <= 1e-10
    with pytest.raises(ValueError):
        pkg.shape_operator(pkg.tangents[0])


def test_pointwise_totally_real_is_not_lagrangian():
    # at the chart origin J maps tangent to normal, yet the cubic form is not symmetric
    pkg = CurvaturePackage(PERTURBED, np.zeros(3), order=3)
    assert pkg.lagrangian_residual() <= 1e-12
    with pytest.raises(sm.NotLagrangian):
        pkg.require_lagrangian()
    assert sm.curvature_tensor(pkg)[2] <= 1e-7


def test_gauss_equation_general_form_on_non_lagrangian():
    pkg = CurvaturePackage(PERTURBED, np.array([0.2, 0.5, 0.7]), order=3)
    assert pkg.lagrangian_residual() > 1e-3
    intrinsic, extrinsic, residual = sm.curvature_tensor(pkg)
    assert residual <= 1e-7
    with pytest.raises(sm.NotLagrangian):
        sm.normal_curvature(pkg)


@pytest.mark.parametrize("name", sorted(LAGRANGIAN))
def test_structure_equations(name):
    imm = LAGRANGIAN[name]
    for u in imm.grid(3):
        res = sm.structure_equation_residuals(CurvaturePackage(imm, u, order=3))
        assert res["gauss_dual_path"] <= 1e-7
        assert res["codazzi"] <= 1e-7
        assert res["ricci_equation"] <= 1e-7
        assert res["ricci_gauss_form"] <= 1e-7
        assert res["normal_curvature_dual_path"] <= 1e-7
        assert res["shape_operator_identity"] <= 1e-8
        assert res["cubic_form_symmetry"] <= 1e-8
        assert res["normal_j_derivative"] <= 1e-7
        assert res["curvature_symmetries"] <= 1e-8


@pytest.mark.parametrize("name", sorted(LAGRANGIAN))
def test_tsinghua_identities(name):
    imm = LAGRANGIAN[name]
    for u in imm.grid(2):
        res = sm.tsinghua_residuals(CurvaturePackage(imm, u, order=4))
        assert res["symmetric_slot"] <= 1e-6
        assert res["ricci_identity"] <= 1e-6
        assert res["cyclic_normal_form"] <= 1e-6
        assert res["cyclic_j_form"] <= 1e-6
        assert res["forms_consistent"] <= 1e-8


def test_ricci_identity_on_non_lagrangian():
    pkg = CurvaturePackage(PERTURBED, np.array([0.2, 0.5, 0.7]), order=4)
    assert sm.ricci_identity_residual(pkg) <= 1e-6


def test_tsinghua_random_frames():
    rng = np.random.default_rng(3)
    pkg = CurvaturePackage(ROT, np.array([-0.4, 2.0, 0.7]), order=4)
    for _ in range(5):
        w, x, y, z = rng.standard_normal((4, 3))
        assert sm.verify_tsinghua_identity(pkg, w, x, y, z) <= 1e-6


def test_order_requirements():
    pkg = CurvaturePackage(ROT, np.array([0.1, 0.2, 0.3]), order=2)
    with pytest.raises(ValueError):
        pkg.curvature
    pkg3 = CurvaturePackage(ROT, np.array([0.1, 0.2, 0.3]), order=3)
    with pytest.raises(ValueError):
        pkg3.nabla2_h


@given(frame_box(ROT))
def test_package_invariants_on_rotation(u):
    pkg = CurvaturePackage(ROT, u, order=3)
    g, h = pkg.metric, pkg.h
    assert np.abs(g - g.T).max() == 0.0
    assert np.linalg.eigvalsh(g).min() > 0
    assert np.abs(h - h.transpose(1, 0, 2)).max() <= 1e-12
    assert np.abs(h @ pkg.tangents.T).max() <= 1e-10
    assert np.abs(h @ pkg.position).max() <= 1e-10
    assert sm.curvature_symmetry_residual(pkg.in_frame(pkg.riemann, 4)) <= 1e-8


@given(frame_box(PERTURBED))
def test_intrinsic_matches_gauss_on_perturbed(u):
    pkg = CurvaturePackage(PERTURBED, u, order=3)
    assert sm.curvature_tensor(pkg)[2] <= 1e-7


def test_christoffel_oracle_polar_metric():
    # dr^2 + r^2 dθ^2: Γ^r_θθ = -r, Γ^θ_rθ = 1/r
    r, th = jets.seed([2.0, 0.3], 2)
    zero = r * 0.0
    g = jets.stack([jets.stack([zero + 1.0, zero]), jets.stack([zero, r * r])])
    gam = sm.christoffel_from_metric(g).value
    assert abs(gam[0, 1, 1] + 2.0) < 1e-14
    assert abs(gam[1, 0, 1] - 0.5) < 1e-14
    assert np.abs(sm.intrinsic_curvature(g)).max() < 1e-13
