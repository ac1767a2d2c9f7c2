"""Acceptance criteria 1-10, one PASS/FAIL line each.

Runs under pytest (lines appear in the live output) or directly with
``python3 tests/test_acceptance.py``.
"""

from functools import lru_cache

import numpy as np
import pytest

from nks6 import cayley, invariants, nearly_kahler
from nks6.constructions import catalog, search_lagrangian_subspaces
from nks6.report import to_json
from nks6.submanifold import CurvaturePackage
from nks6.suites import SUITES, RunConfig, run_suite

TOL = {
    "algebra": 1e-12, "g_xx": 1e-9, "totally_real": 1e-12, "h_zero": 1e-9,
    "sectional": 1e-8, "tau": 1e-7, "delta": 1e-6, "gauss": 1e-7, "codazzi": 1e-7,
    "ricci": 1e-7, "shape": 1e-8, "cubic": 1e-8, "tsinghua": 1e-6, "oracle": 1e-7,
    "mixed_zero": 1e-9, "metric": 1e-10, "dichotomy": 1e-10, "sect_cos": 1e-7,
    "eig": 1e-6, "mu": 1e-6, "lagrangian": 1e-9, "minimal": 1e-8, "gap": 1e-6,
}


def announce(number, ok, detail, capsys=None):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


@lru_cache(maxsize=None)
def suite(name, catalog_id=None, seed=0, grid=(5, 5, 5)):
    return run_suite(RunConfig(catalog=catalog_id, seed=seed, grid=grid), name)


def rows(report, catalog_id=None):
    return {c.name: c for c in report.checks if catalog_id is None or c.catalog == catalog_id}


def criterion_1():
    eye = np.eye(7)
    table = max(float(np.abs(cayley.cross(eye[j], eye[k])
                             - (np.sign(t) * eye[abs(t) - 1] if t else 0)).max())
                for j in range(7) for k in range(7)
                for t in [int(cayley.SIGNED_TABLE[j, k])])
    rep = cayley.verify_algebra(trials=10_000, rng=0, tol=TOL["algebra"])
    worst = max(rep.antisymmetry, rep.orthogonality, rep.norm_identity)
    ok = table == 0.0 and rep.basis_exact and worst <= TOL["algebra"]
    return ok, f"49 table entries max deviation {table:.1e}; 10^4 pairs worst {worst:.2e} <= 1e-12"


def criterion_2():
    rep = nearly_kahler.verify_nearly_kahler(samples=1000, rng=0)
    r = rep.residuals["G(X,X) = 0"]
    return r <= TOL["g_xx"], f"G(X,X)=0 holds, residual {r:.2e} <= 1e-9 at 1000 (p, X)"


def criterion_3():
    certs = [c for c in search_lagrangian_subspaces() if len(c.indices) == 4]
    lag = [c for c in certs if c.tag == "lagrangian"]
    tr = max(c.lagrangian_residual for c in lag) if lag else np.inf
    imm = catalog()["tg-s3"].item
    worst = dict(h=0.0, sect=0.0, tau=0.0, delta=0.0)
    for u in imm.grid((5, 5, 5)):
        pkg = CurvaturePackage(imm, u, order=3)
        d = invariants.delta_invariant(pkg)
        ev = np.linalg.eigvalsh(invariants.plane_curvature_form(pkg))
        worst["h"] = max(worst["h"], float(np.abs(pkg.in_frame(pkg.h, 2)).max()))
        worst["sect"] = max(worst["sect"], float(np.abs(ev - 1).max()))
        worst["tau"] = max(worst["tau"], abs(d.tau - 3))
        worst["delta"] = max(worst["delta"], abs(d.delta - 2))
    ok = (len(certs) == 35 and bool(lag) and tr <= TOL["totally_real"] and worst["h"] <= TOL["h_zero"]
          and worst["sect"] <= TOL["sectional"] and worst["tau"] <= TOL["tau"]
          and worst["delta"] <= TOL["delta"])
    return ok, (f"{len(lag)}/35 coordinate 4-subspaces Lagrangian (residual {tr:.1e}); "
                f"|h| {worst['h']:.1e}, |K-1| {worst['sect']:.1e}, |tau-3| {worst['tau']:.1e}, "
                f"|delta-2| {worst['delta']:.1e}")


def _lagrangian_ids(report):
    return [c.catalog for c in report.checks if c.name == "lagrangian" and c.residual <= TOL["lagrangian"]]


def criterion_4():
    rep = suite("structure-equations")
    ids = _lagrangian_ids(rep)
    limits = {"gauss_dual_path": TOL["gauss"], "codazzi": TOL["codazzi"],
              "ricci_equation": TOL["ricci"], "shape_operator_identity": TOL["shape"],
              "cubic_form_symmetry": TOL["cubic"]}
    worst = {k: max(rows(rep, i)[k].residual for i in ids) for k in limits}
    ok = bool(ids) and all(worst[k] <= v for k, v in limits.items())
    return ok, f"on {', '.join(ids)}: " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items())


def criterion_5():
    rep = suite("tsinghua")
    ids = _lagrangian_ids(rep)
    names = ("symmetric_slot", "cyclic_normal_form", "cyclic_j_form")
    worst = {k: max(rows(rep, i)[k].residual for i in ids) for k in names}
    ok = bool(ids) and all(v <= TOL["tsinghua"] for v in worst.values())
    return ok, f"on {', '.join(ids)}: " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items())


def criterion_6():
    r = rows(suite("warped-oracle"))
    a, b = r["oracle_random"].residual, r["mixed_zero_components"].residual
    return (a <= TOL["oracle"] and b <= TOL["mixed_zero"],
            f"20 seeded random products: assembly vs intrinsic {a:.1e}, zero components {b:.1e}")


def criterion_7():
    rep = suite("theorem1")
    names = ("metric_tt", "metric_t_fiber", "metric_fiber_block")
    surfaces = [e for e in catalog().values() if e.kind == "surface"]
    worst = {k: max(rows(rep, e.id)[k].residual for e in surfaces) for k in names}
    ok = all(v <= TOL["metric"] for v in worst.values())
    return ok, (f"{len(surfaces)} surfaces incl. non-totally-real: "
                + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def criterion_8():
    w = rows(suite("warped-oracle"))
    d, s = w["dichotomy_cos_round"].residual, w["sectional_cos_round"].residual
    ok = d <= TOL["dichotomy"] and s <= TOL["sect_cos"]
    detail = f"cos t x round: scalar {d:.1e}, |K-1| {s:.1e}"
    rep = suite("theorem1")
    ideal = [k for k, v in rep.metadata["branches"].items() if v == "ideal"]
    if ideal:
        eig = max(rows(rep, i)["dichotomy_eigenvector"].residual for i in ideal)
        mu = max(rows(rep, i)["dichotomy_mu_equal"].residual for i in ideal)
        ok = ok and eig <= TOL["eig"] and mu <= TOL["mu"]
        detail += f"; K_N = 0 fiber on {', '.join(ideal)}: eigenvector {eig:.1e}, mu2-mu3 {mu:.1e}"
    else:
        detail += "; conditional: no qualifying input"
    return ok, detail


def criterion_9():
    rep = suite("theorem1")
    ideal = [k for k, v in rep.metadata["branches"].items() if v == "ideal"]
    if not ideal:
        return True, "conditional: no totally real non-totally-geodesic rotation example"
    parts, ok = [], True
    for i in ideal:
        r = rows(rep, i)
        vals = {"|H|": r["minimality"].residual, "delta gap": r["delta_equality_gap"].residual,
                "Ricci gap": r["quasi_einstein"].residual,
                "dim D - 1": r["distribution_dimension"].residual,
                "angle(D, dt)": r["distribution_alignment"].residual,
                "case1": r["frame_form_case1"].residual}
        ok &= (vals["|H|"] <= TOL["minimal"] and vals["delta gap"] <= TOL["delta"]
               and vals["Ricci gap"] <= TOL["gap"] and vals["dim D - 1"] == 0
               and vals["angle(D, dt)"] <= TOL["gap"] and vals["case1"] == 0
               and r["totally_real"].residual <= TOL["lagrangian"])
        parts.append(f"{i}: " + ", ".join(f"{k} {v:.1e}" for k, v in vals.items()))
    return ok, "; ".join(parts)


def criterion_10():
    grid = (3, 3, 3)
    same = []
    for name in SUITES:
        a = run_suite(RunConfig(seed=7, grid=grid), name)
        b = run_suite(RunConfig(seed=7, grid=grid), name)
        same.append(to_json(a, timestamp=False) == to_json(b, timestamp=False))
    return all(same), f"{sum(same)}/{len(SUITES)} suites byte-identical modulo timestamp"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    assert announce(number, ok, detail, capsys), detail


if __name__ == "__main__":
    for n, fn in enumerate(CRITERIA, 1):
        announce(n, *fn())
