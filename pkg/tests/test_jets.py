import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nks6 import jets
from nks6.jets import Jet

from conftest import seeds


def t_jet(order=4, at=0.0):
    return Jet.variable(0, at, 1, order)


def test_coefficient_count():
    for n in (1, 2, 3):
        for k in range(1, 5):
            assert Jet.constant(0.0, n, k).coef.shape[-1] == math.comb(n + k, k)


def test_t_squared():
    t = t_jet(2)
    assert jets.jet_mul(t, t).coef.tolist() == [0.0, 0.0, 1.0]
    assert jets.extract_partial(t * t, (2,)) == 2.0


def test_sin_cos_product():
    t = t_jet(3)
    c = (jets.sin(t) * jets.cos(t)).coef
    assert np.allclose(c, [0.0, 1.0, 0.0, -2.0 / 3.0], rtol=0, atol=1e-15)


def test_analytic_primitives():
    t = t_jet(4)
    assert np.allclose(jets.jet_compose_analytic("sin", t).coef, [0, 1, 0, -1 / 6, 0], atol=1e-15)
    assert np.allclose(jets.jet_compose_analytic("cos", Jet.constant(0.0, 1, 4)).coef,
                       [1, 0, 0, 0, 0])
    assert np.allclose(jets.jet_compose_analytic("sqrt", 1.0 + t_jet(2)).coef,
                       [1.0, 0.5, -0.125], atol=1e-15)
    assert np.isclose(jets.extract_partial(jets.cos(t), (4,)), 1.0)
    with pytest.raises(ValueError):
        jets.jet_compose_analytic("tan", t)


def test_domain_errors():
    t = t_jet(2)
    with pytest.raises(ValueError):
        jets.sqrt(t - 1.0)
    with pytest.raises(ValueError):
        jets.reciprocal(t)


def test_uv_mixed_partial():
    u, v = jets.seed([0.3, -0.2], 2)
    assert jets.extract_partial(u * v, (1, 1)) == 1.0


def test_extract_beyond_order():
    with pytest.raises(ValueError):
        jets.extract_partial(t_jet(2), (3,))


def test_jet_mul_shape_mismatch():
    a = Jet.constant(np.zeros(3), 1, 2)
    b = Jet.constant(np.zeros(2), 1, 2)
    with pytest.raises(ValueError):
        jets.jet_mul(a, b)


def test_matrix_inverse():
    x, y = jets.seed([0.1, 0.2], 3)
    m = jets.stack([jets.stack([2.0 + x, y]), jets.stack([y * x, 3.0 + jets.sin(y)])])
    eye = m @ jets.inv(m)
    expected = Jet.constant(np.eye(2), 2, 3)
    assert np.abs(eye.coef - expected.coef).max() < 1e-14


def _random_expression(rng):
    """A composite scalar function of three variables built from the primitives."""
    a, b, c, d = rng.uniform(-1, 1, 4)

    def f(x, y, z, lib):
        s = lib.sin(a * x + y * z) * lib.exp(b * y)
        r = lib.sqrt(2.0 + x * x + c * y * z)
        return s / r + lib.cos(d * z - x * y) * (x + 0.5)

    return f


@pytest.mark.parametrize("case", range(100))
def test_finite_difference_oracle(case):
    rng = np.random.default_rng(case)
    f = _random_expression(rng)
    p = rng.uniform(-0.8, 0.8, 3)
    jet = f(*jets.seed(p, 2), jets)
    h = 1e-5
    eye = np.eye(3)

    def ev(q):
        return f(*q, np)

    for i in range(3):
        fd = (ev(p + h * eye[i]) - ev(p - h * eye[i])) / (2 * h)
        idx = tuple(int(i == k) for k in range(3))
        assert abs(jets.extract_partial(jet, idx) - fd) <= 1e-7
        for j in range(i, 3):
            fd2 = (ev(p + h * eye[i] + h * eye[j]) - ev(p + h * eye[i] - h * eye[j])
                   - ev(p - h * eye[i] + h * eye[j]) + ev(p - h * eye[i] - h * eye[j])) / (4 * h * h)
            idx = tuple(int(i == k) + int(j == k) for k in range(3))
            assert abs(jets.extract_partial(jet, idx) - fd2) <= 1e-4


@pytest.mark.parametrize("name, d", [
    ("sin", [math.sin, math.cos, lambda x: -math.sin(x), lambda x: -math.cos(x), math.sin]),
    ("cos", [math.cos, lambda x: -math.sin(x), lambda x: -math.cos(x), math.sin, math.cos]),
    ("exp", [math.exp] * 5),
    ("sqrt", [lambda x: x ** 0.5, lambda x: 0.5 * x ** -0.5, lambda x: -0.25 * x ** -1.5,
              lambda x: 0.375 * x ** -2.5, lambda x: -0.9375 * x ** -3.5]),
    ("reciprocal", [lambda x: 1 / x, lambda x: -x ** -2, lambda x: 2 * x ** -3,
                    lambda x: -6 * x ** -4, lambda x: 24 * x ** -5]),
])
def test_chain_rule_against_analytic_derivatives(name, d):
    x0 = 0.7
    j = jets.jet_compose_analytic(name, t_jet(4, x0))
    for k in range(5):
        exact = d[k](x0)
        assert abs(jets.extract_partial(j, (k,)) - exact) <= 1e-12 * max(1.0, abs(exact))


def _random_jet(rng, nvars=3, order=4):
    return Jet(rng.standard_normal(jets.ncoef(nvars, order)), nvars, order)


@given(seeds)
def test_product_commutative(seed):
    rng = np.random.default_rng(seed)
    a, b = _random_jet(rng), _random_jet(rng)
    assert np.array_equal((a * b).coef, (b * a).coef)


@given(seeds)
def test_product_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (Jet(rng.integers(-5, 6, jets.ncoef(3, 4)).astype(float), 3, 4) for _ in range(3))
    assert np.array_equal(((a * b) * c).coef, (a * (b * c)).coef)


@given(seeds)
def test_leibniz(seed):
    rng = np.random.default_rng(seed)
    a, b = _random_jet(rng), _random_jet(rng)
    lhs = jets.partial(a * b, 0)
    rhs = jets.partial(a, 0) * b.truncate(3) + a.truncate(3) * jets.partial(b, 0)
    assert np.allclose(lhs.coef, rhs.coef, rtol=1e-12, atol=1e-12)


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_pythagoras(x, y):
    a, _ = jets.seed([x, y], 4)
    one = jets.sin(a) * jets.sin(a) + jets.cos(a) * jets.cos(a)
    assert abs(one.coef[0] - 1.0) < 1e-14
    assert np.abs(one.coef[1:]).max() < 1e-14
