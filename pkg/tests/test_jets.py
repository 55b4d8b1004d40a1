"""Forward-mode jet correctness against closed-form derivatives."""

import numpy as np
from hypothesis import given, settings, strategies as st

from ahgeo import jets
from ahgeo.jets import Jet2


def _num(f, x, i, h=1e-5):
    xp = x.copy(); xp[i] += h
    xm = x.copy(); xm[i] -= h
    return (f(xp) - f(xm)) / (2 * h)


coord = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)


@given(coord, coord)
@settings(max_examples=200, deadline=None)
def test_polynomial_grad_hess(a, b):
    x, y = jets.seed([a, b])
    f = x * x * y + 3.0 * x - y / 2.0 + (x - y) ** 3
    gx = 2 * a * b + 3 + 3 * (a - b) ** 2
    gy = a * a - 0.5 - 3 * (a - b) ** 2
    assert np.allclose(f.grad, [gx, gy], atol=1e-10)
    hxx = 2 * b + 6 * (a - b)
    hxy = 2 * a - 6 * (a - b)
    hyy = 6 * (a - b)
    assert np.allclose(f.hess, [[hxx, hxy], [hxy, hyy]], atol=1e-10)


@given(coord, coord)
@settings(max_examples=200, deadline=None)
def test_transcendental_composite(a, b):
    x, y = jets.seed([a, b])
    f = jets.sin(x) * jets.exp(y) + jets.cosh(x * y)
    ea = np.exp(b)
    assert np.isclose(f.val, np.sin(a) * ea + np.cosh(a * b))
    assert np.isclose(f.grad[0], np.cos(a) * ea + b * np.sinh(a * b), atol=1e-9)
    assert np.isclose(f.grad[1], np.sin(a) * ea + a * np.sinh(a * b), atol=1e-9)
    # mixed second derivative
    hxy = np.cos(a) * ea + np.sinh(a * b) + a * b * np.cosh(a * b)
    assert np.isclose(f.hess[0, 1], hxy, atol=1e-9)
    assert np.allclose(f.hess, f.hess.T)


@given(st.floats(min_value=0.1, max_value=3.0), st.floats(min_value=-1.5, max_value=1.5))
@settings(max_examples=150, deadline=None)
def test_quotient_and_power(a, b):
    x, y = jets.seed([a, b])
    f = (1.0 + y * y) / x + x ** 2.5
    fx = -(1.0 + b * b) / a**2 + 2.5 * a**1.5
    fxx = 2 * (1.0 + b * b) / a**3 + 2.5 * 1.5 * a**0.5
    assert np.isclose(f.grad[0], fx, rtol=1e-12)
    assert np.isclose(f.hess[0, 0], fxx, rtol=1e-12)
    assert np.isclose(f.hess[1, 1], 2.0 / a, rtol=1e-12)


def test_each_function_against_finite_differences():
    fns = [jets.sqrt, jets.exp, jets.log, jets.sin, jets.cos, jets.tan,
           jets.sinh, jets.cosh, jets.tanh, jets.arctan, jets.arcsinh,
           jets.arctanh]
    t0 = 0.37  # inside every domain used above
    for fn in fns:
        x = jets.seed([t0])[0]
        j = fn(x)
        g = _num(lambda v: fn(float(v[0])), np.array([t0]), 0, h=1e-6)
        h2 = 1e-4
        d2 = (fn(t0 + h2) - 2 * fn(t0) + fn(t0 - h2)) / h2**2
        assert np.isclose(j.grad[0], g, rtol=1e-7), fn.__name__
        assert np.isclose(j.hess[0, 0], d2, rtol=1e-5, atol=1e-6), fn.__name__


def test_scalar_mixing_and_reflected_ops():
    (x,) = jets.seed([2.0])
    assert (3.0 - x).val == 1.0
    assert (3.0 / x).val == 1.5
    assert np.isclose((3.0 / x).grad[0], -0.75)
    assert np.isclose((2.0 ** x).val, 4.0)
    assert np.isclose((2.0 ** x).grad[0], 4.0 * np.log(2.0))
    assert (x ** x).val == 4.0
    assert np.isclose((x ** x).grad[0], 4.0 * (np.log(2.0) + 1.0))
    assert x > 1.0 and x >= 2.0 and x < 3.0 and x <= 2.0


def test_seed_and_constant_shapes():
    xs = jets.seed([1.0, 2.0, 3.0])
    assert all(isinstance(x, Jet2) and x.dim == 3 for x in xs)
    assert np.allclose([x.val for x in xs], [1.0, 2.0, 3.0])
    c = jets.constant(5.0, 3)
    assert c.val == 5.0 and not c.grad.any() and not c.hess.any()
    assert jets.value(c) == 5.0 and jets.value(4.25) == 4.25


def test_as_value_array_mixed():
    (x,) = jets.seed([2.0])
    m = np.array([[x, 1.0], [1.0, x * x]], dtype=object)
    v = jets.as_value_array(m)
    assert v.dtype == float and np.allclose(v, [[2.0, 1.0], [1.0, 4.0]])
