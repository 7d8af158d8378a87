import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from paraslant.errors import JetDivisionByZero, JetDomainError
from paraslant.exprdsl import eval_jet, parse
from paraslant.jets import Jet3, apply_univariate, combine, lift_constant, lift_variable

X, Y = sp.symbols("x y")
# independent oracle: sympy symbolic derivatives up to order 3
CASES = [
    "x*y^2 - 3*x",
    "sin(x)*cosh(y)",
    "exp(x*y)/(1 + y^2)",
    "sqrt(2 + x^2 + y)",
    "(x - y)^(-2)",
    "cos(x^2)*sinh(x - y)",
]


def _sympy_jet(text, point):
    f = sp.sympify(text.replace("^", "**"))
    vs = (X, Y)
    sub = dict(zip(vs, point))
    val = float(f.subs(sub))
    grad = np.array([float(sp.diff(f, a).subs(sub)) for a in vs])
    hess = np.array([[float(sp.diff(f, a, b).subs(sub)) for b in vs] for a in vs])
    third = np.array([[[float(sp.diff(f, a, b, c).subs(sub)) for c in vs] for b in vs] for a in vs])
    return val, grad, hess, third


@pytest.mark.parametrize("text", CASES)
def test_jet_matches_symbolic_derivatives(text):
    pt = (0.3, -0.7)
    j = eval_jet(parse(text, ("x", "y")), {"x": pt[0], "y": pt[1]})
    val, grad, hess, third = _sympy_jet(text, pt)
    assert math.isclose(j.value, val, rel_tol=1e-13, abs_tol=1e-13)
    np.testing.assert_allclose(j.grad, grad, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(j.hess, hess, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(j.third, third, rtol=1e-11, atol=1e-11)


def test_doc_example():
    x = lift_variable(0, 2.0, 1)
    y = x * x
    assert (y.value, y.grad[0], y.hess[0, 0], y.third[0, 0, 0]) == (4.0, 4.0, 2.0, 0.0)


def test_third_derivative_tensor_is_symmetric():
    j = eval_jet(parse("sin(x*y^2)*exp(x)", ("x", "y")), {"x": 0.4, "y": 1.1})
    for perm in [(1, 0, 2), (0, 2, 1), (2, 1, 0)]:
        np.testing.assert_allclose(j.third, j.third.transpose(perm), atol=1e-14)


def test_finite_difference_of_hessian_gives_third():
    f = parse("cosh(x)*y^3 + x/(2+y)", ("x", "y"))
    p, h = np.array([0.2, 0.5]), 1e-5
    j = eval_jet(f, {"x": p[0], "y": p[1]})
    for k in range(2):
        e = np.eye(2)[k] * h
        hp = eval_jet(f, dict(zip("xy", p + e))).hess
        hm = eval_jet(f, dict(zip("xy", p - e))).hess
        np.testing.assert_allclose((hp - hm) / (2 * h), j.third[k], atol=1e-6)


finite = st.floats(-2, 2, allow_nan=False)


@given(finite, finite, finite)
def test_leibniz_rule_for_products(a, b, c):
    x, y = lift_variable(0, a, 2), lift_variable(1, b, 2)
    lhs = (x * y) * (x + c)
    rhs = x * (y * x) + c * (x * y)
    for attr in ("value", "grad", "hess", "third"):
        np.testing.assert_allclose(getattr(lhs, attr), getattr(rhs, attr), atol=1e-10)


@given(st.floats(0.1, 3), st.integers(-4, 5))
def test_integer_power_matches_repeated_product(a, n):
    x = lift_variable(0, a, 1)
    ref = lift_constant(1.0, 1)
    for _ in range(abs(n)):
        ref = ref * x
    if n < 0:
        ref = 1.0 / ref
    got = x ** n
    np.testing.assert_allclose([got.value, got.grad[0], got.hess[0, 0], got.third[0, 0, 0]],
                               [ref.value, ref.grad[0], ref.hess[0, 0], ref.third[0, 0, 0]], rtol=1e-10, atol=1e-10)


@given(finite)
def test_cosh_sinh_identity(a):
    x = lift_variable(0, a, 1)
    one = apply_univariate("cosh", x) ** 2 - apply_univariate("sinh", x) ** 2
    assert abs(one.value - 1) < 1e-10
    assert np.max(np.abs(one.grad)) < 1e-9 and np.max(np.abs(one.third)) < 1e-8


def test_division_by_zero_and_domain():
    x = lift_variable(0, 0.0, 1)
    with pytest.raises(JetDivisionByZero):
        combine("div", lift_constant(1.0, 1), x)
    with pytest.raises(JetDomainError):
        apply_univariate("sqrt", x - 1.0)
    with pytest.raises(JetDivisionByZero):
        x ** -1


def test_constant_has_no_derivatives():
    c = lift_constant(3.5, 3)
    assert isinstance(c, Jet3) and c.m == 3
    assert not c.grad.any() and not c.hess.any() and not c.third.any()
