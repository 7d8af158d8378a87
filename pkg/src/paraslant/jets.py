"""Truncated multivariate Taylor jets of order 3.

A :class:`Jet3` stores the value of a scalar function of ``m`` variables
together with its gradient, Hessian and third-derivative tensor at one point.
Arithmetic propagates all four through the Leibniz and Faa di Bruno rules, so
derivatives of any expression built from the supported primitives are exact
up to rounding.

Example:
    >>> x = lift_variable(0, 2.0, 1)
    >>> y = x * x
    >>> float(y.value), float(y.grad[0]), float(y.hess[0, 0])
    (4.0, 4.0, 2.0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, JetDivisionByZero, JetDomainError

__all__ = [
    "Jet3",
    "lift_variable",
    "lift_constant",
    "combine",
    "apply_univariate",
    "UNIVARIATE",
]


def _sym3(h: np.ndarray, v: np.ndarray) -> np.ndarray:
    # t[i,j,k] = h[i,j] v[k] + h[i,k] v[j] + h[j,k] v[i]
    t = np.einsum("ij,k->ijk", h, v)
    return t + t.transpose(0, 2, 1) + t.transpose(2, 1, 0)


@dataclass(frozen=True, eq=False)
class Jet3:
    """Order-3 jet of a scalar function of ``m`` variables."""

    value: float
    grad: np.ndarray
    hess: np.ndarray
    third: np.ndarray

    @property
    def m(self) -> int:
        return self.grad.shape[0]

    # Operator sugar; plain floats are lifted to constants.
    def _coerce(self, other) -> "Jet3":
        if isinstance(other, Jet3):
            return other
        return lift_constant(float(other), self.m)

    def __add__(self, other):
        return combine("add", self, self._coerce(other))

    def __radd__(self, other):
        return combine("add", self._coerce(other), self)

    def __sub__(self, other):
        return combine("sub", self, self._coerce(other))

    def __rsub__(self, other):
        return combine("sub", self._coerce(other), self)

    def __mul__(self, other):
        return combine("mul", self, self._coerce(other))

    def __rmul__(self, other):
        return combine("mul", self._coerce(other), self)

    def __truediv__(self, other):
        return combine("div", self, self._coerce(other))

    def __rtruediv__(self, other):
        return combine("div", self._coerce(other), self)

    def __neg__(self):
        return combine("neg", self, self)

    def __pow__(self, n: int):
        return apply_univariate("pow", self, n)

    def __repr__(self) -> str:
        return f"Jet3(value={self.value!r}, grad={self.grad.tolist()!r}, m={self.m})"


def lift_variable(index: int, point_value: float, m: int) -> Jet3:
    """Jet of the coordinate function ``x[index]`` at ``point_value``."""
    if not 0 <= index < m:
        raise InputError(f"variable index {index} out of range for m={m}")
    grad = np.zeros(m)
    grad[index] = 1.0
    return Jet3(float(point_value), grad, np.zeros((m, m)), np.zeros((m, m, m)))


def lift_constant(c: float, m: int) -> Jet3:
    return Jet3(float(c), np.zeros(m), np.zeros((m, m)), np.zeros((m, m, m)))


def _mul(a: Jet3, b: Jet3) -> Jet3:
    av, bv = a.value, b.value
    outer = np.outer(a.grad, b.grad)
    return Jet3(
        av * bv,
        a.grad * bv + av * b.grad,
        a.hess * bv + outer + outer.T + av * b.hess,
        a.third * bv + _sym3(a.hess, b.grad) + _sym3(b.hess, a.grad) + av * b.third,
    )


def _compose(a: Jet3, d0: float, d1: float, d2: float, d3: float) -> Jet3:
    """Chain rule for ``phi(a)`` given phi and its first three derivatives at a.value."""
    ag = a.grad
    return Jet3(
        d0,
        d1 * ag,
        d2 * np.outer(ag, ag) + d1 * a.hess,
        d3 * np.einsum("i,j,k->ijk", ag, ag, ag) + d2 * _sym3(a.hess, ag) + d1 * a.third,
    )


def _reciprocal(b: Jet3) -> Jet3:
    x = b.value
    if x == 0.0:
        raise JetDivisionByZero("division by a jet whose value is zero")
    r = 1.0 / x
    return _compose(b, r, -r * r, 2.0 * r**3, -6.0 * r**4)


def combine(op: str, a: Jet3, b: Jet3) -> Jet3:
    """Binary jet arithmetic; ``op`` is one of add, sub, mul, div, neg.

    For ``neg`` the second operand is ignored.
    """
    if a.m != b.m:
        raise InputError(f"jet dimension mismatch: {a.m} vs {b.m}")
    if op == "add":
        return Jet3(a.value + b.value, a.grad + b.grad, a.hess + b.hess, a.third + b.third)
    if op == "sub":
        return Jet3(a.value - b.value, a.grad - b.grad, a.hess - b.hess, a.third - b.third)
    if op == "mul":
        return _mul(a, b)
    if op == "div":
        return _mul(a, _reciprocal(b))
    if op == "neg":
        return Jet3(-a.value, -a.grad, -a.hess, -a.third)
    raise InputError(f"unknown jet operation {op!r}")


def _derivs_pow(x: float, n: int) -> tuple[float, float, float, float]:
    if n < 0 and x == 0.0:
        raise JetDivisionByZero(f"zero base raised to negative power {n}")
    out = []
    coef = 1.0
    for k in range(4):
        # coef = n (n-1) ... (n-k+1); vanishes for k > n >= 0, so no negative powers of 0
        out.append(0.0 if coef == 0.0 else coef * x ** (n - k))
        coef *= n - k
    return tuple(out)  # type: ignore[return-value]


def _derivs_sqrt(x: float) -> tuple[float, float, float, float]:
    if not x > 0.0:
        raise JetDomainError(f"sqrt of non-positive value {x!r}")
    s = math.sqrt(x)
    return s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x)


def _derivs_simple(name: str, x: float) -> tuple[float, float, float, float]:
    if name == "cosh":
        c, s = math.cosh(x), math.sinh(x)
        return c, s, c, s
    if name == "sinh":
        c, s = math.cosh(x), math.sinh(x)
        return s, c, s, c
    if name == "cos":
        c, s = math.cos(x), math.sin(x)
        return c, -s, -c, s
    if name == "sin":
        c, s = math.cos(x), math.sin(x)
        return s, c, -s, -c
    if name == "exp":
        e = math.exp(x)
        return e, e, e, e
    raise InputError(f"unsupported function {name!r}")


UNIVARIATE = ("cosh", "sinh", "cos", "sin", "exp", "sqrt", "pow")


def apply_univariate(f: str, a: Jet3, n: int | None = None) -> Jet3:
    """Compose a supported scalar function with a jet.

    Args:
        f: one of ``cosh, sinh, cos, sin, exp, sqrt, pow``.
        a: the inner jet.
        n: integer exponent, required for ``pow``.
    """
    x = a.value
    if f == "pow":
        if n is None or int(n) != n:
            raise InputError("pow needs an integer exponent")
        return _compose(a, *_derivs_pow(x, int(n)))
    if f == "sqrt":
        return _compose(a, *_derivs_sqrt(x))
    return _compose(a, *_derivs_simple(f, x))
