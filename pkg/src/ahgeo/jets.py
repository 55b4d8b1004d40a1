"""Second-order forward-mode jets.

A Jet2 carries the value, gradient and Hessian of a scalar expression with
respect to ``d`` seed variables.  Arithmetic propagates all three exactly
(product/quotient/chain rules), so evaluating a metric component field on
seeded jets yields the components together with their first and second
coordinate derivatives in a single pass, at machine precision.  That is the
accuracy backbone: curvature consumes two metric derivatives, and stacked
finite differences alone would not keep six significant digits there.

The module-level math functions (sqrt, exp, sin, ...) dispatch on type and
fall back to numpy for plain floats, so the same field implementation serves
the exact mode and the finite-difference cross-check mode.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Jet2", "seed", "constant", "value", "as_value_array",
    "sqrt", "exp", "log", "sin", "cos", "tan",
    "sinh", "cosh", "tanh", "arctan", "arcsinh", "arctanh",
]


class Jet2:
    """Truncated second-order Taylor coefficient triple (val, grad, hess)."""

    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess):
        self.val = float(val)
        self.grad = np.asarray(grad, dtype=float)
        self.hess = np.asarray(hess, dtype=float)

    @classmethod
    def variable(cls, value, index, dim):
        grad = np.zeros(dim)
        grad[index] = 1.0
        return cls(value, grad, np.zeros((dim, dim)))

    @classmethod
    def constant(cls, value, dim):
        return cls(value, np.zeros(dim), np.zeros((dim, dim)))

    @property
    def dim(self):
        return self.grad.shape[0]

    def __repr__(self):
        return f"Jet2({self.val!r}, grad={self.grad!r})"

    # --- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.val + other.val, self.grad + other.grad,
                        self.hess + other.hess)
        return Jet2(self.val + other, self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.val, -self.grad, -self.hess)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet2) else -float(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet2):
            cross = np.outer(self.grad, other.grad)
            return Jet2(self.val * other.val,
                        self.val * other.grad + other.val * self.grad,
                        self.val * other.hess + other.val * self.hess
                        + cross + cross.T)
        c = float(other)
        return Jet2(c * self.val, c * self.grad, c * self.hess)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other._reciprocal()
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def _reciprocal(self):
        t = self.val
        return _chain(self, 1.0 / t, -1.0 / t**2, 2.0 / t**3)

    def __pow__(self, p):
        if isinstance(p, Jet2):
            return exp(p * log(self))
        p = float(p)
        t = self.val
        if p == 2.0:  # common case, avoids 0**negative at t = 0
            return _chain(self, t * t, 2.0 * t, 2.0)
        return _chain(self, t**p, p * t**(p - 1), p * (p - 1) * t**(p - 2))

    def __rpow__(self, base):
        return exp(self * np.log(base))

    # value-based ordering, used by domain guards
    def __lt__(self, other):
        return self.val < value(other)

    def __le__(self, other):
        return self.val <= value(other)

    def __gt__(self, other):
        return self.val > value(other)

    def __ge__(self, other):
        return self.val >= value(other)


def seed(x):
    """Seed coordinates: object array of Jet2 variables for the point x."""
    x = np.asarray(x, dtype=float)
    d = x.shape[0]
    out = np.empty(d, dtype=object)
    for i in range(d):
        out[i] = Jet2.variable(x[i], i, d)
    return out


def constant(c, dim):
    return Jet2.constant(c, dim)


def value(x):
    """Plain float value of a jet or number."""
    return x.val if isinstance(x, Jet2) else float(x)


def as_value_array(a):
    """Elementwise values of an array that may contain jets."""
    a = np.asarray(a)
    if a.dtype == object:
        return np.array([[value(e) for e in row] for row in a.reshape(a.shape[0], -1)],
                        dtype=float).reshape(a.shape)
    return a.astype(float)


def _chain(u, f0, f1, f2):
    # f(u) for scalar f with derivatives f1, f2 at u.val
    g = np.outer(u.grad, u.grad)
    return Jet2(f0, f1 * u.grad, f1 * u.hess + f2 * g)


def _dispatch(np_fn, f1, f2):
    def wrapped(x):
        if isinstance(x, Jet2):
            t = x.val
            return _chain(x, np_fn(t), f1(t), f2(t))
        return np_fn(x)
    wrapped.__name__ = np_fn.__name__
    return wrapped


sqrt = _dispatch(np.sqrt, lambda t: 0.5 / np.sqrt(t),
                 lambda t: -0.25 * t**-1.5)
exp = _dispatch(np.exp, np.exp, np.exp)
log = _dispatch(np.log, lambda t: 1.0 / t, lambda t: -1.0 / t**2)
sin = _dispatch(np.sin, np.cos, lambda t: -np.sin(t))
cos = _dispatch(np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t))
tan = _dispatch(np.tan, lambda t: 1.0 / np.cos(t)**2,
                lambda t: 2.0 * np.tan(t) / np.cos(t)**2)
sinh = _dispatch(np.sinh, np.cosh, np.sinh)
cosh = _dispatch(np.cosh, np.sinh, np.cosh)
tanh = _dispatch(np.tanh, lambda t: 1.0 / np.cosh(t)**2,
                 lambda t: -2.0 * np.tanh(t) / np.cosh(t)**2)
arctan = _dispatch(np.arctan, lambda t: 1.0 / (1.0 + t**2),
                   lambda t: -2.0 * t / (1.0 + t**2)**2)
arcsin = _dispatch(np.arcsin, lambda t: (1.0 - t**2)**-0.5,
                   lambda t: t * (1.0 - t**2)**-1.5)
arccos = _dispatch(np.arccos, lambda t: -(1.0 - t**2)**-0.5,
                   lambda t: -t * (1.0 - t**2)**-1.5)
arcsinh = _dispatch(np.arcsinh, lambda t: (1.0 + t**2)**-0.5,
                    lambda t: -t * (1.0 + t**2)**-1.5)
arctanh = _dispatch(np.arctanh, lambda t: 1.0 / (1.0 - t**2),
                    lambda t: 2.0 * t / (1.0 - t**2)**2)
