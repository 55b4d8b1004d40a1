"""Pointwise curvature of coordinate-chart metrics.

A ChartMetric is a coordinate chart plus a metric component field; all
derived tensors (Christoffel, Riemann, Ricci, scalar, Weyl, Schouten) are
evaluated pointwise.  Riemannian and Lorentzian signatures are both
supported; index raising always uses the full inverse metric.

Derivative strategy: exact forward-mode jets by default, order-4 central
finite differences (step h = eps_machine**(1/5) * scale) as a cross-check
mode.  Every derivative query reports a truncation-error estimate (0 in
exact mode).

Curvature convention, fixed here once for the whole package:

    riemann[i, j, k, l] = g(R(e_k, e_l) e_j, e_i),
    R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,

so sectional curvature is riemann[i,j,k,l] u^i v^j u^k v^l / Gram(u, v),
positive (+1) on the unit sphere and -1 on hyperbolic space, and
ricci = g^{ik} riemann[i,j,k,l] gives Ric = -n g on the Poincare ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import jets
from .errors import (DegenerateMetric, DegeneratePlane, DimensionTooSmall,
                     DomainError)

EPS_DEGENERATE = 1e-12   # relative eigenvalue floor
TOL_IDENTITY = 1e-6      # default residual tolerance for tensor identities

# order-4 central stencil, offsets -2,-1,1,2
_C1 = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
_OFF1 = np.array([-2, -1, 1, 2])


@dataclass(frozen=True)
class ChartMetric:
    """Metric components on a single coordinate chart.

    components(x) must return a symmetric dim x dim matrix; in exact mode it
    is called with an object array of Jet2 coordinates and must therefore be
    written against the dispatching math functions in ahgeo.jets.  domain, if
    given, maps a float point to bool; False raises DomainError.
    """

    dim: int
    signature: tuple
    components: Callable
    derivative_mode: str = "exact-forward"   # or "fd-4"
    fd_step: Optional[float] = None
    domain: Optional[Callable] = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionTooSmall("chart dimension must be >= 1")
        sig = tuple(int(s) for s in self.signature)
        if len(sig) != self.dim or any(s not in (-1, 1) for s in sig):
            raise ValueError("signature must be a length-dim tuple of +/-1")
        object.__setattr__(self, "signature", sig)
        if self.derivative_mode not in ("exact-forward", "fd-4"):
            raise ValueError(f"unknown derivative_mode {self.derivative_mode!r}")

    def with_mode(self, mode, fd_step=None):
        return ChartMetric(self.dim, self.signature, self.components,
                           derivative_mode=mode, fd_step=fd_step,
                           domain=self.domain, name=self.name)


@dataclass(frozen=True)
class MetricJet:
    """Metric with first/second coordinate derivatives at a point.

    dg[a, i, j] = d_a g_ij ; d2g[a, b, i, j] = d_a d_b g_ij.
    err is the estimated truncation error of the derivative entries.
    """

    g: np.ndarray
    dg: np.ndarray
    d2g: np.ndarray
    err: float


@dataclass(frozen=True)
class CurvatureBundle:
    christoffel: np.ndarray          # [c, a, b] = Gamma^c_ab
    riemann: np.ndarray              # [i, j, k, l], convention in module docstring
    ricci: np.ndarray
    scalar: float
    weyl: Optional[np.ndarray]       # None when dim < 4 (identically zero there)
    schouten: Optional[np.ndarray]   # None when dim < 3
    has_weyl: bool = field(default=False)
    has_schouten: bool = field(default=False)
    deriv_error: float = 0.0


def _check_domain(m, x):
    if m.domain is not None and not m.domain(np.asarray(x, dtype=float)):
        raise DomainError(f"point {np.asarray(x)} outside domain of chart {m.name!r}")


def _validate(m, g, eps_degenerate):
    if not np.allclose(g, g.T, atol=1e-10 * max(1.0, float(np.abs(g).max()))):
        raise DegenerateMetric(f"components not symmetric on chart {m.name!r}")
    w = np.linalg.eigvalsh(0.5 * (g + g.T))
    scale = float(np.abs(w).max())
    if scale == 0.0 or float(np.abs(w).min()) <= eps_degenerate * scale:
        raise DegenerateMetric(f"metric degenerate on chart {m.name!r}: eigenvalues {w}")
    n_neg = int(np.sum(w < 0))
    if n_neg != sum(1 for s in m.signature if s == -1):
        raise DegenerateMetric(
            f"metric signature mismatch on chart {m.name!r}: "
            f"{n_neg} negative eigenvalues, declared {m.signature}")
    return g


def metric_at(m, x, eps_degenerate=EPS_DEGENERATE):
    """Validated metric matrix at x (symmetry, nondegeneracy, signature)."""
    x = np.asarray(x, dtype=float)
    _check_domain(m, x)
    g = jets.as_value_array(np.asarray(m.components(x)))
    return _validate(m, g, eps_degenerate)


def _fd_steps(m, x):
    if m.fd_step is not None:
        return np.full(m.dim, m.fd_step)
    base = np.finfo(float).eps ** 0.2
    return base * np.maximum(1.0, np.abs(x))


def _eval_matrix(m, x):
    return jets.as_value_array(np.asarray(m.components(np.asarray(x, dtype=float))))


def metric_jet(m, x, eps_degenerate=EPS_DEGENERATE, estimate_error=True):
    """Metric, first and second derivatives at x, per the chart's mode."""
    x = np.asarray(x, dtype=float)
    _check_domain(m, x)
    d = m.dim
    if m.derivative_mode == "exact-forward":
        G = np.asarray(m.components(jets.seed(x)))
        g = np.empty((d, d))
        dg = np.zeros((d, d, d))
        d2g = np.zeros((d, d, d, d))
        for i in range(d):
            for j in range(d):
                e = G[i, j]
                if isinstance(e, jets.Jet2):
                    g[i, j] = e.val
                    dg[:, i, j] = e.grad
                    d2g[:, :, i, j] = e.hess
                else:
                    g[i, j] = float(e)
        _validate(m, g, eps_degenerate)
        return MetricJet(g, dg, d2g, 0.0)

    # fd-4 mode
    h = _fd_steps(m, x)
    g = _eval_matrix(m, x)
    _validate(m, g, eps_degenerate)
    cache = {}

    def ev(offsets):  # offsets: tuple of (axis, steps)
        key = tuple(offsets)
        if key not in cache:
            xx = x.copy()
            for a, k in offsets:
                xx[a] += k * h[a]
            cache[key] = _eval_matrix(m, xx)
        return cache[key]

    dg = np.zeros((d, d, d))
    d2g = np.zeros((d, d, d, d))
    for a in range(d):
        f = [ev(((a, k),)) for k in _OFF1]
        dg[a] = sum(c * fi for c, fi in zip(_C1, f)) / h[a]
        d2g[a, a] = (-f[3] + 16 * f[2] - 30 * g + 16 * f[1] - f[0]) / (12 * h[a] ** 2)
    for a in range(d):
        for b in range(a + 1, d):
            acc = np.zeros_like(g)
            for ka, ca in zip(_OFF1, _C1):
                for kb, cb in zip(_OFF1, _C1):
                    acc += ca * cb * ev(((a, ka), (b, kb)))
            d2g[a, b] = d2g[b, a] = acc / (h[a] * h[b])

    err = 0.0
    if estimate_error:
        # Compare against the 2h stencil (reuses the +/-2h evaluations).
        # |D_h - D_2h| ~ 15x the true error of D_h; reported undivided so the
        # estimate stays conservative after error amplification through
        # inverse-metric products in the curvature assembly.
        for a in range(d):
            f2 = [ev(((a, 2 * k),)) for k in _OFF1]
            d1_2h = sum(c * fi for c, fi in zip(_C1, f2)) / (2 * h[a])
            d2_2h = (-f2[3] + 16 * f2[2] - 30 * g + 16 * f2[1] - f2[0]) / (12 * (2 * h[a]) ** 2)
            err = max(err,
                      float(np.abs(dg[a] - d1_2h).max()),
                      float(np.abs(d2g[a, a] - d2_2h).max()))
    return MetricJet(g, dg, d2g, err)


def _christoffel_from_jet(mj):
    ginv = np.linalg.inv(mj.g)
    dg = mj.dg
    # Gamma_{c,ab} = (d_a g_cb + d_b g_ca - d_c g_ab) / 2
    gl = 0.5 * (np.einsum("acb->cab", dg) + np.einsum("bca->cab", dg)
                - np.einsum("cab->cab", dg))
    return ginv, gl, np.einsum("mc,cab->mab", ginv, gl)


def christoffel(m, x, eps_degenerate=EPS_DEGENERATE):
    """Levi-Civita symbols Gamma^c_{ab}, indexed [c, a, b]."""
    mj = metric_jet(m, x, eps_degenerate)
    return _christoffel_from_jet(mj)[2]


def curvature(m, x, want_weyl=None, want_schouten=None,
              eps_degenerate=EPS_DEGENERATE):
    """Full CurvatureBundle at x.

    want_weyl / want_schouten: None picks them up automatically when the
    dimension allows (>= 4 resp. >= 3); True insists and raises
    DimensionTooSmall below that; False skips.
    """
    d = m.dim
    if d < 2:
        raise DimensionTooSmall("curvature needs dim >= 2")
    mj = metric_jet(m, x, eps_degenerate)
    ginv, gl, gam = _christoffel_from_jet(mj)

    # d_e Gamma^m_ab = d_e g^{mc} Gamma_{c,ab} + g^{mc} d_e Gamma_{c,ab}
    dginv = -np.einsum("mp,epq,qc->emc", ginv, mj.dg, ginv)
    dgl = 0.5 * (np.einsum("eacb->ecab", mj.d2g) + np.einsum("ebca->ecab", mj.d2g)
                 - np.einsum("ecab->ecab", mj.d2g))
    dgam = np.einsum("emc,cab->emab", dginv, gl) + np.einsum("mc,ecab->emab", ginv, dgl)

    # R^m_{jkl} = d_k Gamma^m_{lj} - d_l Gamma^m_{kj}
    #             + Gamma^m_{ka} Gamma^a_{lj} - Gamma^m_{la} Gamma^a_{kj}
    r13 = (np.einsum("kmlj->mjkl", dgam) - np.einsum("lmkj->mjkl", dgam)
           + np.einsum("mka,alj->mjkl", gam, gam)
           - np.einsum("mla,akj->mjkl", gam, gam))
    riem = np.einsum("im,mjkl->ijkl", mj.g, r13)
    ricci = np.einsum("ik,ijkl->jl", ginv, riem)
    scalar = float(np.einsum("jl,jl", ginv, ricci))

    schouten = None
    if want_schouten is True and d < 3:
        raise DimensionTooSmall("Schouten tensor needs dim >= 3")
    if want_schouten is not False and d >= 3:
        schouten = (ricci - scalar / (2 * (d - 1)) * mj.g) / (d - 2)

    weyl = None
    if want_weyl is True and d < 4:
        raise DimensionTooSmall("Weyl tensor needs dim >= 4")
    if want_weyl is not False and d >= 4:
        # Weyl needs the Schouten tensor even when the caller skipped it
        p = schouten if schouten is not None else \
            (ricci - scalar / (2 * (d - 1)) * mj.g) / (d - 2)
        weyl = riem - kulkarni_nomizu(p, mj.g)

    return CurvatureBundle(gam, riem, ricci, scalar, weyl, schouten,
                           has_weyl=weyl is not None,
                           has_schouten=schouten is not None,
                           deriv_error=mj.err)


def kulkarni_nomizu(a, b):
    """(a ^ b)_{ijkl} = a_ik b_jl + a_jl b_ik - a_il b_jk - a_jk b_il."""
    return (np.einsum("ik,jl->ijkl", a, b) + np.einsum("jl,ik->ijkl", a, b)
            - np.einsum("il,jk->ijkl", a, b) - np.einsum("jk,il->ijkl", a, b))


def _scalar_jet(m, f, x):
    x = np.asarray(x, dtype=float)
    d = m.dim
    if m.derivative_mode == "exact-forward":
        jf = f(jets.seed(x))
        if isinstance(jf, jets.Jet2):
            return float(jf.val), jf.grad.copy(), jf.hess.copy()
        return float(jf), np.zeros(d), np.zeros((d, d))
    h = _fd_steps(m, x)
    f0 = float(f(x))

    def ev(a, k, b=None, kb=0):
        xx = x.copy()
        xx[a] += k * h[a]
        if b is not None:
            xx[b] += kb * h[b]
        return float(f(xx))

    df = np.zeros(d)
    d2f = np.zeros((d, d))
    for a in range(d):
        vals = [ev(a, k) for k in _OFF1]
        df[a] = sum(c * v for c, v in zip(_C1, vals)) / h[a]
        d2f[a, a] = (-vals[3] + 16 * vals[2] - 30 * f0 + 16 * vals[1] - vals[0]) / (12 * h[a] ** 2)
    for a in range(d):
        for b in range(a + 1, d):
            s = 0.0
            for ka, ca in zip(_OFF1, _C1):
                for kb, cb in zip(_OFF1, _C1):
                    s += ca * cb * ev(a, ka, b, kb)
            d2f[a, b] = d2f[b, a] = s / (h[a] * h[b])
    return f0, df, d2f


def scalar_jet(m, f, x):
    """Value and chart partials (f, df, d2f) of a scalar field at x."""
    _check_domain(m, np.asarray(x, dtype=float))
    return _scalar_jet(m, f, x)


def hessian_scalar(m, f, x, eps_degenerate=EPS_DEGENERATE):
    """Covariant Hessian (nabla^2 f)_ab = d_a d_b f - Gamma^c_ab d_c f."""
    _check_domain(m, np.asarray(x, dtype=float))
    _, df, d2f = _scalar_jet(m, f, x)
    gam = christoffel(m, x, eps_degenerate)
    return d2f - np.einsum("cab,c->ab", gam, df)


def laplacian_scalar(m, f, x, eps_degenerate=EPS_DEGENERATE):
    """Laplace-Beltrami of f at x: full metric trace of the Hessian."""
    hess = hessian_scalar(m, f, x, eps_degenerate)
    g = metric_at(m, x, eps_degenerate)
    return float(np.einsum("ab,ab", np.linalg.inv(g), hess))


def sectional_curvature(m, x, u, v, eps_plane=1e-12,
                        eps_degenerate=EPS_DEGENERATE):
    """K(u, v) = R(u,v,u,v) / (|u|^2 |v|^2 - <u,v>^2) at x."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    bundle = curvature(m, x, want_weyl=False, want_schouten=False,
                       eps_degenerate=eps_degenerate)
    g = metric_at(m, x, eps_degenerate)
    uu = float(u @ g @ u)
    vv = float(v @ g @ v)
    uv = float(u @ g @ v)
    gram = uu * vv - uv * uv
    scale = max(1.0, abs(uu * vv) + uv * uv)
    if abs(gram) <= eps_plane * scale:
        raise DegeneratePlane(f"plane Gram determinant {gram} below tolerance")
    num = float(np.einsum("ijkl,i,j,k,l", bundle.riemann, u, v, u, v))
    return num / gram
