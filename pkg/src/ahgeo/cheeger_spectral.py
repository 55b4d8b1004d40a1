"""Cheeger-constant bounds for conformally compact submanifolds.

Upper bounds come from a closed form in the dimension and the asymptotic
mean curvature, factored through the first p-eigenvalue so the algebraic
chain can be checked independently.  Lower bounds come from the positive
eigenfunction test argument: a field u with Delta u = dim * u and
|grad u|^2 <= u^2 makes ln(u|_Y) a test function whose intrinsic Laplacian
is bounded below by k - beta - alpha, where beta measures the trace-free
Hessian of u across the normal bundle and alpha bounds |H|.  The ball-model
eigenfunction 2 cosh d(0, .) is supplied in closed form; its trace-free
Hessian vanishes identically, which is what makes brackets in hyperbolic
space collapse to the exact value k.

beta and alpha are sampled estimates and are reported as such (sample
count, refinement delta); no claim of an exact supremum is made anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from . import jets
from . import tensor_engine as te
from .catalog import hyperbolic_ball
from .errors import (DomainError, InvalidCMC, InvalidP, NotLeeEigenfunction)
from .submanifold import extrinsic_data, induced_chart, mean_curvature_norm


# --- closed-form bound chain --------------------------------------------------------


def _check_kc(k, C):
    k, C = float(k), float(C)
    if not k >= 1.0:
        raise ValueError(f"k must be >= 1, got {k:g}")
    if not np.isfinite(C) or abs(C) > k + 1.0:
        raise InvalidCMC(
            f"|C| = {abs(C):g} exceeds k+1 = {k + 1.0:g}; the asymptotic "
            "mean curvature of a conformally compact submanifold cannot")
    return k, C


def cheeger_upper_bound(k, C):
    """Upper bound k * sqrt(1 - C^2/(k+1)^2) for the Cheeger constant.

    k is the boundary dimension (intrinsic dimension minus one), C the
    asymptotic mean curvature.  C = 0 returns exactly k.
    """
    k, C = _check_kc(k, C)
    return k * math.sqrt(1.0 - (C / (k + 1.0)) ** 2)


def _check_p(p):
    p = float(p)
    if not (np.isfinite(p) and p > 1.0):
        raise InvalidP(f"need 1 < p < infinity, got p = {p:g}")
    return p


def lambda1p_upper(k, C, p):
    """Upper bound (k/p)^p (1 - C^2/(k+1)^2)^{p/2} for the first p-eigenvalue."""
    k, C = _check_kc(k, C)
    p = _check_p(p)
    return (k / p) ** p * (1.0 - (C / (k + 1.0)) ** 2) ** (p / 2.0)


def cheeger_upper_from_lambda(lam, p):
    """Cheeger bound p * lambda^{1/p} implied by a first-eigenvalue bound.

    Inverts the lower bound lambda_{1,p} >= (Ch/p)^p; composing with
    lambda1p_upper reproduces cheeger_upper_bound identically.
    """
    p = _check_p(p)
    lam = float(lam)
    if lam < 0.0:
        raise ValueError(f"eigenvalue bound must be >= 0, got {lam:g}")
    return p * lam ** (1.0 / p)


# --- eigenfunction machinery --------------------------------------------------------


@dataclass(frozen=True)
class LeeField:
    """A positive eigenfunction of the ambient Laplacian with its gauge.

    u is a scalar field on the ambient chart (written against the jets
    math functions when the chart differentiates in exact mode); gauge is
    the defining function r the normalization u - 1/r = O(1) refers to.
    check() verifies the contract pointwise: positivity, the eigenvalue
    equation Delta u = dim * u, and the gradient estimate |grad u|^2 <= u^2.
    """

    ambient: te.ChartMetric
    u: Callable
    gauge: Optional[Callable] = None
    name: str = "lee-field"

    def data_at(self, x):
        """(u, du, covariant Hessian, Laplacian, |grad u|^2_g) at a chart point."""
        x = np.asarray(x, dtype=float)
        u0, du, d2u = te.scalar_jet(self.ambient, self.u, x)
        gam = te.christoffel(self.ambient, x)
        hess = d2u - np.einsum("cab,c->ab", gam, du)
        ginv = np.linalg.inv(te.metric_at(self.ambient, x))
        lap = float(np.einsum("ab,ab", ginv, hess))
        gradsq = float(du @ ginv @ du)
        return u0, du, hess, lap, gradsq

    def check(self, points, tol=1e-8):
        """Raise NotLeeEigenfunction if the contract fails at any point."""
        m = self.ambient.dim
        for x in points:
            u0, _, _, lap, gradsq = self.data_at(x)
            if not u0 > 0.0:
                raise NotLeeEigenfunction(
                    f"{self.name}: u = {u0:g} is not positive at {np.asarray(x)}")
            if abs(lap - m * u0) > tol * max(1.0, abs(u0)):
                raise NotLeeEigenfunction(
                    f"{self.name}: |Delta u - {m} u| = {abs(lap - m * u0):.3g} "
                    f"at {np.asarray(x)} (tolerance {tol:g})")
            if gradsq > u0 * u0 * (1.0 + tol):
                raise NotLeeEigenfunction(
                    f"{self.name}: |grad u|^2 = {gradsq:.6g} exceeds "
                    f"u^2 = {u0 * u0:.6g} at {np.asarray(x)}")
        return True


def lee_hyperbolic(x):
    """Closed-form eigenfunction data at a ball-chart point.

    Returns (u, du, covariant Hessian) for u = 2(1+|x|^2)/(1-|x|^2), which
    is 2 cosh of the distance to the origin.  du is the chart partial
    vector; the covariant Hessian equals u * g exactly, so the trace-free
    part vanishes, Delta u = dim * u, and u^2 - |grad u|^2 = 4 identically.
    Against the gauge r = (1-|x|)/(1+|x|) the normalization defect is
    u - 1/r = (1-|x|)/(1+|x|), vanishing at the boundary.
    """
    x = np.asarray(x, dtype=float)
    s2 = float(x @ x)
    if s2 >= 1.0:
        raise DomainError(f"ball point needed, |x|^2 = {s2:g}")
    w = 1.0 - s2
    u = 2.0 * (1.0 + s2) / w
    du = 8.0 * x / (w * w)
    hess = (8.0 * (1.0 + s2) / w ** 3) * np.eye(x.size)
    return u, du, hess


def _u_ball(x):
    # jets-capable scalar so exact-mode charts differentiate it analytically
    s2 = x[0] * x[0]
    for c in x[1:]:
        s2 = s2 + c * c
    return 2.0 * (1.0 + s2) / (1.0 - s2)


def _r2_gauge(x):
    rho = float(np.sqrt(np.asarray(x, dtype=float) @ np.asarray(x, dtype=float)))
    return (1.0 - rho) / (1.0 + rho)


def lee_hyperbolic_field(dim):
    """The distance-cosh eigenfunction of the ball chart, packaged as a LeeField."""
    return LeeField(ambient=hyperbolic_ball(dim), u=_u_ball, gauge=_r2_gauge,
                    name=f"lee-hyperbolic({dim})")


def beta_Y(e, lee, samples, tol_contract=1e-8):
    """Sampled sup of u^{-1} tr(b(u)) over the normal bundle of e.

    b(u) is the trace-free Hessian of the eigenfunction; the trace runs
    over an orthonormal normal frame at each sample.  The eigenfunction
    contract is verified at every ambient point used, so a wired-in field
    that fails the eigenvalue equation is rejected rather than averaged
    over.  Returns the max over samples; an estimate of the sup, not the
    sup itself.
    """
    if e.ambient.dim != lee.ambient.dim:
        raise ValueError(
            f"ambient dimension mismatch: embedding has {e.ambient.dim}, "
            f"field has {lee.ambient.dim}")
    if e.ambient.name and lee.ambient.name and e.ambient.name != lee.ambient.name:
        raise ValueError(
            f"field is defined on {lee.ambient.name!r}, embedding sits in "
            f"{e.ambient.name!r}")
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample point")
    worst = -math.inf
    for x in samples:
        ed = extrinsic_data(e, np.asarray(x, dtype=float))
        f0 = ed.ambient_point
        lee.check([f0], tol=tol_contract)
        u0, _, hess, _, _ = lee.data_at(f0)
        tr = 0.0
        for nu in ed.normal_frame:
            tr += float(nu @ hess @ nu) - u0
        worst = max(worst, tr / u0)
    return float(worst)


def restricted_log_laplacian(e, lee, x):
    """Intrinsic Laplacian of ln(u|_Y) at an intrinsic point of e.

    This is the test-function quantity behind the lower bound: for an
    exactly minimal submanifold with vanishing b(u) it equals
    (k+1) - |grad ln u|^2 >= k pointwise.
    """
    chart = induced_chart(e)

    def fhat(y):
        p = np.array(e.chart_map(np.asarray(y, dtype=float)), dtype=float)
        return float(np.log(lee.u(p)))

    return te.laplacian_scalar(chart, fhat, np.asarray(x, dtype=float))


# --- lower bound and bracket --------------------------------------------------------


class LowerBound(tuple):
    """Value k - beta - alpha with a vacuousness flag (true when <= 0)."""

    __slots__ = ()

    def __new__(cls, value, vacuous):
        return tuple.__new__(cls, (float(value), bool(vacuous)))

    @property
    def value(self):
        return self[0]

    @property
    def vacuous(self):
        return self[1]


def cheeger_lower_bound(k, beta, alpha):
    """Lower bound k - beta - alpha; vacuous (flagged, not an error) when <= 0."""
    k = float(k)
    if not k >= 1.0:
        raise ValueError(f"k must be >= 1, got {k:g}")
    val = k - float(beta) - float(alpha)
    return LowerBound(val, not val > 0.0)


def _log_sinh(t):
    # log(sinh t) without overflow for large t
    return t + np.log1p(-np.exp(-2.0 * t)) - np.log(2.0)


def ball_isoperimetric_ratio(m, R):
    """Area/volume ratio of the geodesic R-ball in the m-dimensional ball model.

    The ratio is 1 / integral_0^R (sinh t / sinh R)^{m-1} dt; the integrand
    stays in [0, 1] for any m and R.  Strictly decreasing in R with limit
    m - 1; behaves like m/R for small R.  For R >= 2 the integral is
    recovered from its deficit against 1/(m-1), whose integrand is
    cancellation-free, so the strict excess of the ratio over m - 1 stays
    resolvable until it drops below double precision (around 2R = 72 ulps
    of m - 1 no longer register and the plateau value m - 1 is returned).
    """
    if int(m) != m or m < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {m!r}")
    R = float(R)
    if not (np.isfinite(R) and R > 0.0):
        raise ValueError(f"radius must be positive and finite, got {R:g}")
    m = int(m)

    if R < 2.0:
        ls_r = _log_sinh(R)

        def integrand(t):
            if t <= 0.0:
                return 0.0
            return float(np.exp((m - 1) * (_log_sinh(t) - ls_r)))

        val, err = quad(integrand, 0.0, R, limit=200,
                        epsabs=1e-13, epsrel=1e-12)
        if not val > 0.0 or err > 1e-6 * val:
            raise ValueError(
                f"quadrature failed: integral {val:g} with error "
                f"estimate {err:g}")
        return 1.0 / val

    # substituting tau = R - t, the integrand e^{(m-1) L(tau)} with
    # L = lsh(R - tau) - lsh(R) sits just below e^{-(m-1) tau}; the deficit
    # against integral_0^inf e^{-(m-1) tau} d tau = 1/(m-1) splits into the
    # truncated tail and a pointwise-positive difference
    e2r = np.exp(-2.0 * R)

    def short(tau):
        if tau >= R:
            return 0.0
        gap = e2r * np.expm1(2.0 * tau)          # e^{-2(R-tau)} - e^{-2R}
        delta = np.log1p(-gap / (1.0 - e2r))     # L(tau) + tau, <= 0
        return float(-np.exp(-(m - 1) * tau) * np.expm1((m - 1) * delta))

    tail = np.exp(-(m - 1) * R) / (m - 1)
    val, err, *info = quad(short, 0.0, R, limit=200, epsabs=1e-300,
                           epsrel=1e-10, full_output=1)
    deficit = tail + max(val, 0.0)
    return 1.0 / (1.0 / (m - 1) - deficit)


@dataclass(frozen=True)
class CheegerScenario:
    """Inputs for a Cheeger bracket.

    k and C alone give the upper bound; an embedding plus an eigenfunction
    field and interior sample points enable the lower bound.
    minimal_certified asserts the submanifold is exactly minimal (e.g. the
    profile equation residual gate passed), which sets alpha = 0 by
    construction; otherwise alpha defaults to the sampled max |H|.  An
    explicit alpha overrides both.
    """

    k: int
    C: float = 0.0
    embedding: object = None
    lee: Optional[LeeField] = None
    samples: Optional[tuple] = None
    minimal_certified: bool = False
    alpha: Optional[float] = None
    label: str = ""

    def __post_init__(self):
        _check_kc(self.k, self.C)
        if self.embedding is not None:
            if self.lee is None:
                raise ValueError("embedding scenarios need an eigenfunction field")
            if not self.samples:
                raise ValueError("embedding scenarios need sample points")
            want = self.embedding.intrinsic_dim - 1
            if self.k != want:
                raise ValueError(
                    f"k = {self.k} but the embedding has intrinsic "
                    f"dimension {self.embedding.intrinsic_dim} (k should be {want})")
        if self.minimal_certified and self.C != 0.0:
            raise ValueError("a certified-minimal scenario must have C = 0")


@dataclass(frozen=True)
class CheegerReport:
    """Assembled bracket: closed-form upper bound, sampled lower bound.

    beta_delta is the change in the beta estimate when half the samples
    are dropped (a refinement indicator, not an error bound).
    max_mean_curvature is the sampled max |H|, recorded as evidence even
    when alpha is pinned to 0 by a minimality certificate.  cheeger is set
    only when the bracket pins the constant to within the tolerance.
    """

    k: int
    C: float
    upper: float
    alpha: Optional[float]
    beta: Optional[float]
    lower: Optional[float]
    bracket_valid: bool
    determined: bool
    cheeger: Optional[float]
    sample_count: Optional[int]
    beta_delta: Optional[float]
    max_mean_curvature: Optional[float]
    label: str = ""


def cheeger_bracket(scenario, tol=1e-6, tol_contract=1e-8):
    """Assemble upper and lower Cheeger bounds for a scenario.

    Without an embedding only the upper bound is defined.  With one, beta
    comes from the eigenfunction's normal trace-free Hessian and alpha
    from the minimality certificate or the sampled |H|; the bracket is
    marked determined when upper and lower agree within tol.
    """
    upper = cheeger_upper_bound(scenario.k, scenario.C)
    if scenario.embedding is None:
        return CheegerReport(
            k=scenario.k, C=scenario.C, upper=upper, alpha=scenario.alpha,
            beta=None, lower=None, bracket_valid=False, determined=False,
            cheeger=None, sample_count=None, beta_delta=None,
            max_mean_curvature=None, label=scenario.label)

    e = scenario.embedding
    samples = [np.asarray(x, dtype=float) for x in scenario.samples]
    beta = beta_Y(e, scenario.lee, samples, tol_contract=tol_contract)
    half = samples[:max(1, len(samples) // 2)]
    beta_half = beta_Y(e, scenario.lee, half, tol_contract=tol_contract)
    max_h = max(mean_curvature_norm(e, x) for x in samples)
    if scenario.alpha is not None:
        alpha = float(scenario.alpha)
    elif scenario.minimal_certified:
        alpha = 0.0
    else:
        alpha = float(max_h)
    lb = cheeger_lower_bound(scenario.k, beta, alpha)
    bracket_valid = (not lb.vacuous) and lb.value <= upper + 1e-9
    determined = bracket_valid and abs(upper - lb.value) <= tol
    return CheegerReport(
        k=scenario.k, C=scenario.C, upper=upper, alpha=alpha, beta=beta,
        lower=lb.value, bracket_valid=bracket_valid, determined=determined,
        cheeger=upper if determined else None, sample_count=len(samples),
        beta_delta=abs(beta - beta_half), max_mean_curvature=float(max_h),
        label=scenario.label)
