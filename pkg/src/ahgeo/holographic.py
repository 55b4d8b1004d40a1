"""Normal-form collars, boundary expansions, curvature defects, classification.

A NormalFormFamily carries a one-parameter family of boundary metrics g_r on
an n-manifold, encoding the compactified metric gbar = dr^2 + g_r of an
(n+1)-dimensional asymptotically hyperbolic metric g_+ = r^{-2} gbar written
with a special defining function (|dr|_gbar = 1 in the collar).

Everything here is a pointwise computation with two independent routes
wherever the underlying identity has two sides:

  * metric expansion      g_r = g0 + g1 r + g2 r^2 + g3 r^3 + O(r^4)
    route A: r-derivatives of g_r;  route B: curvature of the collar
    (g1 = -2 Lhat, g2 = -Rbar_{0i0j} + Lhat^2, 6 g3 = -2 d_r Rbar_{0i0j}
     + 2 (Lhat Rbar_{0.0.} + sym)).
  * curvature defects of g_+ against hyperbolic normalization
    route A: boundary-data formulas; route B: conformal transformation law
    evaluated at small r.

Index conventions: collar charts order coordinates (r, x^1..x^n); the "0"
index of the paper-style quantities (Rbar_{0i0j}, Rbar_00) is the r slot.
The level-set shape operator is Lbar_r = -1/2 d_r g_r, so the boundary
second fundamental form is Lhat = Lbar_0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from . import jets
from . import tensor_engine as te
from .errors import DimensionTooSmall, DomainError, IllConditionedFit
from .extrapolate import (R_MIN_DEFAULT, RUNGS_DEFAULT, ladder_fit,
                          richardson_limit)

TOL_EXACT = 1e-6
TOL_FD = 1e-4


@dataclass(frozen=True)
class NormalFormFamily:
    """Boundary metric family g_r defining gbar = dr^2 + g_r on [0, r_max)."""

    boundary_dim: int
    g_r: Callable                 # (r, x) -> symmetric n x n matrix; jets-aware
    r_max: float = 0.5
    name: str = ""
    derivative_mode: str = "exact-forward"
    boundary_box: Optional[tuple] = None   # per-coordinate (lo, hi) sample box
    metadata: dict = field(default_factory=dict)  # claimed_einstein, yamabe_sign

    def __post_init__(self):
        if self.boundary_dim < 2:
            raise DimensionTooSmall("boundary must have dimension >= 2")
        if self.boundary_box is None:
            object.__setattr__(self, "boundary_box",
                               ((0.3, 1.1),) * self.boundary_dim)

    @property
    def tol(self):
        return TOL_EXACT if self.derivative_mode == "exact-forward" else TOL_FD


def boundary_points(fam, count, seed=0):
    """Deterministic sample points in the family's boundary box."""
    rng = np.random.default_rng(seed)
    box = np.asarray(fam.boundary_box, dtype=float)
    return rng.uniform(box[:, 0], box[:, 1], size=(count, fam.boundary_dim))


# --- charts -------------------------------------------------------------------

def boundary_chart(fam):
    """(Sigma, ghat) with ghat = g_r |_{r=0}."""
    def comp(x):
        return fam.g_r(0.0, x)
    return te.ChartMetric(fam.boundary_dim, (1,) * fam.boundary_dim, comp,
                          derivative_mode=fam.derivative_mode,
                          name=f"{fam.name}:boundary")


def collar_chart(fam):
    """Compactified metric gbar = dr^2 + g_r, coordinates (r, x)."""
    n = fam.boundary_dim

    def comp(p):
        g = np.asarray(fam.g_r(p[0], p[1:]))
        out = np.empty((n + 1, n + 1), dtype=object)
        out[:, :] = 0.0
        out[0, 0] = 1.0
        out[1:, 1:] = g
        return out

    return te.ChartMetric(n + 1, (1,) * (n + 1), comp,
                          derivative_mode=fam.derivative_mode,
                          domain=lambda p: p[0] < fam.r_max,
                          name=f"{fam.name}:collar")


def bulk_chart(fam):
    """Singular metric g_+ = r^{-2} (dr^2 + g_r); domain r > 0."""
    n = fam.boundary_dim

    def comp(p):
        w = 1.0 / (p[0] * p[0])
        g = np.asarray(fam.g_r(p[0], p[1:]))
        out = np.empty((n + 1, n + 1), dtype=object)
        out[:, :] = 0.0
        out[0, 0] = w
        for i in range(n):
            for j in range(n):
                out[1 + i, 1 + j] = w * g[i, j]
        return out

    return te.ChartMetric(n + 1, (1,) * (n + 1), comp,
                          derivative_mode=fam.derivative_mode,
                          domain=lambda p: 0.0 < p[0] < fam.r_max,
                          name=f"{fam.name}:bulk")


# --- level-set geometry ---------------------------------------------------------

def _gr_r_derivatives(fam, r, x):
    """(g, d_r g, d_r^2 g) at (r, x)."""
    x = np.asarray(x, dtype=float)
    n = fam.boundary_dim
    if fam.derivative_mode == "exact-forward":
        rj = jets.Jet2.variable(float(r), 0, 1)
        G = np.asarray(fam.g_r(rj, x))
        g = np.empty((n, n))
        g1 = np.zeros((n, n))
        g2 = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                e = G[i, j]
                if isinstance(e, jets.Jet2):
                    g[i, j] = e.val
                    g1[i, j] = e.grad[0]
                    g2[i, j] = e.hess[0, 0]
                else:
                    g[i, j] = float(e)
        return g, g1, g2
    h = np.finfo(float).eps ** 0.2 * max(1.0, abs(r))
    vals = {k: jets.as_value_array(np.asarray(fam.g_r(r + k * h, x), dtype=object))
            for k in (-2, -1, 0, 1, 2)}
    g = vals[0]
    g1 = (vals[-2] - 8 * vals[-1] + 8 * vals[1] - vals[2]) / (12 * h)
    g2 = (-vals[-2] + 16 * vals[-1] - 30 * vals[0] + 16 * vals[1] - vals[2]) / (12 * h * h)
    return g, g1, g2


def _check_r(fam, r, lower_open=False):
    lo_ok = r > 0.0 if lower_open else r >= 0.0
    if not (lo_ok and r < fam.r_max):
        raise DomainError(f"r = {r} outside {'(0' if lower_open else '[0'}, "
                          f"{fam.r_max}) for family {fam.name!r}")


def shape_operator_level_set(fam, r, x):
    """Lbar_r = -1/2 d_r g_r; at r = 0 this is Lhat, the boundary sff."""
    _check_r(fam, r)
    _, g1, _ = _gr_r_derivatives(fam, r, x)
    return -0.5 * g1


def mean_curvature_level_set(fam, r, x):
    """Hbar_r = g_r^{ij} (Lbar_r)_{ij}."""
    _check_r(fam, r)
    g, g1, _ = _gr_r_derivatives(fam, r, x)
    return float(np.einsum("ij,ij", np.linalg.inv(g), -0.5 * g1))


def singular_mean_curvature(fam, r, x):
    """H_r = n + r Hbar_r: level-set mean curvature in the singular metric."""
    _check_r(fam, r, lower_open=True)
    return fam.boundary_dim + r * mean_curvature_level_set(fam, r, x)


# --- expansion extraction (route A) ----------------------------------------------

@dataclass(frozen=True)
class ExpansionValues:
    g0: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    g3: np.ndarray
    error_estimates: dict


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Pointwise-evaluable expansion tensor fields on the boundary.

    g0..g3 map a boundary point to the coefficient of r^k (with the 1/k!
    normalization folded in, so g_r = g0 + g1 r + g2 r^2 + g3 r^3 + O(r^4));
    error_estimates maps a point to per-coefficient ladder estimates.
    """

    g0: Callable
    g1: Callable
    g2: Callable
    g3: Callable
    error_estimates: Callable
    at: Callable   # x -> ExpansionValues, single evaluation


def extract_metric_expansion(fam, r_min=R_MIN_DEFAULT, rungs=RUNGS_DEFAULT,
                             fit_tol=1e-3):
    """Expansion coefficients of g_r at r = 0.

    Exact-derivative families bypass the least-squares fit: g0..g2 come from
    r-jets at 0 and g3 from Richardson extrapolation of the exact second
    derivative along the dyadic ladder.  Differenced families fall back to a
    cubic ladder fit.  Raises IllConditionedFit when the ladder disagrees
    beyond fit_tol * (1 + coefficient scale).
    """

    exact = fam.derivative_mode == "exact-forward"

    @lru_cache(maxsize=256)
    def _eval(key):
        x = np.asarray(key, dtype=float)
        if exact:
            g0, g1d, g2d = _gr_r_derivatives(fam, 0.0, x)

            def second_slope(r):
                return (_gr_r_derivatives(fam, r, x)[2] - g2d) / r

            d3, err3 = richardson_limit(second_slope, r_min, rungs)
            g3 = d3 / 6.0
            errs = {"g0": 0.0, "g1": 0.0, "g2": 0.0, "g3": err3 / 6.0}
            if errs["g3"] > fit_tol * (1.0 + float(np.abs(g3).max())):
                raise IllConditionedFit(
                    f"{fam.name}: third-order ladder disagrees "
                    f"(estimate {errs['g3']:.3g})")
            return ExpansionValues(g0, g1d, 0.5 * g2d, g3, errs)
        g0 = jets.as_value_array(
            np.asarray(fam.g_r(0.0, x), dtype=object))
        (c1, c2, c3), (e1, e2, e3) = ladder_fit(
            lambda r: _gr_r_derivatives(fam, r, x)[0] - g0,
            powers=(1, 2, 3), r_min=r_min, rungs=rungs, tol=fit_tol,
            what=f"{fam.name}: cubic expansion fit")
        errs = {"g0": 0.0, "g1": e1, "g2": e2, "g3": e3}
        return ExpansionValues(g0, c1, c2, c3, errs)

    def at(x):
        return _eval(tuple(np.asarray(x, dtype=float)))

    return ExpansionCoefficients(
        g0=lambda x: at(x).g0, g1=lambda x: at(x).g1,
        g2=lambda x: at(x).g2, g3=lambda x: at(x).g3,
        error_estimates=lambda x: at(x).error_estimates, at=at)


# --- curvature side (route B) ------------------------------------------------------

def _collar_bundle(fam, r, x, want_weyl=None):
    chart = collar_chart(fam)
    p = np.concatenate([[r], np.asarray(x, dtype=float)])
    return te.curvature(chart, p, want_weyl=want_weyl)


def _r0i0j(bundle):
    return bundle.riemann[0, 1:, 0, 1:]


def curvature_side_coefficients(fam, x, r_min=R_MIN_DEFAULT, rungs=RUNGS_DEFAULT):
    """Predicted (g2, g3) from collar curvature at the boundary.

    g2 = -Rbar_{0i0j} + Lhat^2_{ij}; 3 g3 = -d_r Rbar_{0i0j}
    + Lhat^k_i Rbar_{0k0j} + Lhat^k_j Rbar_{0k0i}.  d_r is the coordinate
    derivative of the component field, extrapolated one-sidedly at r = 0.
    This route shares no intermediates with extract_metric_expansion.
    """
    x = np.asarray(x, dtype=float)
    ghat = jets.as_value_array(np.asarray(fam.g_r(0.0, x), dtype=object))
    ghat_inv = np.linalg.inv(ghat)
    lhat = shape_operator_level_set(fam, 0.0, x)
    r00 = _r0i0j(_collar_bundle(fam, 0.0, x))
    lhat_up = ghat_inv @ lhat                       # Lhat^k_i
    g2 = -r00 + lhat.T @ ghat_inv @ lhat

    def slope(r):
        return (_r0i0j(_collar_bundle(fam, r, x)) - r00) / r

    dr_r00, _ = richardson_limit(slope, r_min, rungs)
    cross = lhat_up.T @ r00                          # Lhat^k_i Rbar_{0k0j}
    g3 = (-dr_r00 + cross + cross.T) / 3.0
    return g2, g3


def schouten_boundary(obj, x):
    """Schouten tensor of the boundary metric: (Ric - R g / (2(n-1))) / (n-2)."""
    chart = boundary_chart(obj) if isinstance(obj, NormalFormFamily) else obj
    if chart.dim < 3:
        raise DimensionTooSmall("Schouten tensor needs boundary dimension >= 3")
    return te.curvature(chart, x, want_schouten=True, want_weyl=False).schouten


# --- curvature defects -----------------------------------------------------------

@dataclass(frozen=True)
class RicciDefect:
    order_minus1_ij: np.ndarray
    order0_ij: np.ndarray
    order_minus1_rr: float
    order0_rr: float


def _boundary_data(fam, x):
    x = np.asarray(x, dtype=float)
    ghat = jets.as_value_array(np.asarray(fam.g_r(0.0, x), dtype=object))
    ghat_inv = np.linalg.inv(ghat)
    lhat = shape_operator_level_set(fam, 0.0, x)
    hhat = float(np.einsum("ij,ij", ghat_inv, lhat))
    lhat_sq = lhat.T @ ghat_inv @ lhat              # (Lhat^2)_{ij} = Lhat^a_i Lhat_{aj}
    lhat_norm2 = float(np.einsum("ij,ij", ghat_inv @ lhat @ ghat_inv, lhat))
    return ghat, ghat_inv, lhat, hhat, lhat_sq, lhat_norm2


def ricci_defect_leading(fam, x):
    """Leading coefficients of Ric_{g_+} + n g_+ from boundary data.

    Tangential block: (-(n-1) Lhat - Hhat ghat) r^{-1}
      + (Rbar_ij - (n-1)(Rbar_{0i0j} - Lhat^2_ij) - (|Lhat|^2 + Rbar_00) ghat
         + 2 Hhat Lhat_ij).
    rr component: -Hhat r^{-1} - |Lhat|^2.

    The 2 Hhat Lhat cross term comes from expanding -r^{-1} Hbar_r (g_r)_ij;
    it drops out whenever the r^{-1} coefficient vanishes, but without it the
    zeroth-order block fails the direct small-r validation on non-totally-
    geodesic boundaries.
    """
    n = fam.boundary_dim
    ghat, _, lhat, hhat, lhat_sq, lhat_norm2 = _boundary_data(fam, x)
    bundle = _collar_bundle(fam, 0.0, x)
    rbar_ij = bundle.ricci[1:, 1:]
    rbar_00 = float(bundle.ricci[0, 0])
    r0i0j = _r0i0j(bundle)
    return RicciDefect(
        order_minus1_ij=-(n - 1) * lhat - hhat * ghat,
        order0_ij=(rbar_ij - (n - 1) * (r0i0j - lhat_sq)
                   - (lhat_norm2 + rbar_00) * ghat + 2.0 * hhat * lhat),
        order_minus1_rr=-hhat,
        order0_rr=-lhat_norm2)


def ricci_defect_direct(fam, r, x):
    """(Ric_{g_+} + n g_+) at (r, x) via the conformal transformation law.

    Ric_{g_+} = Ric_gbar - (n-1)(Hess_gbar(-ln r) - r^{-2} dr x dr)
                - (Lap_gbar(-ln r) + (n-1) r^{-2} |dr|^2) gbar.
    All pieces evaluated with the engine on the compact collar chart, so the
    result is independent of the boundary-data formulas above.
    """
    _check_r(fam, r, lower_open=True)
    n = fam.boundary_dim
    chart = collar_chart(fam)
    p = np.concatenate([[r], np.asarray(x, dtype=float)])
    gbar = te.metric_at(chart, p)
    gbar_inv = np.linalg.inv(gbar)
    bundle = te.curvature(chart, p, want_weyl=False, want_schouten=False)

    f = lambda q: -jets.log(q[0])
    hess = te.hessian_scalar(chart, f, p)
    lap = float(np.einsum("ab,ab", gbar_inv, hess))
    dr_dr = np.zeros_like(gbar)
    dr_dr[0, 0] = 1.0
    grad_norm2 = float(gbar_inv[0, 0])  # |dr|^2_gbar, = 1 for special r

    ric_plus = (bundle.ricci - (n - 1) * (hess - dr_dr / r ** 2)
                - (lap + (n - 1) * grad_norm2 / r ** 2) * gbar)
    return ric_plus + n * gbar / r ** 2


def scalar_defect_coefficients(fam, x):
    """(c1, c2) with R_{g_+} + n(n+1) = c1 r + c2 r^2 + O(r^3).

    c1 = -2n Hhat; c2 = -(n-1) R_gbar|_Sigma + n R_ghat - n (|Lhat|^2 + Hhat^2).
    """
    n = fam.boundary_dim
    _, _, _, hhat, _, lhat_norm2 = _boundary_data(fam, x)
    rbar_scalar = _collar_bundle(fam, 0.0, x).scalar
    rhat_scalar = te.curvature(boundary_chart(fam), x,
                               want_weyl=False, want_schouten=False).scalar
    c1 = -2.0 * n * hhat
    c2 = -(n - 1) * rbar_scalar + n * rhat_scalar - n * (lhat_norm2 + hhat ** 2)
    return c1, c2


def scalar_defect_direct(fam, r, x):
    """R_{g_+} + n(n+1) from the singular chart itself."""
    n = fam.boundary_dim
    p = np.concatenate([[r], np.asarray(x, dtype=float)])
    return te.curvature(bulk_chart(fam), p,
                        want_weyl=False, want_schouten=False).scalar + n * (n + 1)


def exact_identity_residuals(fam, r, x):
    """Residuals of two exact identities at (r, x).

    laplace_r:        Lap_gbar r = -Hbar_r        (no asymptotics involved)
    scalar_conformal: R_{g_+} = r^2 R_gbar - 2n r Hbar_r - n(n+1)
    """
    _check_r(fam, r, lower_open=True)
    n = fam.boundary_dim
    p = np.concatenate([[r], np.asarray(x, dtype=float)])
    hbar = mean_curvature_level_set(fam, r, x)
    lap = te.laplacian_scalar(collar_chart(fam), lambda q: q[0], p)
    rbar = te.curvature(collar_chart(fam), p,
                        want_weyl=False, want_schouten=False).scalar
    rplus = te.curvature(bulk_chart(fam), p,
                         want_weyl=False, want_schouten=False).scalar
    return {
        "laplace_r": abs(lap + hbar),
        "scalar_conformal": abs(rplus - (r * r * rbar - 2 * n * r * hbar
                                         - n * (n + 1))),
    }


def boundary_r00_identity(fam, x):
    """Residual of Rbar_00 = (R_gbar|_Sigma - R_ghat - |Lhat|^2 + Hhat^2)/2."""
    _, _, _, hhat, _, lhat_norm2 = _boundary_data(fam, x)
    bundle = _collar_bundle(fam, 0.0, x)
    rhat_scalar = te.curvature(boundary_chart(fam), x,
                               want_weyl=False, want_schouten=False).scalar
    lhs = float(bundle.ricci[0, 0])
    rhs = 0.5 * (bundle.scalar - rhat_scalar - lhat_norm2 + hhat ** 2)
    return abs(lhs - rhs)


# --- classification ------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationReport:
    family: str
    boundary_dim: int
    tol: float
    flags: dict          # name -> bool | None (None = undefined in this dim)
    residuals: dict      # name -> float
    scalar_defect: tuple  # (c1, c2) at the representative point
    coherence: dict      # theorem-instance equivalence checks
    coherent: bool
    ricci_sign_evidence: dict
    notes: tuple

    @property
    def wpe(self):
        return self.flags["wpe"]


def _h_second_derivative(fam, x, hhat, r_min=R_MIN_DEFAULT, rungs=RUNGS_DEFAULT):
    n = fam.boundary_dim

    def f(r):
        return 2.0 * (singular_mean_curvature(fam, r, x) - n - hhat * r) / r ** 2

    val, _ = richardson_limit(f, r_min, rungs)
    return float(val)


def classify(fam, tol=None, points=None, n_points=5, seed=0,
             evidence_radii=3):
    """WPE classification with theorem-instance coherence checks.

    Flags pass when residual < tol * (1 + scale of the compared quantity).
    n = 2 reports wpe (and the Schouten/Weyl flags) as None: undefined.
    Internal inconsistency between the theorem equivalences is reported via
    coherent = False; the CLI treats that as a hard failure.
    """
    n = fam.boundary_dim
    tol = fam.tol if tol is None else tol
    if points is None:
        points = boundary_points(fam, n_points, seed)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    notes = []

    expansion = extract_metric_expansion(fam)
    res = {k: 0.0 for k in ("g1_zero", "umbilic", "totally_geodesic",
                            "mean_curvature_zero", "g2_is_minus_schouten",
                            "w0i0j_zero", "ric_m1_zero", "ric_0_zero",
                            "c1_zero", "c2_zero")}
    scales = dict.fromkeys(res, 0.0)
    c_rep = None
    hpp_gap = []   # (Rhat/(n-1) - H''_0, |Lhat|) samples for Eq (3.11)

    for x in points:
        ev = expansion.at(x)
        ghat, ghat_inv, lhat, hhat, _, lhat_norm2 = _boundary_data(fam, x)
        gscale = float(np.abs(ghat).max())

        res["g1_zero"] = max(res["g1_zero"], float(np.abs(ev.g1).max()))
        scales["g1_zero"] = max(scales["g1_zero"], gscale)
        res["totally_geodesic"] = max(res["totally_geodesic"],
                                      float(np.abs(lhat).max()))
        scales["totally_geodesic"] = max(scales["totally_geodesic"], gscale)
        res["umbilic"] = max(res["umbilic"],
                             float(np.abs(lhat - (hhat / n) * ghat).max()))
        scales["umbilic"] = max(scales["umbilic"], gscale)
        res["mean_curvature_zero"] = max(res["mean_curvature_zero"], abs(hhat))
        scales["mean_curvature_zero"] = max(scales["mean_curvature_zero"], float(n))

        if n >= 3:
            p_hat = schouten_boundary(fam, x)
            res["g2_is_minus_schouten"] = max(res["g2_is_minus_schouten"],
                                              float(np.abs(ev.g2 + p_hat).max()))
            scales["g2_is_minus_schouten"] = max(scales["g2_is_minus_schouten"],
                                                 float(np.abs(p_hat).max()))
            bundle = _collar_bundle(fam, 0.0, x, want_weyl=True)
            w0 = bundle.weyl[0, 1:, 0, 1:]
            res["w0i0j_zero"] = max(res["w0i0j_zero"], float(np.abs(w0).max()))
            scales["w0i0j_zero"] = max(scales["w0i0j_zero"],
                                       float(np.abs(bundle.riemann).max()))

        defect = ricci_defect_leading(fam, x)
        res["ric_m1_zero"] = max(res["ric_m1_zero"],
                                 float(np.abs(defect.order_minus1_ij).max()),
                                 abs(defect.order_minus1_rr))
        scales["ric_m1_zero"] = max(scales["ric_m1_zero"], gscale)
        res["ric_0_zero"] = max(res["ric_0_zero"],
                                float(np.abs(defect.order0_ij).max()),
                                abs(defect.order0_rr))
        scales["ric_0_zero"] = max(scales["ric_0_zero"], gscale)

        c1, c2 = scalar_defect_coefficients(fam, x)
        if c_rep is None:
            c_rep = (c1, c2)
        res["c1_zero"] = max(res["c1_zero"], abs(c1))
        scales["c1_zero"] = max(scales["c1_zero"], float(n * n))
        res["c2_zero"] = max(res["c2_zero"], abs(c2))
        scales["c2_zero"] = max(scales["c2_zero"], float(n * n))

        rhat = te.curvature(boundary_chart(fam), x,
                            want_weyl=False, want_schouten=False).scalar
        hpp = _h_second_derivative(fam, x, hhat)
        hpp_gap.append((rhat / (n - 1) - hpp, np.sqrt(max(lhat_norm2, 0.0))))

    def passes(key):
        return res[key] < tol * (1.0 + scales[key])

    flags = {k: passes(k) for k in ("g1_zero", "umbilic", "totally_geodesic",
                                    "mean_curvature_zero")}
    if n >= 3:
        flags["g2_is_minus_schouten"] = passes("g2_is_minus_schouten")
        flags["w0i0j_zero"] = passes("w0i0j_zero")
        flags["wpe"] = flags["g1_zero"] and flags["g2_is_minus_schouten"]
    else:
        flags["g2_is_minus_schouten"] = None
        flags["w0i0j_zero"] = None
        flags["wpe"] = None
        notes.append("n = 2: WPE flag undefined (boundary Schouten tensor "
                     "does not exist); scalar-defect coefficients still reported")

    ric_m1_zero = passes("ric_m1_zero")
    ric_0_zero = passes("ric_0_zero")
    c1_zero = passes("c1_zero")
    c2_zero = passes("c2_zero")

    # Ricci-sign evidence: generalized eigenvalues of Ric+ng_+ against g_+
    # on a small (r, x) grid; reported, never asserted.
    ev_min, ev_max = np.inf, -np.inf
    radii = np.linspace(0.15, 0.6, evidence_radii) * fam.r_max
    bulk = bulk_chart(fam)
    for r in radii:
        for x in points[: min(3, len(points))]:
            d = ricci_defect_direct(fam, r, x)
            p = np.concatenate([[r], x])
            gp = te.metric_at(bulk, p)
            w = scipy.linalg.eigh(d, gp, eigvals_only=True)
            ev_min = min(ev_min, float(w.min()))
            ev_max = max(ev_max, float(w.max()))
    sign_tol = 1e-7
    evidence = {
        "min_eigenvalue": ev_min,
        "max_eigenvalue": ev_max,
        "nonnegative": ev_min >= -sign_tol,
        "nonpositive": ev_max <= sign_tol,
        "radii": tuple(float(r) for r in radii),
    }

    coherence = {
        # Thm "characterization part 1": three equivalent statements
        "part1_g1_vs_ricci": flags["g1_zero"] == ric_m1_zero,
        "part1_g1_vs_scalar": flags["g1_zero"] == (c1_zero and flags["umbilic"]),
    }
    if n >= 3:
        coherence["part2_wpe_vs_ricci"] = flags["wpe"] == (ric_m1_zero and ric_0_zero)
        coherence["part2_wpe_vs_scalar"] = flags["wpe"] == (
            c1_zero and c2_zero and flags["umbilic"] and flags["w0i0j_zero"])
        # Ricci-bounded route: wpe <-> scalar decay, valid under a Ricci sign
        if evidence["nonnegative"]:
            coherence["ricci_nonneg_route"] = flags["wpe"] == (c1_zero and c2_zero)
        if evidence["nonpositive"] and flags["umbilic"]:
            coherence["umbilic_nonpos_route"] = flags["wpe"] == (c1_zero and c2_zero)
    if c1_zero and c2_zero:
        # H''_0 <= Rhat/(n-1), equality exactly when totally geodesic
        gaps = np.array([g for g, _ in hpp_gap])
        ineq_ok = bool(np.all(gaps > -100 * tol))
        eq_expected = flags["totally_geodesic"]
        eq_seen = bool(np.all(np.abs(gaps) < 100 * tol))
        coherence["hpp0_inequality"] = ineq_ok and (eq_seen == eq_expected)

    coherent = all(v for v in coherence.values())
    if not coherent:
        notes.append("theorem-instance equivalences FAILED: "
                     + ", ".join(k for k, v in coherence.items() if not v))

    return ClassificationReport(
        family=fam.name, boundary_dim=n, tol=tol, flags=flags,
        residuals=res, scalar_defect=c_rep, coherence=coherence,
        coherent=coherent, ricci_sign_evidence=evidence, notes=tuple(notes))
