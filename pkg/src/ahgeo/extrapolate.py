"""Dyadic-ladder limits: Richardson extrapolation and cubic ladder fits.

Boundary quantities in this package are one-sided limits r -> 0+ of smooth
functions with integer-power error series.  Sampling on the dyadic ladder
r_j = r_min * 2^j and eliminating successive powers gives machine-accurate
limits without ever evaluating at r <= 0.
"""

from __future__ import annotations

import numpy as np

from .errors import IllConditionedFit

R_MIN_DEFAULT = 1e-3
RUNGS_DEFAULT = 6


def richardson_limit(f, r_min=R_MIN_DEFAULT, rungs=RUNGS_DEFAULT):
    """Limit of f(r) as r -> 0+ assuming f(r) = L + a1 r + a2 r^2 + ...

    f may return scalars or ndarrays.  Returns (limit, err_estimate) where
    the estimate is the max-norm gap between the last two extrapolation
    sweeps (conservative for smooth f).
    """
    table = [np.asarray(f(r_min * 2.0 ** j), dtype=float) for j in range(rungs)]
    prev_corner = table[0]
    for m in range(1, rungs):
        w = 2.0 ** m
        table = [(w * table[j] - table[j + 1]) / (w - 1.0)
                 for j in range(len(table) - 1)]
        if len(table) > 1:
            prev_corner = table[0]
    corner = table[0]
    err = float(np.max(np.abs(corner - prev_corner)))
    return corner, err


def ladder_fit(f, powers, r_min=R_MIN_DEFAULT, rungs=RUNGS_DEFAULT,
               tol=None, what="ladder fit"):
    """Least-squares fit f(r) ~ sum_p c_p r^p on the dyadic ladder.

    powers: increasing positive integer exponents, e.g. (1, 2, 3).
    Returns (coeffs, err_estimates): per-power arrays, with the estimate
    taken as the disagreement between the fits on the two sub-ladders
    (drop top rung / drop bottom rung).  If tol is given, raises
    IllConditionedFit when any estimate exceeds tol * (1 + |coeff|).
    """
    rs = r_min * 2.0 ** np.arange(rungs)
    samples = [np.asarray(f(r), dtype=float) for r in rs]
    shape = samples[0].shape
    y = np.stack([s.ravel() for s in samples])          # (rungs, ncomp)
    design = np.stack([rs ** p for p in powers], axis=1)  # (rungs, npow)

    def solve(rows):
        sol, *_ = np.linalg.lstsq(design[rows], y[rows], rcond=None)
        return sol  # (npow, ncomp)

    full = solve(slice(None))
    lo = solve(slice(0, rungs - 1))
    hi = solve(slice(1, rungs))
    est = np.abs(lo - hi).max(axis=1)  # per power
    coeffs = [full[i].reshape(shape) for i in range(len(powers))]
    errs = [float(e) for e in est]
    if tol is not None:
        for p, c, e in zip(powers, coeffs, errs):
            if e > tol * (1.0 + float(np.max(np.abs(c)))):
                raise IllConditionedFit(
                    f"{what}: ladder rungs disagree at order r^{p} "
                    f"(estimate {e:.3g}, coefficient scale {np.max(np.abs(c)):.3g})")
    return coeffs, errs
