"""Named example geometries.

Constructor functions for every built-in geometry, plus (at the bottom) the
string-keyed registry the CLI uses.  Entries are written against the
jets-aware math functions so both derivative modes work on all of them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from . import tensor_engine as te
from .errors import UnknownEntry
from .holographic import NormalFormFamily


# --- chart metrics ---------------------------------------------------------------

def hyperbolic_ball(dim):
    """Poincare ball model of H^dim: g = 4 (1-|x|^2)^{-2} delta."""
    def comp(x):
        r2 = x[0] * x[0]
        for xi in x[1:]:
            r2 = r2 + xi * xi
        c = 4.0 / (1.0 - r2) ** 2
        return [[c if i == j else 0.0 * c for j in range(dim)]
                for i in range(dim)]
    return te.ChartMetric(dim, (1,) * dim, comp,
                          domain=lambda x: float(x @ x) < 1.0,
                          name=f"hyperbolic-ball({dim})")


def flat_torus(dim):
    return te.ChartMetric(dim, (1,) * dim, lambda x: np.eye(dim),
                          name=f"flat-torus({dim})")


def _sphere_diag(x, n):
    """Diagonal entries of the round S^n metric in iterated polar angles."""
    entries = [1.0 + 0.0 * jets.sin(x[0])]
    fac = entries[0]
    for i in range(1, n):
        fac = fac * jets.sin(x[i - 1]) ** 2
        entries.append(fac)
    return entries


def round_sphere_chart(n, radius=1.0):
    def comp(x):
        d = _sphere_diag(x, n)
        out = [[0.0 * d[0] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            out[i][i] = radius ** 2 * d[i]
        return out
    return te.ChartMetric(n, (1,) * n, comp,
                          domain=lambda x: all(0.0 < t < np.pi for t in x[:-1]) if n > 1 else True,
                          name=f"round-sphere({n},{radius})")


# --- normal-form families -----------------------------------------------------------

_SPHERE_BOX = ((0.5, 1.2),)


def hyperbolic_half_space(n):
    """g_r = delta: upper half-space model of H^{n+1}, flat boundary."""
    return NormalFormFamily(
        boundary_dim=n, g_r=lambda r, x: np.eye(n), r_max=1.0,
        name=f"hyperbolic-half-space({n})",
        boundary_box=((0.0, 1.0),) * n,
        metadata={"claimed_einstein": True, "yamabe_sign": 0})


def hyperbolic_normal_sphere(n):
    """g_r = (1 - r^2/4)^2 g_{S^n}: hyperbolic space, round conformal infinity."""
    def g_r(r, x):
        f = (1.0 - r * r / 4.0) ** 2
        d = _sphere_diag(x, n)
        out = [[0.0 * f for _ in range(n)] for _ in range(n)]
        for i in range(n):
            out[i][i] = f * d[i]
        return out
    return NormalFormFamily(
        boundary_dim=n, g_r=g_r, r_max=1.0,
        name=f"hyperbolic-normal-sphere({n})",
        boundary_box=_SPHERE_BOX * n,
        metadata={"claimed_einstein": True, "yamabe_sign": 1})


def product_collar_sphere(n):
    """g_r = g_{S^n} for all r: product collar, not Einstein."""
    def g_r(r, x):
        d = _sphere_diag(x, n)
        out = [[0.0 * d[0] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            out[i][i] = d[i]
        return out
    return NormalFormFamily(
        boundary_dim=n, g_r=g_r, r_max=1.0,
        name=f"product-collar-sphere({n})",
        boundary_box=_SPHERE_BOX * n,
        metadata={"claimed_einstein": False, "yamabe_sign": 1})


def linear_perturb_torus(n):
    """g_r = (1 + r) delta over a flat torus: umbilic, not totally geodesic."""
    def g_r(r, x):
        w = 1.0 + r
        return [[w if i == j else 0.0 * w for j in range(n)] for i in range(n)]
    return NormalFormFamily(
        boundary_dim=n, g_r=g_r, r_max=0.8,
        name=f"linear-perturb-torus({n})",
        boundary_box=((0.0, 2 * np.pi),) * n,
        metadata={"claimed_einstein": False, "yamabe_sign": 0})


def _sym_pattern(n, diag, off):
    a = np.zeros((n, n))
    for i in range(n):
        a[i, i] = diag[i % len(diag)]
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = off[i % len(off)]
    return a


def quadratic_perturb(n, scale=1.0):
    """g_r = delta + scale * A r^2 with a fixed symmetric pattern A."""
    a0 = _sym_pattern(n, diag=(1.0, -0.5, 0.75), off=(0.3, -0.2))

    def g_r(r, x):
        r2 = r * r
        return [[(1.0 if i == j else 0.0) + scale * a0[i, j] * r2
                 for j in range(n)] for i in range(n)]
    return NormalFormFamily(
        boundary_dim=n, g_r=g_r, r_max=0.4,
        name=f"quadratic-perturb({n},{scale})",
        boundary_box=((0.0, 2 * np.pi),) * n,
        metadata={"claimed_einstein": False, "yamabe_sign": 0})


def bumpy_perturb_torus(n, eps=0.05):
    """Fully generic cubic family over a flat torus.

    g_r = delta + eps (sin(w.x) E r + cos(w.x) D r^2 + cos(w.x) F r^3).
    E is not proportional to delta, so the boundary is non-umbilic; the r^3
    term exercises the genuine third-order extraction path.
    """
    e0 = _sym_pattern(n, diag=(1.0, -1.0, 0.5), off=(0.5,))
    d0 = _sym_pattern(n, diag=(0.3, 0.7), off=(-0.25,))
    f0 = _sym_pattern(n, diag=(0.5, 1.0), off=(0.2, -0.4))
    w = np.array([1.0 + (i % 3) for i in range(n)])

    def g_r(r, x):
        ph = w[0] * x[0]
        for i in range(1, n):
            ph = ph + w[i] * x[i]
        s, c = jets.sin(ph), jets.cos(ph)
        r2, r3 = r * r, r * r * r
        return [[(1.0 if i == j else 0.0)
                 + eps * (s * e0[i, j] * r + c * d0[i, j] * r2
                          + c * f0[i, j] * r3)
                 for j in range(n)] for i in range(n)]
    return NormalFormFamily(
        boundary_dim=n, g_r=g_r, r_max=0.2,
        name=f"bumpy-perturb-torus({n},{eps})",
        boundary_box=((0.0, 2 * np.pi),) * n,
        metadata={"claimed_einstein": False, "yamabe_sign": 0})


def normal_form_families(n=3):
    """The six expansion-test families at boundary dimension n."""
    return [
        hyperbolic_half_space(n),
        hyperbolic_normal_sphere(n),
        product_collar_sphere(n),
        linear_perturb_torus(n),
        quadratic_perturb(n, 1.0),
        bumpy_perturb_torus(n, 0.05),
    ]


# --- ambient charts for embeddings ------------------------------------------------

def euclidean_space(dim):
    def comp(x):
        return np.eye(dim)
    return te.ChartMetric(dim, (1,) * dim, comp, name=f"euclidean({dim})")


def lorentz_flat(dim):
    """Minkowski space with the timelike coordinate last."""
    def comp(x):
        g = np.eye(dim)
        g[-1, -1] = -1.0
        return g
    return te.ChartMetric(dim, (1,) * (dim - 1) + (-1,), comp,
                          name=f"lorentz-flat({dim})")


def analytic_ambient(dim, seed, strength=0.03):
    """Seeded trigonometric perturbation of the flat metric.

    delta + strength*(A sin(u.y + phi) + B cos(v.y + psi)) with symmetric
    A, B normalized to unit spectral radius, so the result stays positive
    definite for strength < 1/2 while carrying nonzero Weyl curvature.
    """
    rng = np.random.default_rng(seed + 1000)
    a = rng.uniform(-1.0, 1.0, size=(dim, dim))
    b = rng.uniform(-1.0, 1.0, size=(dim, dim))
    a = 0.5 * (a + a.T)
    b = 0.5 * (b + b.T)
    a /= max(1.0, np.abs(np.linalg.eigvalsh(a)).max())
    b /= max(1.0, np.abs(np.linalg.eigvalsh(b)).max())
    u = rng.integers(-2, 3, size=dim)
    v = rng.integers(-2, 3, size=dim)
    phi, psi = rng.uniform(0.0, 2.0 * np.pi, size=2)

    def comp(y):
        sa, ca = phi, psi
        for i in range(dim):
            sa = sa + u[i] * y[i]
            ca = ca + v[i] * y[i]
        s, c = jets.sin(sa), jets.cos(ca)
        out = np.empty((dim, dim), dtype=object)
        for i in range(dim):
            for j in range(dim):
                out[i, j] = ((1.0 if i == j else 0.0)
                             + strength * (a[i, j] * s + b[i, j] * c))
        return out

    return te.ChartMetric(dim, (1,) * dim, comp,
                          name=f"analytic-ambient({dim},{seed})")


def sphere_map(theta):
    """Iterated-polar unit sphere map: n angles to n+1 cartesian coordinates."""
    out = []
    fac = 1.0
    for t in theta:
        out.append(fac * jets.cos(t))
        fac = fac * jets.sin(t)
    out.append(fac)
    return out


# --- embeddings -------------------------------------------------------------------

def totally_geodesic_slice(n):
    """Equatorial H^{n+1} inside the ball model of H^{n+2}."""
    from .submanifold import Embedding
    ambient = hyperbolic_ball(n + 2)

    def f(x):
        return list(x) + [0.0]

    return Embedding(n + 1, ambient, f,
                     domain=lambda x: float(x @ x) < 0.9,
                     name=f"totally-geodesic-slice({n})",
                     metadata={"totally_geodesic": True})


def round_sphere_in_flat(n, radius=1.0):
    """S^n(radius) in euclidean space; umbilic with |H| = n/radius."""
    from .submanifold import Embedding

    def f(theta):
        return [radius * c for c in sphere_map(theta)]

    def dom(th):
        return all(0.02 < t < np.pi - 0.02 for t in th[:-1]) if n > 1 else True

    return Embedding(n, euclidean_space(n + 1), f, domain=dom,
                     name=f"round-sphere-in-flat({n},{radius:g})")


def geodesic_sphere_in_ball(n, geodesic_radius=1.0):
    """Distance sphere Y^{n+1} about the origin of the ball model H^{n+2}.

    Umbilic orbit with |H| = (n+1) coth(geodesic_radius) in the bulk
    metric; euclidean radius tanh(geodesic_radius/2).
    """
    from .submanifold import Embedding
    rho0 = float(np.tanh(0.5 * geodesic_radius))

    def f(theta):
        return [rho0 * c for c in sphere_map(theta)]

    def dom(th):
        return all(0.02 < t < np.pi - 0.02 for t in th[:-1])

    return Embedding(n + 1, hyperbolic_ball(n + 2), f, domain=dom,
                     name=f"geodesic-sphere-in-ball({n},{geodesic_radius:g})",
                     metadata={"mean_curvature_norm":
                               (n + 1) / np.tanh(geodesic_radius)})


def _normal_sphere_collar(n):
    from .holographic import collar_chart
    return collar_chart(hyperbolic_normal_sphere(n + 1))


def equatorial_slice_collar(n):
    """Totally geodesic slice in normal-form coordinates, graph over r.

    Image of totally_geodesic_slice(n) in the chart gbar = dr^2 +
    (1 - r^2/4)^2 g_round; meets the boundary sphere orthogonally along
    the equator theta_1 = pi/2.
    """
    from .submanifold import Embedding
    ambient = _normal_sphere_collar(n)

    def f(x):
        return [x[0], np.pi / 2] + list(x[1:])

    def dom(x):
        return (0.0 <= x[0] < 0.9
                and all(0.02 < t < np.pi - 0.02 for t in x[1:-1]))

    return Embedding(n + 1, ambient, f, domain=dom,
                     name=f"equatorial-slice-collar({n})",
                     metadata={"totally_geodesic": True})


def bent_slice_collar(n, amp=0.25):
    """Non-minimal graph theta_1 = pi/2 + amp r^2, still orthogonal at r=0.

    The boundary trace is the equator (eta_hat = 0) while Bbar_00 tends to
    2*amp, so the boundary invariant is -2 n amp up to overall normal
    orientation: a closed-form oracle for the gauge transformation law.
    """
    from .submanifold import Embedding
    ambient = _normal_sphere_collar(n)

    def f(x):
        return [x[0], np.pi / 2 + amp * x[0] * x[0]] + list(x[1:])

    def dom(x):
        return (0.0 <= x[0] < 0.5
                and all(0.02 < t < np.pi - 0.02 for t in x[1:-1]))

    return Embedding(n + 1, ambient, f, domain=dom,
                     name=f"bent-slice-collar({n},{amp:g})",
                     metadata={"boundary_invariant_magnitude": 2.0 * n * amp})


def orthogonal_cap_collar(n, rho=1.0):
    """Totally geodesic spherical cap meeting the boundary at right angles.

    In the euclidean ball picture this is the sphere of radius rho about a
    center at distance sqrt(1+rho^2), written as a graph over the normal
    coordinate r.  The boundary trace is a distance sphere of the round
    boundary with eta_hat = n/rho, and Bbar_00 -> 1/rho, so the invariant
    cancels to 0 despite both ingredients being nonzero.
    """
    from .submanifold import Embedding
    ambient = _normal_sphere_collar(n)
    c0 = float(np.sqrt(1.0 + rho * rho))
    pv_tip = c0 - rho
    r_tip = 2.0 * (1.0 - pv_tip) / (1.0 + pv_tip)

    def f(x):
        pv = (2.0 - x[0]) / (2.0 + x[0])
        ct = (pv * pv - 1.0 - 2.0 * rho * rho) / (2.0 * rho * c0)
        u1 = (c0 + rho * ct) / pv
        return [x[0], jets.arccos(u1)] + list(x[1:])

    def dom(x):
        return (0.0 <= x[0] < 0.8 * r_tip
                and all(0.02 < t < np.pi - 0.02 for t in x[1:-1]))

    return Embedding(n + 1, ambient, f, domain=dom,
                     name=f"orthogonal-cap-collar({n},{rho:g})",
                     metadata={"totally_geodesic": True,
                               "boundary_mean_curvature": n / rho})


def sphere_orbit_collar(n, r0=0.3):
    """Constant-r orbit {r = r0} of the normal-sphere chart (no boundary)."""
    from .submanifold import Embedding
    ambient = _normal_sphere_collar(n)

    def f(theta):
        return [float(r0)] + list(theta)

    def dom(th):
        return all(0.02 < t < np.pi - 0.02 for t in th[:-1])

    return Embedding(n + 1, ambient, f, domain=dom,
                     name=f"sphere-orbit-collar({n},{r0:g})")


def random_torus_embedding(seed):
    """Seeded immersion T^3 -> curved 5- or 6-dim ambient (parity of seed).

    A full-rank base map (product of circles, or a rotated torus times a
    circle) plus small seeded trigonometric perturbations; candidates are
    rejected until the differential and the induced metric are uniformly
    nondegenerate on a coarse grid.
    """
    from .submanifold import Embedding, map_jet
    m = 6 if seed % 2 == 0 else 5
    ambient = analytic_ambient(m, seed)
    rng = np.random.default_rng(seed)
    grid = np.linspace(0.3, 2 * np.pi + 0.3, 4, endpoint=False)

    for attempt in range(1, 21):
        freqs = rng.integers(-2, 3, size=(m, 3))
        amps = 0.15 * rng.uniform(-1.0, 1.0, size=m)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=m)

        def f(x, freqs=freqs, amps=amps, phases=phases):
            if m == 6:
                base = [jets.cos(x[0]), jets.sin(x[0]), jets.cos(x[1]),
                        jets.sin(x[1]), jets.cos(x[2]), jets.sin(x[2])]
            else:
                w = 2.0 + jets.cos(x[2])
                base = [jets.cos(x[0]), jets.sin(x[0]), w * jets.cos(x[1]),
                        w * jets.sin(x[1]), jets.sin(x[2])]
            out = []
            for a in range(m):
                arg = (phases[a] + freqs[a, 0] * x[0]
                       + freqs[a, 1] * x[1] + freqs[a, 2] * x[2])
                out.append(base[a] + amps[a] * jets.sin(arg))
            return out

        cand = Embedding(3, ambient, f,
                         name=f"random-embedding({seed})",
                         metadata={"attempts": attempt})
        ok = True
        for x0 in grid:
            for x1 in grid:
                for x2 in grid:
                    f0, jac, _ = map_jet(cand, (x0, x1, x2))
                    if np.linalg.svd(jac, compute_uv=False).min() <= 0.3:
                        ok = False
                        break
                    h = jac.T @ te.metric_at(ambient, f0) @ jac
                    if np.linalg.eigvalsh(h).min() <= 0.1:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return cand
    raise RuntimeError(f"no nondegenerate candidate for seed {seed}")


def plane_embedding(seed):
    """Seeded quadratic graph R^2 -> curved R^4, full rank near the origin."""
    from .submanifold import Embedding
    rng = np.random.default_rng(seed)
    q = 0.1 * rng.uniform(-1.0, 1.0, size=(4, 3))   # coeffs of u^2, uv, v^2

    def f(x):
        u, v = x[0], x[1]
        quad = [q[a, 0] * u * u + q[a, 1] * u * v + q[a, 2] * v * v
                for a in range(4)]
        return [u + quad[0], v + quad[1], quad[2], quad[3]]

    return Embedding(2, analytic_ambient(4, seed), f,
                     domain=lambda x: float(x @ x) < 1.0,
                     name=f"plane-embedding({seed})")


# --- string-keyed registry ---------------------------------------------------------

KINDS = ("normal_form_family", "chart_metric", "embedding", "catenoid_params")

_REQUIRED = object()


@dataclass(frozen=True)
class CatalogEntry:
    """One named, buildable geometry.

    ``build`` takes no arguments and returns the object described by
    ``kind``.  ``sample_box`` (when set) is a per-coordinate (lo, hi) box
    lying strictly inside the object's chart or intrinsic domain, so
    runners can draw seeded sample points without rejection logic.
    """
    name: str
    kind: str
    parameters: dict
    note: str
    build: Callable
    sample_box: tuple | None = None


@dataclass(frozen=True)
class _Param:
    name: str
    type: type                 # int or float
    default: object = _REQUIRED


@dataclass(frozen=True)
class _Head:
    head: str
    kind: str
    params: tuple
    make: Callable             # keyword args -> geometry object
    note: str
    box: Callable | None = None     # keyword args -> sample box
    demo: tuple = ()           # argument values used by the self-test


def _angle_box(dim):
    # interior rectangle of the sphere chart: polar angles clear of the
    # axis, azimuthal coordinate free
    return tuple([(0.3, 2.6)] * (dim - 1) + [(0.0, 6.2)])


def _ball_box(dim, radius2=0.64):
    w = float(np.sqrt(radius2 / dim))
    return ((-w, w),) * dim


def _catenoid_params(n, a):
    from .catenoid import CatenoidParams
    return CatenoidParams(n=n, delta=1, neck=a, s_max=12.0)


_HEADS = (
    _Head("hyperbolic-ball", "chart_metric",
          (_Param("n", int),),
          lambda n: hyperbolic_ball(n),
          "ball model of hyperbolic space, curvature -1",
          box=lambda n: _ball_box(n),
          demo=(3,)),
    _Head("hyperbolic-half-space", "normal_form_family",
          (_Param("n", int),),
          lambda n: hyperbolic_half_space(n),
          "upper half space collar; flat boundary, exact model",
          demo=(3,)),
    _Head("hyperbolic-normal-sphere", "normal_form_family",
          (_Param("n", int),),
          lambda n: hyperbolic_normal_sphere(n),
          "hyperbolic metric in normal form about the round sphere",
          demo=(3,)),
    _Head("product-collar-sphere", "normal_form_family",
          (_Param("n", int),),
          lambda n: product_collar_sphere(n),
          "rigid product collar over the round sphere; not Einstein",
          demo=(3,)),
    _Head("linear-perturb-torus", "normal_form_family",
          (_Param("n", int),),
          lambda n: linear_perturb_torus(n),
          "flat torus collar with a first-order term; breaks evenness",
          demo=(3,)),
    _Head("quadratic-perturb", "normal_form_family",
          (_Param("n", int), _Param("A", float, 1.0)),
          lambda n, A: quadratic_perturb(n, A),
          "flat torus collar with a prescribed second-order term",
          demo=(3, 1.0)),
    _Head("bumpy-perturb-torus", "normal_form_family",
          (_Param("n", int), _Param("eps", float, 0.05)),
          lambda n, eps: bumpy_perturb_torus(n, eps),
          "position-dependent even perturbation of the torus collar",
          demo=(3, 0.05)),
    _Head("totally-geodesic-slice", "embedding",
          (_Param("n", int),),
          lambda n: totally_geodesic_slice(n),
          "equatorial hyperbolic slice of the ball model; minimal",
          box=lambda n: _ball_box(n + 1, radius2=0.72),
          demo=(2,)),
    _Head("round-sphere-in-flat", "embedding",
          (_Param("n", int), _Param("rho", float, 1.0)),
          lambda n, rho: round_sphere_in_flat(n, rho),
          "round sphere in euclidean space; umbilic reference case",
          box=lambda n, rho: _angle_box(n),
          demo=(2, 1.0)),
    _Head("random-embedding", "embedding",
          (_Param("seed", int),),
          lambda seed: random_torus_embedding(seed),
          "seeded random torus immersion in a curved ambient space",
          box=lambda seed: ((0.0, 6.28),) * 3,
          demo=(1,)),
    _Head("catenoid", "catenoid_params",
          (_Param("n", int), _Param("a", float, 1.0)),
          _catenoid_params,
          "minimal rotation hypersurface with spherical orbits, neck a",
          box=lambda n, a: ((0.2, 3.0),) + _angle_box(n),
          demo=(2, 1.0)),
)

_HEAD_INDEX = {h.head: h for h in _HEADS}

_NAME_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9-]*)\s*(?:\((.*)\)\s*)?$")


def _format_arg(value):
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _coerce(token, param, head):
    token = token.strip()
    try:
        if param.type is int:
            return int(token)
        return float(token)
    except ValueError:
        want = "an integer" if param.type is int else "a number"
        raise UnknownEntry(
            f"argument {param.name} of {head} must be {want}, "
            f"got {token!r}") from None


def _entry_from(head_spec, kwargs):
    name = "{}({})".format(
        head_spec.head,
        ", ".join(_format_arg(kwargs[p.name]) for p in head_spec.params))
    box = head_spec.box(**kwargs) if head_spec.box is not None else None

    def build():
        return head_spec.make(**kwargs)

    return CatalogEntry(name=name, kind=head_spec.kind,
                        parameters=dict(kwargs), note=head_spec.note,
                        build=build, sample_box=box)


def catalog_get(name):
    """Resolve a registry name like ``"catenoid(2, 1.0)"`` to an entry.

    Trailing arguments with defaults may be omitted.  Unknown heads, bad
    argument counts and malformed argument values all raise UnknownEntry.
    """
    m = _NAME_RE.match(str(name))
    if m is None:
        raise UnknownEntry(f"cannot parse entry name {name!r}")
    head, argstr = m.group(1), m.group(2)
    spec = _HEAD_INDEX.get(head)
    if spec is None:
        known = ", ".join(h.head for h in _HEADS)
        raise UnknownEntry(f"no catalog entry named {head!r}; known: {known}")
    tokens = []
    if argstr is not None and argstr.strip():
        tokens = argstr.split(",")
    if len(tokens) > len(spec.params):
        raise UnknownEntry(
            f"{head} takes at most {len(spec.params)} argument(s), "
            f"got {len(tokens)}")
    kwargs = {}
    for i, p in enumerate(spec.params):
        if i < len(tokens):
            kwargs[p.name] = _coerce(tokens[i], p, head)
        elif p.default is not _REQUIRED:
            kwargs[p.name] = p.default
        else:
            raise UnknownEntry(f"{head} requires argument {p.name!r}")
    return _entry_from(spec, kwargs)


def _self_test(entry):
    obj = entry.build()
    if entry.kind == "chart_metric":
        x = np.array([0.5 * (lo + hi) for lo, hi in entry.sample_box])
        g = te.metric_at(obj, x)
        np.linalg.cholesky(g)
    elif entry.kind == "normal_form_family":
        from .holographic import boundary_points
        x = boundary_points(obj, 1, seed=0)[0]
        g = np.asarray(obj.g_r(0.05, x), dtype=float)
        if not np.all(np.isfinite(g)):
            raise ValueError("collar metric not finite")
        if np.abs(g - g.T).max() > 1e-12 * (1.0 + np.abs(g).max()):
            raise ValueError("collar metric not symmetric")
        np.linalg.cholesky(g)
    elif entry.kind == "embedding":
        from .submanifold import mean_curvature_norm
        x = np.array([0.5 * (lo + hi) for lo, hi in entry.sample_box])
        h = mean_curvature_norm(obj, x)
        if not np.isfinite(h):
            raise ValueError("mean curvature not finite")
    elif entry.kind == "catenoid_params":
        pass    # dataclass validation ran during build
    else:
        raise ValueError(f"unregistered kind {entry.kind!r}")


def catalog_list(self_test=True):
    """All built-in entries at their demo arguments, in registry order.

    With ``self_test`` each entry is constructed and put through a cheap
    validity check; a failure aborts with the entry name so a broken
    registration cannot hide behind lazy construction.
    """
    entries = []
    for spec in _HEADS:
        kwargs = {p.name: v for p, v in zip(spec.params, spec.demo)}
        entry = _entry_from(spec, kwargs)
        if self_test:
            try:
                _self_test(entry)
            except Exception as exc:
                raise RuntimeError(
                    f"catalog self-test failed for {entry.name}: {exc}") from exc
        entries.append(entry)
    return entries
