"""Extrinsic geometry: sff packages, submanifold identities, boundary limits."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ahgeo import catalog as cat
from ahgeo import submanifold as sm
from ahgeo import tensor_engine as te
from ahgeo.errors import (AmbientNotPE, CodimensionError, DimensionTooSmall,
                          DomainError, NotMinimal, NotOrthogonal,
                          RankDeficient)
from ahgeo.holographic import boundary_chart, collar_chart


def _saddle():
    return sm.Embedding(
        2, cat.euclidean_space(3),
        lambda x: [x[0], x[1], x[0] * x[0] - x[1] * x[1]],
        name="saddle")


def _flat_torus_in_flat(m):
    # linear immersion, all extrinsic data identically zero
    return sm.Embedding(
        3, cat.euclidean_space(m),
        lambda x: list(x) + [0.0] * (m - 3),
        name=f"flat-in-flat({m})")


class TestExtrinsicData:
    def test_totally_geodesic_slice_vanishes(self):
        e = cat.totally_geodesic_slice(2)
        ed = sm.extrinsic_data(e, (0.2, -0.1, 0.35))
        assert np.abs(ed.sff).max() < 1e-12
        assert np.abs(ed.mean_curvature_vector).max() < 1e-12

    @pytest.mark.parametrize("n,rho", [(2, 2.0), (3, 0.5)])
    def test_round_sphere_shape_operator(self, n, rho):
        e = cat.round_sphere_in_flat(n, rho)
        x = (0.9, 1.2, 0.6)[:n]
        ed = sm.extrinsic_data(e, x)
        b = ed.sff[0]
        s = np.sign(ed.mean_curvature_components[0])
        assert np.abs(b - s * ed.induced_metric / rho).max() < 1e-10
        hn = float(np.sqrt(ed.mean_curvature_components
                           @ ed.mean_curvature_components))
        assert abs(hn - n / rho) < 1e-10

    def test_saddle_is_minimal_not_geodesic(self):
        ed = sm.extrinsic_data(_saddle(), (0.0, 0.0))
        assert np.abs(ed.mean_curvature_vector).max() < 1e-12
        assert np.abs(ed.traceless_sff).max() > 1.9  # B = diag(+-2, -+2)

    def test_geodesic_sphere_mean_curvature(self):
        d = 1.3
        e = cat.geodesic_sphere_in_ball(2, d)
        ed = sm.extrinsic_data(e, (1.0, 1.4, 0.3))
        hn = float(np.sqrt(ed.mean_curvature_components
                           @ ed.mean_curvature_components))
        assert abs(hn - 3.0 / np.tanh(d)) < 1e-9

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=20, deadline=None)
    def test_package_invariants_random_embedding(self, seed):
        rng = np.random.default_rng(seed)
        e = cat.random_torus_embedding(seed % 4)
        x = rng.uniform(0.2, 6.0, size=3)
        ed = sm.extrinsic_data(e, x)
        # symmetry, frame orthonormality, h-trace of the traceless part
        assert np.abs(ed.sff - ed.sff.transpose(0, 2, 1)).max() < 1e-12
        assert ed.frame_residual < 1e-10
        traces = np.einsum("ij,eij->e", ed.induced_inverse, ed.traceless_sff)
        assert np.abs(traces).max() < 1e-10
        # H really is the h-trace of B in the frame
        assert np.abs(np.einsum("ij,eij->e", ed.induced_inverse, ed.sff)
                      - ed.mean_curvature_components).max() < 1e-12

    def test_frame_order_invariance(self):
        e = cat.random_torus_embedding(2)
        x = (0.5, 1.1, 2.0)
        perms = [(4, 2, 0, 1, 3, 5), (5, 4, 3, 2, 1, 0)]
        ed0 = sm.extrinsic_data(e, x)
        h0 = float(ed0.mean_curvature_components @ ed0.mean_curvature_components)
        b0 = float(np.einsum("ij,kl,eik,ejl", ed0.induced_inverse,
                             ed0.induced_inverse, ed0.sff, ed0.sff))
        for p in perms:
            ed = sm.extrinsic_data(e, x, frame_order=p)
            h = float(ed.mean_curvature_components @ ed.mean_curvature_components)
            b = float(np.einsum("ij,kl,eik,ejl", ed.induced_inverse,
                                ed.induced_inverse, ed.sff, ed.sff))
            assert abs(h - h0) < 1e-8 and abs(b - b0) < 1e-8
            assert abs(sm.gauss_residual(e, x, frame_order=p)
                       - sm.gauss_residual(e, x)) < 1e-8

    def test_rank_deficient_raises(self):
        e = sm.Embedding(
            2, cat.euclidean_space(4),
            lambda x: [x[0] + x[1], x[0] + x[1], 0.0, 0.0],
            name="collapsed")
        with pytest.raises(RankDeficient):
            sm.extrinsic_data(e, (0.3, 0.4))

    def test_codimension_zero_rejected(self):
        with pytest.raises(CodimensionError):
            sm.Embedding(3, cat.euclidean_space(3), lambda x: list(x))


class TestGaussEquation:
    def test_flat_in_flat_torus(self):
        e = _flat_torus_in_flat(5)
        assert sm.gauss_residual(e, (0.5, 1.0, 4.0)) < 1e-10

    def test_round_sphere(self):
        e = cat.round_sphere_in_flat(2, 1.3)
        assert sm.gauss_residual(e, (1.1, 0.7)) < 1e-6

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_plane_in_curved_ambient(self, seed):
        e = cat.plane_embedding(seed)
        for x in [(0.3, -0.2), (-0.5, 0.4)]:
            assert sm.gauss_residual(e, x) < 1e-5

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_torus_in_curved_ambient(self, seed):
        e = cat.random_torus_embedding(seed)
        for x in [(0.5, 1.1, 2.0), (2.5, 4.0, 1.3)]:
            assert sm.gauss_residual(e, x) < 1e-5


class TestPEHypersurface:
    def test_totally_geodesic_slice(self):
        res = sm.pe_hypersurface_identities(
            cat.totally_geodesic_slice(2), (0.2, -0.1, 0.3))
        assert res["ricci_residual"] < 1e-8
        assert res["scalar_residual"] < 1e-8

    def test_geodesic_sphere_orbit(self):
        res = sm.pe_hypersurface_identities(
            cat.geodesic_sphere_in_ball(2, 1.0), (1.2, 0.8, 0.5))
        assert res["ricci_residual"] < 1e-5
        assert res["scalar_residual"] < 1e-5

    def test_flat_ambient_rejected(self):
        with pytest.raises(AmbientNotPE):
            sm.pe_hypersurface_identities(
                cat.round_sphere_in_flat(3, 1.0), (1.2, 0.9, 0.4))

    def test_higher_codimension_rejected(self):
        e = sm.Embedding(2, cat.hyperbolic_ball(4),
                         lambda x: list(x) + [0.0, 0.0],
                         domain=lambda x: float(x @ x) < 0.9)
        with pytest.raises(CodimensionError):
            sm.pe_hypersurface_identities(e, (0.2, 0.1))


class TestMinimalHyperbolic:
    def test_slice_identities(self):
        res = sm.minimal_hyperbolic_identities(
            cat.totally_geodesic_slice(2), (0.15, 0.2, 0.1))
        assert res["ric_residual"] < 1e-8
        assert res["scalar_residual"] < 1e-8

    def test_higher_codimension_slice(self):
        # H^2 inside H^4: the identities are stated for any codimension
        e = sm.Embedding(2, cat.hyperbolic_ball(4),
                         lambda x: list(x) + [0.0, 0.0],
                         domain=lambda x: float(x @ x) < 0.9,
                         name="plane-in-H4")
        res = sm.minimal_hyperbolic_identities(e, (0.25, -0.3))
        assert res["ric_residual"] < 1e-8
        assert res["scalar_residual"] < 1e-8

    def test_not_minimal_raises(self):
        with pytest.raises(NotMinimal):
            sm.minimal_hyperbolic_identities(
                cat.geodesic_sphere_in_ball(2, 1.0), (1.2, 0.8, 0.5))

    def test_non_hyperbolic_ambient_raises(self):
        with pytest.raises(AmbientNotPE):
            sm.minimal_hyperbolic_identities(_saddle(), (0.0, 0.0))


class TestFialkowGauss:
    def test_flat_in_flat(self):
        assert sm.fialkow_gauss_residual(
            _flat_torus_in_flat(5), (0.5, 1.0, 4.0)) < 1e-10

    def test_unit_three_sphere_closed_form(self):
        # P^{S^3} = h/2 balances h |H|^2 / (2(k+1)^2) = h * 9/18 alone
        e = cat.round_sphere_in_flat(3, 1.0)
        x = (1.2, 0.9, 0.4)
        assert sm.fialkow_gauss_residual(e, x) < 1e-6
        ed = sm.extrinsic_data(e, x)
        assert np.abs(ed.traceless_sff).max() < 1e-10
        hn = float(np.sqrt(ed.mean_curvature_components
                           @ ed.mean_curvature_components))
        assert abs(hn - 3.0) < 1e-10
        py = te.curvature(sm.induced_chart(e), x, want_schouten=True).schouten
        assert np.abs(py - ed.induced_metric / 2.0).max() < 1e-6

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4, 5])
    def test_torus_in_curved_ambient(self, seed):
        e = cat.random_torus_embedding(seed)
        for x in [(0.5, 1.1, 2.0), (3.1, 0.7, 5.2)]:
            assert sm.fialkow_gauss_residual(e, x) < 1e-5

    def test_surface_too_small(self):
        with pytest.raises(DimensionTooSmall):
            sm.fialkow_gauss_residual(cat.plane_embedding(0), (0.1, 0.2))


class TestConformalSffLaw:
    def test_slice_both_laws_vanish(self):
        res = sm.conformal_sff_law_residual(
            cat.equatorial_slice_collar(2), (0.2, 0.8, 0.9))
        assert res["sff_law_residual"] < 1e-12
        assert res["normal_component_residual"] < 1e-12

    @pytest.mark.parametrize("r0", [0.1, 0.3])
    def test_sphere_orbit(self, r0):
        res = sm.conformal_sff_law_residual(
            cat.sphere_orbit_collar(2, r0), (1.0, 1.2, 0.7))
        assert res["sff_law_residual"] < 1e-10
        assert res["normal_component_residual"] < 1e-10

    @pytest.mark.parametrize("make", [
        lambda: cat.bent_slice_collar(2, 0.25),
        lambda: cat.orthogonal_cap_collar(2, 2.0),
    ])
    def test_curved_graphs(self, make):
        res = sm.conformal_sff_law_residual(make(), (0.2, 0.8, 0.9))
        assert res["sff_law_residual"] < 1e-10
        assert res["normal_component_residual"] < 1e-10

    def test_boundary_point_rejected(self):
        with pytest.raises(DomainError):
            sm.conformal_sff_law_residual(
                cat.equatorial_slice_collar(2), (0.0, 0.8, 0.9))

    def test_codimension_guard(self):
        amb = cat._normal_sphere_collar(2)
        e = sm.Embedding(2, amb, lambda x: [x[0], np.pi / 2, x[1], 1.0],
                         name="codim2")
        with pytest.raises(CodimensionError):
            sm.conformal_sff_law_residual(e, (0.2, 0.8))


class TestBoundaryInvariant:
    y = (0.8, 0.9)

    def test_slice_vanishes(self):
        assert abs(sm.boundary_conformal_invariant(
            cat.equatorial_slice_collar(2), self.y)) < 1e-10

    def test_bent_slice_oracle(self):
        # theta_1 = pi/2 + amp r^2: eta_hat = 0, Bbar_00 -> 2 amp
        amp, n = 0.25, 2
        e = cat.bent_slice_collar(n, amp)
        inv = sm.boundary_conformal_invariant(e, self.y)
        assert abs(abs(inv) - 2 * n * amp) < 1e-6
        # consistency pair: same number from the bulk mean curvature slope
        c1 = sm.mean_curvature_linear_coefficient(e, self.y)
        assert abs(abs(c1) - abs(inv)) < 1e-3

    def test_cap_cancellation(self):
        # eta_hat = n/rho and n*Bbar_00 cancel although both are nonzero
        rho, n = 2.0, 2
        e = cat.orthogonal_cap_collar(n, rho)
        eta = sm.extrinsic_data(sm.boundary_embedding(e),
                                self.y).mean_curvature_components[0]
        assert abs(abs(float(eta)) - n / rho) < 1e-8
        assert abs(sm.boundary_conformal_invariant(e, self.y)) < 1e-6
        assert abs(sm.mean_curvature_linear_coefficient(e, self.y)) < 1e-6

    @pytest.mark.parametrize("w", [0.3, -0.4])
    def test_gauge_rescaling(self, w):
        e = cat.bent_slice_collar(2, 0.25)
        inv0 = sm.boundary_conformal_invariant(e, self.y)
        invw = sm.boundary_conformal_invariant(e, self.y, gauge_w=w)
        assert abs(invw - np.exp(-w) * inv0) < 1e-3 * abs(inv0)

    def test_not_orthogonal_raises(self):
        amb = cat._normal_sphere_collar(2)
        tilt = sm.Embedding(
            3, amb, lambda x: [x[0], np.pi / 2 + 0.3 * x[0]] + list(x[1:]),
            name="tilted-slice")
        with pytest.raises(NotOrthogonal):
            sm.boundary_conformal_invariant(tilt, self.y)

    def test_graph_form_required(self):
        with pytest.raises(DomainError):
            sm.boundary_conformal_invariant(
                cat.sphere_orbit_collar(2, 0.3), self.y)


class TestBoundaryRestriction:
    y = (0.8, 0.9)

    def test_slice(self):
        assert sm.ii_equals_bbar_residual(
            cat.equatorial_slice_collar(2), self.y) < 1e-10

    def test_cap_nontrivial(self):
        e = cat.orthogonal_cap_collar(2, 2.0)
        edb = sm.extrinsic_data(sm.boundary_embedding(e), self.y)
        assert np.abs(edb.sff).max() > 0.1   # genuinely curved trace
        assert sm.ii_equals_bbar_residual(e, self.y) < 1e-6

    def test_bent_slice(self):
        assert sm.ii_equals_bbar_residual(
            cat.bent_slice_collar(2, 0.25), self.y) < 1e-6


class TestWeylRestriction:
    """Both Weyl tensors vanish on conformally flat products (0 = 0).

    The collar metrics of the hyperbolic families are conformally flat, so
    the restricted ambient Weyl tensor and the boundary Weyl tensor are
    each identically zero; a genuinely curved instance would need a
    non-conformally-flat Einstein collar, which no catalog entry provides.
    """

    def test_normal_sphere_family(self):
        fam = cat.hyperbolic_normal_sphere(4)    # collar dim 6, boundary dim 5
        cc = collar_chart(fam)
        w = te.curvature(cc, (0.2, 0.9, 1.1, 0.7, 1.3), want_weyl=True).weyl
        assert np.abs(w).max() < 1e-7
        bc = boundary_chart(fam)
        wb = te.curvature(bc, (0.9, 1.1, 0.7, 1.3), want_weyl=True).weyl
        assert np.abs(wb).max() < 1e-7

    def test_half_space_family(self):
        fam = cat.hyperbolic_half_space(3)       # collar flat, dim 4
        cc = collar_chart(fam)
        w = te.curvature(cc, (0.2, 0.5, 0.6, 0.7), want_weyl=True).weyl
        assert np.abs(w).max() < 1e-12
