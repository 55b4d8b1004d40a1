"""Cheeger bound chain, eigenfunction contract, brackets, isoperimetric ratios."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ahgeo import catalog as cat
from ahgeo import catenoid as ct
from ahgeo import cheeger_spectral as cs
from ahgeo import jets
from ahgeo.errors import (DomainError, InvalidCMC, InvalidP,
                          NotLeeEigenfunction)


@pytest.fixture(scope="module")
def lee4():
    return cs.lee_hyperbolic_field(4)


@pytest.fixture(scope="module")
def catenoid_embedding():
    sol = ct.solve_profile(ct.CatenoidParams(n=2, delta=1, neck=1.0,
                                             s_max=8.0))
    return ct.ball_embedding(sol)


SAMPLES = tuple(np.array([s, 0.9, 0.4]) for s in (0.3, 0.8, 1.5, 2.5, 3.5)) \
    + (np.array([1.0, 1.7, 2.0]),)


class TestUpperChain:
    def test_minimal_case_is_exact(self):
        assert cs.cheeger_upper_bound(2, 0) == 2.0
        assert cs.cheeger_upper_bound(5, 0) == 5.0

    def test_closed_form_value(self):
        assert cs.cheeger_upper_bound(3, 2) == pytest.approx(
            3.0 * math.sqrt(3.0) / 2.0, rel=1e-15)

    def test_extreme_cmc_gives_zero(self):
        assert cs.cheeger_upper_bound(2, 3) == 0.0

    def test_cmc_range_guard(self):
        with pytest.raises(InvalidCMC):
            cs.cheeger_upper_bound(1, 2.5)
        with pytest.raises(InvalidCMC):
            cs.cheeger_upper_bound(2, -3.5)
        with pytest.raises(ValueError):
            cs.cheeger_upper_bound(0.5, 0.0)

    def test_eigenvalue_examples(self):
        assert cs.lambda1p_upper(2, 0, 2) == 1.0
        assert cs.cheeger_upper_from_lambda(1.0, 2) == 2.0
        chained = cs.cheeger_upper_from_lambda(cs.lambda1p_upper(3, 2, 3), 3)
        assert chained == pytest.approx(3.0 * math.sqrt(3.0) / 2.0, rel=1e-12)

    def test_chain_is_algebraic_identity(self):
        rng = np.random.default_rng(20240817)
        for _ in range(100):
            k = 1.0 + 4.0 * rng.random()
            C = (k + 1.0) * (2.0 * rng.random() - 1.0)
            p = 1.0 + 4.0 * rng.random()
            direct = cs.cheeger_upper_bound(k, C)
            chained = cs.cheeger_upper_from_lambda(
                cs.lambda1p_upper(k, C, p), p)
            assert abs(chained - direct) <= 1e-12 * max(1.0, direct)

    def test_p_guards(self):
        with pytest.raises(InvalidP):
            cs.lambda1p_upper(2, 0, 1.0)
        with pytest.raises(InvalidP):
            cs.lambda1p_upper(2, 0, math.inf)
        with pytest.raises(InvalidP):
            cs.cheeger_upper_from_lambda(1.0, 1.0)
        with pytest.raises(ValueError):
            cs.cheeger_upper_from_lambda(-1.0, 2.0)

    @given(k=st.floats(1.0, 6.0), frac=st.floats(-1.0, 1.0))
    @settings(max_examples=60, deadline=None)
    def test_bound_shrinks_with_cmc(self, k, frac):
        val = cs.cheeger_upper_bound(k, frac * (k + 1.0))
        assert 0.0 <= val <= k
        assert val <= cs.cheeger_upper_bound(k, 0.0) + 1e-15


class TestLeeField:
    def test_center_values(self):
        u, du, hess = cs.lee_hyperbolic(np.zeros(4))
        assert u == 2.0
        assert np.all(du == 0.0)
        # trace-free part against g = 4 I at the center
        assert np.abs(hess - 2.0 * 4.0 * np.eye(4)).max() == 0.0

    def test_normalization_defect(self, lee4):
        x = np.array([0.9, 0.0, 0.0, 0.0])
        u, _, _ = cs.lee_hyperbolic(x)
        assert u - 1.0 / lee4.gauge(x) == pytest.approx(1.0 / 19.0, abs=1e-12)

    def test_contract_on_random_points(self, lee4):
        rng = np.random.default_rng(7)
        count = 0
        while count < 1000:
            x = rng.uniform(-0.6, 0.6, size=4)
            if x @ x > 0.9:
                continue
            count += 1
            u0, _, _, lap, gradsq = lee4.data_at(x)
            assert u0 > 0.0
            assert abs(lap - 4.0 * u0) < 1e-8
            assert abs((u0 * u0 - gradsq) - 4.0) < 1e-8

    def test_closed_form_matches_engine(self, lee4):
        rng = np.random.default_rng(11)
        for _ in range(50):
            x = rng.uniform(-0.45, 0.45, size=4)
            u0, du, hess, _, _ = lee4.data_at(x)
            uc, duc, hessc = cs.lee_hyperbolic(x)
            assert abs(u0 - uc) < 1e-12 * uc
            assert np.abs(du - duc).max() < 1e-10 * (1.0 + np.abs(duc).max())
            assert np.abs(hess - hessc).max() < 1e-10 * np.abs(hessc).max()

    def test_check_passes_and_domain_guard(self, lee4):
        assert lee4.check([np.zeros(4), np.array([0.3, -0.2, 0.1, 0.4])])
        with pytest.raises(DomainError):
            cs.lee_hyperbolic(np.array([1.0, 0.0]))

    def test_wrong_field_rejected(self):
        fake = cs.LeeField(ambient=cat.euclidean_space(3),
                           u=lambda x: jets.exp(x[0]), name="fake")
        with pytest.raises(NotLeeEigenfunction):
            fake.check([np.array([0.1, 0.2, 0.0])])


class TestBetaY:
    def test_totally_geodesic_slice(self, lee4):
        e = cat.totally_geodesic_slice(2)
        pts = [np.array(p) for p in
               [(0.2, -0.1, 0.3), (0.5, 0.2, 0.1), (0.0, 0.0, 0.0)]]
        assert abs(cs.beta_Y(e, lee4, pts)) < 1e-8

    def test_catenoid(self, catenoid_embedding, lee4):
        assert abs(cs.beta_Y(catenoid_embedding, lee4, SAMPLES)) < 1e-6

    def test_fake_field_rejected_in_loop(self):
        fake = cs.LeeField(ambient=cat.euclidean_space(3),
                           u=lambda x: jets.exp(x[0]), name="fake")
        plane = cat.totally_geodesic_slice(2)
        flat_plane = type(plane)(2, cat.euclidean_space(3),
                                 lambda x: [x[0], x[1], 0.0], name="plane")
        with pytest.raises(NotLeeEigenfunction):
            cs.beta_Y(flat_plane, fake, [np.array([0.1, 0.2])])

    def test_ambient_mismatch(self, catenoid_embedding):
        with pytest.raises(ValueError):
            cs.beta_Y(catenoid_embedding, cs.lee_hyperbolic_field(3), SAMPLES)
        fake = cs.LeeField(ambient=cat.euclidean_space(4),
                           u=lambda x: jets.exp(x[0]), name="flat")
        with pytest.raises(ValueError):
            cs.beta_Y(catenoid_embedding, fake, SAMPLES)

    def test_needs_samples(self, catenoid_embedding, lee4):
        with pytest.raises(ValueError):
            cs.beta_Y(catenoid_embedding, lee4, [])


class TestTestFunctionMechanism:
    def test_laplacian_bounded_below_by_k(self, catenoid_embedding, lee4):
        # minimal hypersurface, vanishing normal trace: the test-function
        # Laplacian must clear k = 2 (it equals 3 - |grad ln u|^2 here)
        for s in (0.5, 1.5, 3.0):
            lap = cs.restricted_log_laplacian(
                catenoid_embedding, lee4, np.array([s, 0.9, 0.4]))
            assert lap >= 2.0 - 1e-4
            assert lap <= 3.0 + 1e-6

    def test_matches_profile_derivative(self, catenoid_embedding, lee4):
        # independent route: on a rotation surface u restricts to a
        # function of arclength, so the Laplacian is 3 - (d ln u/ds)^2
        e = catenoid_embedding

        def uhat(s):
            b = np.array(e.chart_map(np.array([s, 0.9, 0.4])), dtype=float)
            r2 = b @ b
            return 2.0 * (1.0 + r2) / (1.0 - r2)

        h = 1e-5
        dln = (math.log(uhat(0.5 + h)) - math.log(uhat(0.5 - h))) / (2.0 * h)
        want = 3.0 - dln * dln
        got = cs.restricted_log_laplacian(e, lee4, np.array([0.5, 0.9, 0.4]))
        assert got == pytest.approx(want, abs=1e-4)


class TestLowerBound:
    def test_values(self):
        lb = cs.cheeger_lower_bound(2, 0, 0)
        assert lb.value == 2.0 and not lb.vacuous
        assert cs.cheeger_lower_bound(3, 0.5, 0.2).value == pytest.approx(2.3)

    def test_vacuous_flagged_not_raised(self):
        lb = cs.cheeger_lower_bound(2, 3, 0)
        assert lb.vacuous and lb.value == -1.0

    def test_k_guard(self):
        with pytest.raises(ValueError):
            cs.cheeger_lower_bound(0.5, 0, 0)


class TestIsoperimetricRatio:
    @pytest.mark.parametrize("R", [0.5, 1.9, 2.0, 3.0, 10.0, 16.0])
    def test_matches_dimension_three_closed_form(self, R):
        closed = 2.0 * math.sinh(R) ** 2 / (
            math.sinh(R) * math.cosh(R) - R)
        assert cs.ball_isoperimetric_ratio(3, R) == pytest.approx(
            closed, rel=1e-12)

    def test_long_radius_value(self):
        assert cs.ball_isoperimetric_ratio(3, 10) == pytest.approx(
            2.0, abs=1e-3)

    def test_small_radius_is_euclidean(self):
        assert cs.ball_isoperimetric_ratio(2, 1e-3) == pytest.approx(
            2.0 / 1e-3, rel=1e-5)
        assert cs.ball_isoperimetric_ratio(3, 1e-3) == pytest.approx(
            3.0 / 1e-3, rel=1e-5)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_strictly_decreasing_above_limit(self, m):
        grid = [0.25 * 2.0 ** j for j in range(7)]
        vals = [cs.ball_isoperimetric_ratio(m, r) for r in grid]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(v > m - 1 for v in vals)

    def test_twenty_versus_ten(self):
        v20 = cs.ball_isoperimetric_ratio(3, 20)
        v10 = cs.ball_isoperimetric_ratio(3, 10)
        assert v20 < v10
        assert v20 > 2.0 and v10 > 2.0

    def test_validation(self):
        for m, R in [(1, 1.0), (2.5, 1.0), (3, 0.0), (3, -2.0),
                     (3, math.inf)]:
            with pytest.raises(ValueError):
                cs.ball_isoperimetric_ratio(m, R)


class TestBracket:
    def test_catenoid_determined(self, catenoid_embedding, lee4):
        scen = cs.CheegerScenario(k=2, C=0.0, embedding=catenoid_embedding,
                                  lee=lee4, samples=SAMPLES,
                                  minimal_certified=True,
                                  label="unit-neck profile")
        rep = cs.cheeger_bracket(scen)
        assert rep.upper == 2.0
        assert rep.bracket_valid and rep.determined
        assert rep.cheeger == 2.0
        assert abs(rep.upper - rep.lower) < 1e-6
        assert rep.alpha == 0.0
        assert rep.max_mean_curvature < 1e-8
        assert rep.sample_count == len(SAMPLES)
        assert rep.beta_delta < 1e-6

    def test_totally_geodesic_determined(self, lee4):
        e = cat.totally_geodesic_slice(2)
        pts = tuple(np.array(p) for p in
                    [(0.2, -0.1, 0.3), (0.5, 0.2, 0.1), (0.3, 0.4, 0.2)])
        rep = cs.cheeger_bracket(cs.CheegerScenario(
            k=2, embedding=e, lee=lee4, samples=pts, minimal_certified=True))
        assert rep.determined and rep.cheeger == 2.0

    def test_upper_only_scenario(self):
        rep = cs.cheeger_bracket(cs.CheegerScenario(k=3, C=2.0))
        assert rep.upper == pytest.approx(3.0 * math.sqrt(3.0) / 2.0)
        assert rep.lower is None and rep.beta is None
        assert not rep.bracket_valid and not rep.determined
        assert rep.cheeger is None

    def test_uncertified_alpha_from_samples(self, catenoid_embedding, lee4):
        rep = cs.cheeger_bracket(cs.CheegerScenario(
            k=2, embedding=catenoid_embedding, lee=lee4, samples=SAMPLES))
        assert rep.alpha == rep.max_mean_curvature
        assert rep.determined  # sampled |H| is tiny for the true profile

    def test_explicit_alpha_loosens_bracket(self, catenoid_embedding, lee4):
        rep = cs.cheeger_bracket(cs.CheegerScenario(
            k=2, embedding=catenoid_embedding, lee=lee4, samples=SAMPLES,
            alpha=0.5))
        assert rep.lower == pytest.approx(1.5, abs=1e-6)
        assert rep.bracket_valid and not rep.determined

    def test_vacuous_bracket_flagged(self, catenoid_embedding, lee4):
        rep = cs.cheeger_bracket(cs.CheegerScenario(
            k=2, embedding=catenoid_embedding, lee=lee4, samples=SAMPLES,
            alpha=5.0))
        assert rep.lower == pytest.approx(-3.0, abs=1e-6)
        assert not rep.bracket_valid and not rep.determined

    def test_scenario_validation(self, catenoid_embedding, lee4):
        with pytest.raises(ValueError):
            cs.CheegerScenario(k=3, embedding=catenoid_embedding, lee=lee4,
                               samples=SAMPLES)
        with pytest.raises(ValueError):
            cs.CheegerScenario(k=2, embedding=catenoid_embedding,
                               samples=SAMPLES)
        with pytest.raises(ValueError):
            cs.CheegerScenario(k=2, embedding=catenoid_embedding, lee=lee4)
        with pytest.raises(ValueError):
            cs.CheegerScenario(k=2, C=1.0, minimal_certified=True)
