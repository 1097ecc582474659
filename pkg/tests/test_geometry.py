import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinzero.errors import DomainError, InfeasibleError
from spinzero.geometry import (
    DISK,
    EXTERIOR,
    HALFPLANE,
    OracleProblem,
    boundary_polar,
    boundary_polar_far,
    build_geometry,
    convexity_diagnostics,
    kd_boundary_cloud,
    kd_contains,
    lambda_star_d,
    oracle_min_product,
    phi_discriminant,
    region_contains,
    region_sample,
    thresholds,
)
from spinzero.partition import SpinParams

P_EXT = SpinParams(3.0, 4.0 / 3.0)  # exterior-of-disk case
P_DISK = SpinParams(4.0, 0.5)  # closed-disk case
P_ISING = SpinParams(2.0, 2.0)

GEO_EXT = build_geometry(P_EXT)
GEO_DISK = build_geometry(P_DISK)
GEO_ISING = build_geometry(P_ISING)


def ferro_pairs():
    """Random ferromagnetic parameter pairs covering both disk cases."""
    rng = np.random.default_rng(20240824)
    pairs = []
    while len(pairs) < 20:
        b = rng.uniform(1.05, 5.0)
        g = rng.uniform(1.01 / b, min(b, 4.0))
        p = SpinParams(b, g)
        if p.ferromagnetic and abs(phi_discriminant(p)) > 1e-6:
            pairs.append(p)
    return pairs


class TestPhiDiscriminant:
    def test_exterior_pair(self):
        assert phi_discriminant(P_EXT) == pytest.approx(-1.4083343, abs=1e-6)

    def test_disk_pair(self):
        assert phi_discriminant(P_DISK) == pytest.approx(0.2543226, abs=1e-6)

    def test_ising_always_negative(self):
        assert phi_discriminant(P_ISING) == pytest.approx(-1.8137994, abs=1e-6)
        for b in (1.1, 1.5, 2.0, 5.0):
            assert phi_discriminant(SpinParams(b, b)) < 0


class TestBuildGeometry:
    def test_exterior_goldens(self):
        assert GEO_EXT.region.case == EXTERIOR
        assert GEO_EXT.c_star == pytest.approx(0.8637120, abs=1e-6)
        assert GEO_EXT.r == pytest.approx(2.0716096, abs=1e-6)
        assert GEO_EXT.d_star == pytest.approx(3.0, abs=1e-12)
        assert GEO_EXT.lambda_star == pytest.approx(27.0 / 8.0, abs=1e-12)

    def test_disk_goldens(self):
        assert GEO_DISK.region.case == DISK
        assert GEO_DISK.c_star == pytest.approx(-16.3528, abs=1e-3)
        assert GEO_DISK.r == pytest.approx(14.4915, abs=1e-3)
        assert GEO_DISK.d_star == pytest.approx(4.0, abs=1e-12)
        assert GEO_DISK.lambda_star == pytest.approx(64.0, abs=1e-9)
        assert GEO_DISK.c_star < -GEO_DISK.r < -P_DISK.beta

    def test_ising_unit_circle(self):
        assert GEO_ISING.c_star == pytest.approx(0.0, abs=1e-12)
        assert GEO_ISING.r == pytest.approx(1.0, abs=1e-12)
        assert GEO_ISING.lambda_star == pytest.approx(1.0, abs=1e-12)

    def test_zeta_on_boundary_and_modulus(self):
        for geo, p in ((GEO_EXT, P_EXT), (GEO_DISK, P_DISK)):
            for zeta in (geo.zeta1, geo.zeta2):
                b, g = p.beta, p.gamma
                assert abs(g * zeta**2 + 2 * zeta + b) <= 1e-12
                assert abs(zeta) == pytest.approx(math.sqrt(b / g), abs=1e-12)
                assert abs(abs(zeta - geo.region.c) - geo.region.r) <= 1e-10


class TestRegionContains:
    def test_zero_excluded_everywhere(self):
        for geo in (GEO_EXT, GEO_DISK, GEO_ISING):
            assert not region_contains(geo.region, 0j)

    def test_boundary_points_included(self):
        assert region_contains(GEO_EXT.region, GEO_EXT.zeta1)
        assert region_contains(GEO_DISK.region, GEO_DISK.zeta1)

    def test_disk_center(self):
        assert region_contains(GEO_DISK.region, complex(GEO_DISK.c_star, 0.0))

    def test_region_moduli_exceed_one(self):
        # beta > gamma cases: every region point has modulus > 1
        for geo in (GEO_EXT, GEO_DISK):
            for z in region_sample(geo.region, 2000, seed=1):
                assert abs(z) > 1.0


class TestBoundaryPolar:
    def test_exterior_hits_zeta_direction(self):
        assert boundary_polar(GEO_EXT.region, 2 * math.pi / 3) == pytest.approx(1.5)

    def test_exterior_antipodal(self):
        want = GEO_EXT.r - GEO_EXT.c_star
        assert boundary_polar(GEO_EXT.region, math.pi) == pytest.approx(want)

    def test_disk_hits_zeta_direction(self):
        assert boundary_polar(GEO_DISK.region, 3 * math.pi / 4) == pytest.approx(
            2 * math.sqrt(2)
        )

    def test_disk_infeasible_angle(self):
        with pytest.raises(DomainError):
            boundary_polar(GEO_DISK.region, 0.0)

    def test_far_crossing_exceeds_near(self):
        th = math.pi
        assert boundary_polar_far(GEO_DISK.region, th) > boundary_polar(
            GEO_DISK.region, th
        )

    @given(st.floats(0.0, 2 * math.pi))
    @settings(max_examples=200, deadline=None)
    def test_exterior_boundary_consistency(self, th):
        region = GEO_EXT.region
        f = boundary_polar(region, th)
        z = cmath.rect(f, th)
        assert abs(abs(z - region.c) - region.r) <= 1e-10

    @given(st.floats(0.01, 0.99))
    @settings(max_examples=200, deadline=None)
    def test_disk_boundary_consistency(self, frac):
        # map frac into the feasible angle window
        region = GEO_DISK.region
        from spinzero.geometry import _feasible_interval

        lo, hi = _feasible_interval(region)
        th = lo + frac * (hi - lo)
        for fn in (boundary_polar, boundary_polar_far):
            z = cmath.rect(fn(region, th), th)
            assert abs(abs(z - region.c) - region.r) <= 1e-10


class TestLambdaStarD:
    def test_exterior_values(self):
        assert lambda_star_d(GEO_EXT, 3) == pytest.approx(3.375, abs=1e-9)
        assert lambda_star_d(GEO_EXT, 2) == pytest.approx(3.5455681, abs=1e-6)
        assert lambda_star_d(GEO_EXT, 4) == pytest.approx(3.5104324, abs=1e-6)

    def test_disk_values(self):
        assert lambda_star_d(GEO_DISK, 4) == pytest.approx(64.0, abs=1e-9)
        assert lambda_star_d(GEO_DISK, 2) == math.inf

    def test_equals_boundary_power(self):
        for d in range(2, 9):
            want = boundary_polar(GEO_EXT.region, math.pi - math.pi / d) ** d
            assert lambda_star_d(GEO_EXT, d) == pytest.approx(want, rel=1e-12)

    def test_argmin_matches_critical_degree(self):
        vals_ext = {d: lambda_star_d(GEO_EXT, d) for d in range(2, 21)}
        assert min(vals_ext, key=vals_ext.get) == 3
        vals_disk = {d: lambda_star_d(GEO_DISK, d) for d in range(2, 21)}
        assert min(vals_disk, key=vals_disk.get) == 4

    def test_global_minimum_over_degrees(self):
        for geo in (GEO_EXT, GEO_DISK):
            vals = [lambda_star_d(geo, d) for d in range(2, 51)]
            assert min(vals) >= geo.lambda_star - 1e-9


class TestOracle:
    def test_exterior_critical_degree(self):
        v, argmin = oracle_min_product(
            OracleProblem(GEO_EXT.region, 3), restarts=64, seed=0
        )
        assert v == pytest.approx(3.375, rel=1e-6)
        for _, th in argmin:
            assert th == pytest.approx(2 * math.pi / 3, abs=1e-3)

    def test_disk_critical_degree(self):
        v, argmin = oracle_min_product(
            OracleProblem(GEO_DISK.region, 4), restarts=64, seed=0
        )
        assert v == pytest.approx(64.0, rel=1e-6)
        for _, th in argmin:
            assert th == pytest.approx(3 * math.pi / 4, abs=1e-3)

    def test_ising_unit_products(self):
        for d in (2, 3, 5):
            v, _ = oracle_min_product(
                OracleProblem(GEO_ISING.region, d), restarts=16, seed=0
            )
            assert v == pytest.approx(1.0, abs=1e-9)

    def test_disk_degree_two_infeasible(self):
        with pytest.raises(InfeasibleError):
            oracle_min_product(OracleProblem(GEO_DISK.region, 2), restarts=8, seed=0)

    def test_agrees_with_closed_form_across_parameters(self):
        for p in ferro_pairs()[:8]:
            geo = build_geometry(p)
            for d in (2, 3, 5):
                closed = lambda_star_d(geo, d)
                if math.isinf(closed):
                    continue
                v, _ = oracle_min_product(
                    OracleProblem(geo.region, d), restarts=32, seed=3
                )
                assert v == pytest.approx(closed, rel=1e-5)

    def test_deterministic(self):
        a = oracle_min_product(OracleProblem(GEO_EXT.region, 4), restarts=16, seed=5)
        b = oracle_min_product(OracleProblem(GEO_EXT.region, 4), restarts=16, seed=5)
        assert a == b


class TestKdContains:
    def test_boundary_intercept(self):
        assert kd_contains(GEO_EXT, 3, 3.375 + 0j, restarts=24, seed=0, rel_slack=1e-6)

    def test_below_intercept(self):
        assert not kd_contains(GEO_EXT, 3, 3.3 + 0j, restarts=24, seed=0)

    def test_explicit_square_factorization(self):
        for geo in (GEO_EXT, GEO_DISK):
            z = -geo.zeta1 * geo.zeta1
            assert kd_contains(geo, 2, z, restarts=24, seed=0, rel_slack=1e-6)

    def test_zero_never_contained(self):
        assert not kd_contains(GEO_EXT, 3, 0j)

    def test_disk_beyond_max_product_excluded(self):
        big = (abs(GEO_DISK.c_star) + GEO_DISK.r) ** 4
        assert not kd_contains(GEO_DISK, 4, complex(-big * 1.5, 0.0), restarts=24, seed=0)


class TestBoundaryCloud:
    def test_exterior_intercept(self):
        pts = kd_boundary_cloud(GEO_EXT, 3, angle_samples=360, seed=0)
        on_axis = [abs(z) for z in pts if abs(z.imag) < 1e-9 and z.real > 0]
        assert min(on_axis) == pytest.approx(3.375, abs=1e-3)

    def test_ising_unit_circle(self):
        pts = kd_boundary_cloud(GEO_ISING, 3, angle_samples=90, seed=0)
        for z in pts:
            assert abs(z) == pytest.approx(1.0, abs=1e-9)

    def test_disk_even_degree_closed_curve(self):
        pts = kd_boundary_cloud(GEO_DISK, 2, angle_samples=90, seed=0)
        assert len(pts) > 0
        # near and far branches come in pairs
        assert len(pts) % 2 == 0


class TestThresholds:
    def test_first_golden_row(self):
        t = thresholds(SpinParams(2.0, 1.0))
        assert t.lambda_mcmc == pytest.approx(2.0)
        assert t.d_c == pytest.approx(3.4142136, abs=1e-6)
        assert t.lambda_c == pytest.approx(10.6606, abs=1e-3)
        assert t.d_star == pytest.approx(4.0, abs=1e-12)
        assert t.lambda_star == pytest.approx(4.0, abs=1e-12)

    def test_exterior_pair(self):
        t = thresholds(P_EXT)
        assert t.lambda_mcmc == pytest.approx(2.25)
        assert t.d_c == pytest.approx(2.0, abs=1e-12)
        assert t.lambda_c == pytest.approx(5.0625, abs=1e-9)
        assert t.lambda_star == pytest.approx(3.375, abs=1e-9)

    def test_ising_all_one(self):
        t = thresholds(P_ISING)
        assert t.lambda_mcmc == t.lambda_star == t.lambda_c == 1.0


class TestConvexityDiagnostics:
    def test_exterior_case(self):
        rep = convexity_diagnostics(GEO_EXT, 1000)
        assert rep.min_g_second >= -1e-12
        assert rep.min_h_second >= -1e-12
        assert abs(rep.h_prime_at_d_star) <= 1e-10

    def test_disk_case(self):
        rep = convexity_diagnostics(GEO_DISK, 1000)
        assert rep.min_g_second >= -1e-12
        assert rep.min_h_second >= -1e-12
        assert abs(rep.h_prime_at_d_star) <= 1e-10

    def test_ising_degenerate(self):
        # c = 0 kills the angular curvature identically
        rep = convexity_diagnostics(GEO_ISING, 100)
        assert rep.min_g_second == pytest.approx(0.0, abs=1e-14)


class TestHalfPlaneCase:
    def geo(self):
        # solve beta*gamma for phi = 0 at fixed ratio, by bisection on gamma
        from spinzero.geometry import phi_discriminant as phid

        b = 4.0
        lo, hi = 0.26, 4.0
        for _ in range(200):
            mid = (lo + hi) / 2
            if phid(SpinParams(b, mid)) > 0:
                lo = mid
            else:
                hi = mid
        return build_geometry(SpinParams(b, (lo + hi) / 2))

    def test_case_and_boundary(self):
        geo = self.geo()
        assert geo.region.case == HALFPLANE
        g = geo.params.gamma
        assert geo.region.bound == pytest.approx(-1.0 / g)
        th = 0.8 * math.pi
        z = cmath.rect(boundary_polar(geo.region, th), th)
        assert z.real == pytest.approx(-1.0 / g, abs=1e-10)

    def test_closed_form_matches_oracle(self):
        # d = 2 is degenerate here: the boundary distance diverges at the
        # window edge, so the closed form blows up and the oracle has no
        # finite optimum to match
        geo = self.geo()
        for d in (3, 4, 5):
            v, _ = oracle_min_product(OracleProblem(geo.region, d), restarts=32, seed=7)
            assert v == pytest.approx(lambda_star_d(geo, d), rel=1e-5)

    def test_diagnostics(self):
        rep = convexity_diagnostics(self.geo(), 500)
        assert rep.min_g_second >= -1e-12
        assert rep.min_h_second >= -1e-12
        assert abs(rep.h_prime_at_d_star) <= 1e-8
