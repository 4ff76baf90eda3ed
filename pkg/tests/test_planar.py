"""Planar measures: radial reduction, energy families, velocity fields."""
import math

import numpy as np
import pytest

from logmeasure import (
    AtomOnGrid,
    BadParams,
    EmptyMeasure,
    GridSpec,
    MalformedInterval,
    RegionOutsideGrid,
    TooFewPoints,
    VERDICT_DIVERGENT,
    VERDICT_FINITE,
    VERDICT_INCONCLUSIVE,
    arcsin_profile_cdf,
    biot_savart,
    blob_approximation,
    circle_measure,
    dirac_at,
    energy_planar,
    line_measure,
    local_kinetic_energy,
    planar_measure,
    power_law_profile,
    radial_cdf,
    radial_inequality_check,
    radial_pushforward_check,
    uniform_cdf,
)
from oracles import (
    annulus_kinetic_oracle,
    arcsin_profile_oracle,
    circle_energy_bruteforce_oracle,
    circle_energy_limit_oracle,
    circle_r2_moment_oracle,
)

TWO_PI = 2.0 * math.pi


class TestConstructors:
    def test_circle_four_points_frozen(self):
        P = circle_measure(4)
        # atoms sit at angles 1 + 2 pi k/4: the fixed 1-radian offset keeps
        # the set free of reflection symmetries about any projection center
        expected = [
            [math.cos(1.0), math.sin(1.0)],
            [math.cos(1.0 + math.pi / 2), math.sin(1.0 + math.pi / 2)],
            [math.cos(1.0 + math.pi), math.sin(1.0 + math.pi)],
            [math.cos(1.0 + 3 * math.pi / 2), math.sin(1.0 + 3 * math.pi / 2)],
        ]
        np.testing.assert_allclose(P.points, expected, atol=1e-15)
        np.testing.assert_allclose(P.weights, [0.25] * 4)

    def test_circle_radii_distinct_from_axis_point(self):
        P = circle_measure(64)
        r = np.hypot(P.points[:, 0] - 1.0, P.points[:, 1])
        assert len(np.unique(r)) == 64

    def test_circle_needs_three_points(self):
        with pytest.raises(TooFewPoints):
            circle_measure(2)

    def test_dirac(self):
        P = dirac_at((0.25, -0.5), 2.0)
        assert P.n_atoms == 1
        assert P.total_mass == pytest.approx(2.0)
        np.testing.assert_allclose(P.points, [[0.25, -0.5]])

    def test_line_measure_midpoints(self):
        P = line_measure(uniform_cdf(0.0, 1.0, 1.0), 8)
        np.testing.assert_allclose(P.points[:, 1], 0.0)
        np.testing.assert_allclose(
            P.points[:, 0], (np.arange(8) + 0.5) / 8.0, atol=1e-12)
        assert P.total_mass == pytest.approx(1.0)

    def test_weights_validated(self):
        with pytest.raises(BadParams):
            planar_measure([[0.0, 0.0]], [-1.0])

    def test_power_law_profile(self):
        prof = power_law_profile(1.0, 0.5, 1.0)
        assert prof.center == (0.0, 0.0)
        assert prof.G.total_mass == pytest.approx(1.0)
        assert prof.G(0.25) == pytest.approx(0.5)


class TestRadialCDF:
    @pytest.mark.parametrize("n,err", [
        (64, 0.009813953112659077),
        (256, 0.002001669046653387),
        (1024, 0.0009270191094414848),
    ])
    def test_circle_matches_arcsin_profile(self, n, err):
        G = radial_cdf(circle_measure(n), (1.0, 0.0)).G
        rs = np.linspace(0.0, 2.0, 4097)
        sup = float(np.max(np.abs(G(rs) - arcsin_profile_oracle(rs))))
        assert sup == pytest.approx(err, rel=1e-9)
        assert sup <= 2.0 / n

    def test_arcsin_reference_consistent(self):
        F = arcsin_profile_cdf()
        rs = np.linspace(0.0, 2.0, 257)
        np.testing.assert_allclose(F(rs), arcsin_profile_oracle(rs), atol=1e-12)

    def test_profile_is_probability(self):
        G = radial_cdf(circle_measure(100), (1.0, 0.0)).G
        assert G.total_mass == pytest.approx(1.0)
        assert G.support_lo >= 0.0
        assert G.support_hi <= 2.0 + 1e-12

    def test_empty_rejected(self):
        P = planar_measure(np.zeros((0, 2)), np.zeros(0))
        with pytest.raises(EmptyMeasure):
            radial_cdf(P, (0.0, 0.0))


class TestPushforward:
    @pytest.mark.parametrize("tag,lhs", [
        ("r^2", 2.0),
        ("min(r,1)", 0.8371658540367293),
        ("1", 1.0),
    ])
    def test_identities_exact(self, tag, lhs):
        res = radial_pushforward_check(circle_measure(100), (1.0, 0.0), tag)
        assert res["lhs"] == pytest.approx(lhs, rel=1e-12)
        assert res["gap"] == 0.0

    def test_r2_moment_matches_oracle(self):
        res = radial_pushforward_check(circle_measure(100), (1.0, 0.0), "r^2")
        assert res["lhs"] == pytest.approx(circle_r2_moment_oracle(100), rel=1e-12)

    def test_aliases(self):
        P = circle_measure(32)
        for alias, canon in (("r2", "r^2"), ("min", "min(r,1)"), ("one", "1")):
            a = radial_pushforward_check(P, (0.5, 0.5), alias)
            c = radial_pushforward_check(P, (0.5, 0.5), canon)
            assert a["lhs"] == c["lhs"]

    def test_unknown_tag(self):
        with pytest.raises(BadParams):
            radial_pushforward_check(circle_measure(8), (0.0, 0.0), "r^3")


class TestRadialInequality:
    @pytest.mark.parametrize("n,lhs,rhs", [
        (64, 0.25815902532562696, 0.8567415484127838),
        (128, 0.2851776772376721, 0.8960486579898428),
        (256, 0.30140973947165384, 0.9150494397318019),
    ])
    def test_circle_frozen(self, n, lhs, rhs):
        res = radial_inequality_check(circle_measure(n), (1.0, 0.0))
        assert res["lhs_lower"] == pytest.approx(lhs, rel=1e-12)
        assert res["rhs_lower"] == pytest.approx(rhs, rel=1e-12)
        assert res["holds_pointwise"]
        assert res["lhs_lower"] <= res["rhs_lower"]

    def test_center_projection_diverges(self):
        # all circle radii collapse onto (essentially) one distance from the
        # center, so the projected energy is infinite while lhs stays put
        res = radial_inequality_check(circle_measure(256), (0.0, 0.0))
        assert res["lhs_lower"] == pytest.approx(0.30140973947165384, rel=1e-12)
        assert res["rhs_lower"] == math.inf
        assert res["holds_pointwise"]

    def test_antipodal_pair(self):
        P = planar_measure([[1.0, 0.0], [-1.0, 0.0]], [0.5, 0.5])
        res = radial_inequality_check(P, (0.0, 0.0))
        assert res["lhs_lower"] == 0.0  # the atoms are distance 2 > 1 apart
        assert res["rhs_lower"] == math.inf  # equal radii collapse
        assert res["holds_pointwise"]


class TestEnergyFamilies:
    def test_circle_family_frozen(self):
        est = energy_planar(circle_measure(64))
        assert est.verdict == VERDICT_FINITE
        assert est.value == pytest.approx(0.3218262627019117, rel=1e-12)
        assert est.lower == pytest.approx(0.3210352606144715, rel=1e-12)
        assert est.upper == pytest.approx(0.3226172647893519, rel=1e-12)
        assert [int(t[0]) for t in est.trace] == [64, 128, 256, 512, 1024, 2048, 4096]
        assert est.trace[0][1] == pytest.approx(0.25815902532562696, rel=1e-12)
        assert est.trace[-1][1] == pytest.approx(0.3210352606144715, rel=1e-12)

    def test_circle_family_near_continuum_oracles(self):
        est = energy_planar(circle_measure(64))
        assert abs(est.value - circle_energy_limit_oracle()) <= 2e-3
        assert abs(est.value - circle_energy_bruteforce_oracle(4096)) <= 1e-3

    def test_line_family_matches_uniform_energy(self):
        est = energy_planar(line_measure(uniform_cdf(0.0, 1.0, 1.0), 64))
        assert est.verdict == VERDICT_FINITE
        assert est.value == pytest.approx(1.4985360495783802, rel=1e-12)
        assert abs(est.value - 1.5) <= 3e-3

    def test_dirac_family_diverges(self):
        est = energy_planar(dirac_at((0.25, -0.5), 1.0))
        assert est.verdict == VERDICT_DIVERGENT
        assert est.value == math.inf
        assert est.lower == 0.0

    def test_stacked_atoms_diverge(self):
        est = energy_planar(planar_measure([[0.0, 0.0], [0.0, 0.0]], [0.5, 0.5]))
        assert est.verdict == VERDICT_DIVERGENT

    def test_unrefinable_cloud_is_inconclusive(self):
        est = energy_planar(planar_measure([[0.0, 0.0], [1.0, 0.0]], [0.5, 0.5]))
        assert est.verdict == VERDICT_INCONCLUSIVE

    def test_empty_rejected(self):
        with pytest.raises(EmptyMeasure):
            energy_planar(planar_measure(np.zeros((0, 2)), np.zeros(0)))


class TestBlobApproximation:
    def test_dirac_blob_geometry(self):
        prof = radial_cdf(dirac_at((0.0, 0.0)), (0.0, 0.0))
        B = blob_approximation(prof, 64, 0.1)
        assert B.n_atoms == 512  # 64 parents x 8 ring points
        assert B.total_mass == pytest.approx(1.0, abs=0.0)
        G = radial_cdf(B, (0.0, 0.0)).G
        assert float(G(0.0999)) == 0.0
        assert float(G(0.1)) == 1.0

    def test_dirac_blob_energy_matches_circle_radius(self):
        # all blob mass lands on the radius-0.1 circle, whose continuum
        # log-energy is ln(1/0.1) = ln 10
        prof = radial_cdf(dirac_at((0.0, 0.0)), (0.0, 0.0))
        est = energy_planar(blob_approximation(prof, 64, 0.1))
        assert est.verdict == VERDICT_FINITE
        assert est.value == pytest.approx(2.301767890984598, rel=1e-12)
        assert abs(est.value - math.log(10.0)) <= 2e-3

    def test_blob_tracks_parent_modulus(self):
        from logmeasure import fit_holder

        parent = power_law_profile(1.0, 0.5, 1.0)
        parent_fit = fit_holder(parent.G, 1, 4)
        assert parent_fit.alpha == pytest.approx(0.5, abs=1e-9)
        B = blob_approximation(parent, 1000, 2.0**-4)
        fit = fit_holder(radial_cdf(B, (0.0, 0.0)).G, 1, 4)
        assert fit.alpha == pytest.approx(0.48320883868986114, rel=1e-9)
        assert fit.K == pytest.approx(1.010949552237142, rel=1e-9)
        assert fit.alpha >= 0.48
        assert fit.K <= 1.2 * parent_fit.K

    def test_bad_radius(self):
        with pytest.raises(BadParams):
            blob_approximation(power_law_profile(1.0, 0.5, 1.0), 10, 0.0)


class TestVelocity:
    def test_single_vortex_closed_form(self):
        # one cell centered exactly at (1, 0): u = (0, 1/(2 pi))
        field = biot_savart(dirac_at((0.0, 0.0)), GridSpec(0.5, -0.5, 1.5, 0.5, 1, 1))
        np.testing.assert_allclose(field.values[0, 0], [0.0, 1.0 / TWO_PI],
                                   atol=1e-15)

    def test_antisymmetry_under_reflection(self):
        g = GridSpec(-1.0, -1.0, 1.0, 1.0, 8, 8)
        u = biot_savart(dirac_at((0.0, 0.0)), g)
        # u(-x) = -u(x) for the origin vortex; the grid is symmetric
        np.testing.assert_allclose(u.values, -u.values[::-1, ::-1], atol=1e-15)

    def test_atom_on_node_rejected(self):
        with pytest.raises(AtomOnGrid):
            biot_savart(dirac_at((0.0, 0.0)), GridSpec(-1.0, -1.0, 1.0, 1.0, 1, 1))

    def test_grid_validation(self):
        with pytest.raises(BadParams):
            GridSpec(0.0, 0.0, 1.0, 1.0, 0, 4)
        with pytest.raises(MalformedInterval):
            GridSpec(1.0, 0.0, 0.0, 1.0, 4, 4)

    def test_annulus_energy_frozen(self):
        g = GridSpec(-1.1, -1.1, 1.1, 1.1, 440, 440)
        u = biot_savart(dirac_at((0.0, 0.0)), g)
        ke = local_kinetic_energy(u, (0.0, 0.0), 1.0, 0.1)
        assert ke == pytest.approx(0.36600816553314225, rel=1e-12)
        target = annulus_kinetic_oracle(0.1, 1.0)
        assert abs(ke - target) / target <= 0.05

    def test_log_growth_slope(self):
        g = GridSpec(-1.1, -1.1, 1.1, 1.1, 440, 440)
        u = biot_savart(dirac_at((0.0, 0.0)), g)
        eps = [0.4, 0.2, 0.1, 0.05]
        xs = [math.log(1.0 / e) for e in eps]
        ys = [local_kinetic_energy(u, (0.0, 0.0), 1.0, e) for e in eps]
        n = len(xs)
        sx, sy = sum(xs), sum(ys)
        slope = (n * sum(x * y for x, y in zip(xs, ys)) - sx * sy) / \
                (n * sum(x * x for x in xs) - sx * sx)
        target = 1.0 / TWO_PI
        assert abs(slope - target) / target <= 0.10

    def test_blob_energy_grid_stable(self):
        prof = radial_cdf(dirac_at((0.0, 0.0)), (0.0, 0.0))
        B = blob_approximation(prof, 64, 0.1)
        vals = {}
        for ng in (320, 400):
            u = biot_savart(B, GridSpec(-1.1, -1.1, 1.1, 1.1, ng, ng))
            vals[ng] = local_kinetic_energy(u, (0.0, 0.0), 1.0)
        assert vals[320] == pytest.approx(0.37849311125989205, rel=1e-12)
        assert vals[400] == pytest.approx(0.3767744087072328, rel=1e-12)
        assert abs(vals[400] - vals[320]) / vals[320] < 0.02

    def test_kinetic_energy_validation(self):
        g = GridSpec(-1.0, -1.0, 1.0, 1.0, 8, 8)
        u = biot_savart(dirac_at((0.3, 0.0)), g)
        with pytest.raises(BadParams):
            local_kinetic_energy(u, (0.0, 0.0), 0.1, 0.5)
        with pytest.raises(RegionOutsideGrid):
            local_kinetic_energy(u, (0.0, 0.0), 5.0)
