"""Membership classifier, modulus fits, and integrability functionals."""
import math

import pytest

from logmeasure import (
    BadParams,
    Block,
    DIVERGENCE_CERTIFIED,
    DegenerateModulus,
    MEMBER_CERTIFIED,
    StepDensity,
    check_log_modulus,
    classify_membership,
    fit_holder,
    l_log_l_gamma,
    lp_norm,
    l1_divergent_blocks,
    modulus_of_continuity,
    power_law_cdf,
    table_cdf,
    uniform_cdf,
)
from logmeasure.fractal import cantor_cdf, general_ratio_spec, standard_cantor_spec
from logmeasure.planar import power_law_profile
from oracles import cantor_modulus_oracle, staircase_llogl_oracle

LN2 = math.log(2.0)


class TestModulusOfContinuity:
    def test_uniform(self):
        F = uniform_cdf(0.0, 1.0, 1.0)
        assert modulus_of_continuity(F, 0.1) == pytest.approx(0.1, rel=1e-9)

    def test_cantor_matches_oracle(self):
        F = cantor_cdf(standard_cantor_spec(3.0))
        assert modulus_of_continuity(F, 1.0 / 9.0) == pytest.approx(
            cantor_modulus_oracle(1.0 / 9.0), rel=1e-6)


class TestFitHolder:
    def test_sqrt_profile_exact(self):
        fit = fit_holder(power_law_cdf(1.0, 0.5, 1.0), 4, 16)
        assert fit.alpha == pytest.approx(0.5, abs=1e-12)
        assert fit.K == pytest.approx(1.0, abs=1e-12)
        assert fit.residual == pytest.approx(0.0, abs=1e-12)

    def test_uniform_is_lipschitz(self):
        fit = fit_holder(uniform_cdf(0.0, 1.0, 1.0), 4, 16)
        assert fit.alpha == pytest.approx(1.0, abs=1e-9)
        assert fit.K == pytest.approx(1.0, rel=1e-9)

    def test_cantor_frozen(self):
        fit = fit_holder(cantor_cdf(standard_cantor_spec(3.0)), 4, 16)
        assert fit.alpha == pytest.approx(0.6243061159371516, rel=1e-12)
        assert fit.K == pytest.approx(0.9121653512288663, rel=1e-12)
        assert fit.residual == pytest.approx(0.18196699410297068, rel=1e-9)
        assert 0.61 <= fit.alpha <= 0.65  # brackets ln2/ln3 = 0.6309...

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateModulus):
            fit_holder(uniform_cdf(0.0, 1.0, 0.0), 4, 16)

    def test_bad_window_rejected(self):
        with pytest.raises(BadParams):
            fit_holder(uniform_cdf(0.0, 1.0, 1.0), 16, 4)

    def test_as_dict(self):
        fit = fit_holder(power_law_cdf(1.0, 0.5, 1.0), 4, 16)
        d = fit.as_dict()
        assert set(d) >= {"alpha", "K", "residual"}


class TestCheckLogModulus:
    def test_frozen_ratios(self):
        F_u = uniform_cdf(0.0, 1.0, 1.0)
        F_t = table_cdf([0.0, 0.5, 1.0], [0.2, 0.7, 1.0])
        F_b2 = cantor_cdf(general_ratio_spec(2.0))
        F_c = cantor_cdf(standard_cantor_spec(3.0))

        rep = check_log_modulus(F_u, 2.0)
        assert rep["holds"]
        assert rep["worst_ratio"] == pytest.approx(0.37535391712359484, rel=1e-9)

        rep = check_log_modulus(F_t, 2.0)  # atoms break any modulus bound
        assert not rep["holds"]
        assert rep["worst_ratio"] == pytest.approx(29.067407342051183, rel=1e-9)

        # the doubly exponential family satisfies the beta = 1.5 bound but
        # its windowed beta = 2 supremum overshoots (ratio 1.50 at the
        # level-interaction scale)
        rep = check_log_modulus(F_b2, 1.5)
        assert rep["holds"]
        assert rep["worst_ratio"] == pytest.approx(0.8656243220792096, rel=1e-9)
        rep = check_log_modulus(F_b2, 2.0)
        assert not rep["holds"]
        assert rep["worst_ratio"] == pytest.approx(1.5014156684943794, rel=1e-9)

        rep = check_log_modulus(F_c, 2.0)
        assert not rep["holds"]
        assert rep["worst_ratio"] == pytest.approx(1.1260617513707845, rel=1e-9)

    def test_beta_must_exceed_one(self):
        from logmeasure import BadBeta

        with pytest.raises(BadBeta):
            check_log_modulus(uniform_cdf(0.0, 1.0, 1.0), 1.0)


class TestIntegrabilityFunctionals:
    def test_lp_norms(self):
        one = StepDensity((Block(0.0, 0.0, LN2),))  # height 2 on [0,1]
        assert lp_norm(one, 3.0) == pytest.approx(2.0, rel=1e-12)
        f50 = l1_divergent_blocks(50)
        assert lp_norm(f50, 1.0) == pytest.approx(1.0 - 2.0**-50, abs=1e-12)
        assert lp_norm(f50, 2.0) == math.inf  # heights overwhelm any p > 1

    def test_lp_exponent_validated(self):
        with pytest.raises(BadParams):
            lp_norm(l1_divergent_blocks(3), 0.5)

    def test_llogl_threshold(self):
        f50 = l1_divergent_blocks(50)
        v = l_log_l_gamma(f50, 0.4)
        assert v == pytest.approx(6.619098242450234, rel=1e-12)
        assert v == pytest.approx(staircase_llogl_oracle(0.4), rel=1e-9)
        assert l_log_l_gamma(f50, 0.5) == math.inf
        assert l_log_l_gamma(f50, 0.6) == math.inf


class TestClassifier:
    def test_uniform_lipschitz(self):
        v = classify_membership(uniform_cdf(0.0, 1.0, 1.0))
        assert v.verdict == MEMBER_CERTIFIED
        assert v.rule == "Lipschitz"
        assert v.witness["alpha"] == pytest.approx(1.0, abs=1e-9)
        assert v.witness["K"] == pytest.approx(1.0, rel=1e-9)
        assert v.witness["energy_bound"] == pytest.approx(2.0, rel=1e-9)

    def test_cantor_holder(self):
        v = classify_membership(cantor_cdf(standard_cantor_spec(3.0)))
        assert v.verdict == MEMBER_CERTIFIED
        assert v.rule == "Holder"
        assert v.witness["energy_bound"] == pytest.approx(2.92217336317331, rel=1e-9)

    def test_staircase_series_divergence(self):
        v = classify_membership(l1_divergent_blocks(50))
        assert v.verdict == DIVERGENCE_CERTIFIED
        assert v.rule == "LowerBoundSeries"
        assert v.witness["partial_sum"] == pytest.approx(50.0, abs=1e-9)
        assert v.witness["n_blocks"] == 50

    def test_atom_table_energy_divergence(self):
        v = classify_membership(table_cdf([0.0, 0.5, 1.0], [0.2, 0.7, 1.0]))
        assert v.verdict == DIVERGENCE_CERTIFIED
        assert v.rule == "EnergyDirect"
        assert v.witness["lower"] == math.inf

    def test_thin_family_log_modulus(self):
        v = classify_membership(cantor_cdf(general_ratio_spec(2.0)))
        assert v.verdict == MEMBER_CERTIFIED
        assert v.rule == "LogModulus"
        assert v.witness["beta"] == pytest.approx(1.5)
        assert v.witness["worst_ratio"] == pytest.approx(0.8656243220792096, rel=1e-9)

    def test_power_profiles(self):
        assert classify_membership(power_law_profile(1.0, 0.25, 1.0).G).rule == "Holder"
        assert classify_membership(power_law_profile(1.0, 1.0, 1.0).G).rule == "Lipschitz"

    def test_zero_mass_trivially_member(self):
        v = classify_membership(uniform_cdf(0.0, 1.0, 0.0))
        assert v.verdict == MEMBER_CERTIFIED

    def test_as_dict(self):
        v = classify_membership(uniform_cdf(0.0, 1.0, 1.0))
        d = v.as_dict()
        assert d["verdict"] == MEMBER_CERTIFIED
        assert d["rule"] == "Lipschitz"
