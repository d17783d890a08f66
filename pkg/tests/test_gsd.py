import math

import pytest
from hypothesis import given, settings, strategies as st

from trial_resizer import (
    CombinationSpec,
    DilutionSpec,
    DomainError,
    GsdDesign,
    boundary_for_scheme,
    combination_statistic,
    conditional_error,
    conditional_power,
    gsd_power,
    integrate,
    obf_boundary,
    pocock_boundary,
    second_stage_statistic,
    spending_boundary,
    std_normal_cdf,
    std_normal_quantile,
    type_one_error,
)
from trial_resizer.gaussian import std_normal_pdf

from .conftest import PUBLISHED_TABLE

# Frozen root-finder outputs, cross-checked against the nested-quadrature
# bivariate oracle at build time.
POCOCK_C_HALF = 2.1782720943757345
OBF_C1_HALF = 2.796509681524148
OBF_C2_HALF = 1.9774309594595576
SPEND_C1_HALF = 2.241402727604947
SPEND_C2_HALF = 2.125118798666361


class TestBoundaries:
    def test_pocock_frozen(self):
        d = pocock_boundary(0.025, 0.5)
        assert d.c1 == d.c2
        assert d.c1 == pytest.approx(POCOCK_C_HALF, abs=1e-10)

    def test_obf_frozen(self):
        d = obf_boundary(0.025, 0.5)
        assert d.c1 == pytest.approx(OBF_C1_HALF, abs=1e-10)
        assert d.c2 == pytest.approx(OBF_C2_HALF, abs=1e-10)
        assert d.c1 == pytest.approx(d.c2 / math.sqrt(0.5), rel=1e-12)

    def test_spending_frozen(self):
        d = spending_boundary(0.025, 0.5, rho_spend=1.0)
        assert d.c1 == pytest.approx(SPEND_C1_HALF, abs=1e-10)
        assert d.c2 == pytest.approx(SPEND_C2_HALF, abs=1e-10)
        # First-look spend alpha * tau^1 exactly.
        assert std_normal_cdf(d.c1) == pytest.approx(1.0 - 0.0125, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.025, 0.05])
    @pytest.mark.parametrize("tau", [0.1, 0.3, 0.5, 0.7, 0.9])
    @pytest.mark.parametrize(
        "scheme,rho_spend",
        [("pocock", None), ("obrien_fleming", None), ("kim_demets_spending", 2.0)],
    )
    def test_calibration_fixed_point(self, scheme, rho_spend, alpha, tau):
        d = boundary_for_scheme(scheme, alpha, tau, rho_spend)
        assert type_one_error(d.c1, d.c2, tau) == pytest.approx(alpha, abs=1e-9)

    def test_boundaries_exceed_fixed_critical_value(self):
        z = std_normal_quantile(0.975)
        for tau in (0.3, 0.5, 0.8):
            p = pocock_boundary(0.025, tau)
            o = obf_boundary(0.025, tau)
            assert p.c1 > z
            assert o.c1 > z
            # The OBF final boundary stays close to the fixed-design value.
            assert z < o.c2 < p.c2

    def test_spending_requires_rho(self):
        with pytest.raises(DomainError):
            boundary_for_scheme("kim_demets_spending", 0.025, 0.5)

    def test_unknown_scheme(self):
        with pytest.raises(DomainError):
            boundary_for_scheme("haybittle", 0.025, 0.5)

    def test_invalid_tau(self):
        with pytest.raises(DomainError):
            pocock_boundary(0.025, 1.0)


class TestGsdPower:
    @pytest.mark.parametrize("power_planned", [0.8, 0.9])
    @pytest.mark.parametrize("eta", [0.0, 0.1])
    def test_matches_published_table(self, power_planned, eta):
        dilution = DilutionSpec(eta=eta, psi=1.0)
        for tau, row in PUBLISHED_TABLE[(power_planned, eta)].items():
            _, p_s1, p_all, o_s1, o_all = row
            p = gsd_power(pocock_boundary(0.025, tau), 0.025, power_planned, tau, dilution)
            o = gsd_power(obf_boundary(0.025, tau), 0.025, power_planned, tau, dilution)
            assert p.stage1 == pytest.approx(p_s1, abs=1e-3)
            assert p.overall == pytest.approx(p_all, abs=1e-3)
            assert o.stage1 == pytest.approx(o_s1, abs=1e-3)
            assert o.overall == pytest.approx(o_all, abs=1e-3)

    def test_stage1_invariant_to_dilution(self):
        d = pocock_boundary(0.025, 0.6)
        base = gsd_power(d, 0.025, 0.9, 0.6)
        diluted = gsd_power(d, 0.025, 0.9, 0.6, DilutionSpec(eta=0.4, psi=1.5))
        assert diluted.stage1 == base.stage1
        assert diluted.overall < base.overall

    def test_overall_at_least_stage1(self):
        for tau in (0.3, 0.5, 0.8):
            for eta in (0.0, 0.2, 0.5):
                p = gsd_power(
                    pocock_boundary(0.025, tau), 0.025, 0.9, tau, DilutionSpec(eta=eta)
                )
                assert p.overall >= p.stage1

    def test_mismatched_tau_rejected(self):
        d = pocock_boundary(0.025, 0.5)
        with pytest.raises(DomainError):
            gsd_power(d, 0.025, 0.9, 0.6)

    def test_variance_inflation_lowers_power(self):
        d = obf_boundary(0.025, 0.5)
        base = gsd_power(d, 0.025, 0.9, 0.5, DilutionSpec(psi=1.0)).overall
        inflated = gsd_power(d, 0.025, 0.9, 0.5, DilutionSpec(psi=1.5)).overall
        assert inflated < base


class TestConditionalError:
    @pytest.mark.parametrize("scheme", ["pocock", "obrien_fleming"])
    @pytest.mark.parametrize("tau", [0.3, 0.5, 0.8])
    def test_integrates_to_alpha(self, scheme, tau):
        d = boundary_for_scheme(scheme, 0.025, tau)
        total = integrate(
            lambda z: conditional_error(z, d) * std_normal_pdf(z), -9.0, 9.0, tol=1e-9
        )
        assert total == pytest.approx(0.025, abs=1e-7)

    def test_one_past_boundary(self):
        d = pocock_boundary(0.025, 0.5)
        assert conditional_error(d.c1, d) == 1.0
        assert conditional_error(d.c1 + 2.0, d) == 1.0

    def test_monotone_in_z1(self):
        d = obf_boundary(0.025, 0.5)
        zs = [-3 + 0.1 * i for i in range(60)]
        vals = [conditional_error(z, d) for z in zs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_no_stage_two(self):
        d = GsdDesign(scheme="pocock", tau=1.0, alpha=0.025, c1=2.0, c2=2.0)
        with pytest.raises(DomainError):
            conditional_error(0.5, d)


class TestConditionalPower:
    def test_zero_drift_is_conditional_error(self):
        d = pocock_boundary(0.025, 0.5)
        for z1 in (-1.0, 0.0, 1.5):
            assert conditional_power(z1, d, 0.0) == pytest.approx(
                conditional_error(z1, d), abs=1e-14
            )

    def test_increasing_in_drift(self):
        d = obf_boundary(0.025, 0.5)
        vals = [conditional_power(1.0, d, drift) for drift in (0.0, 1.0, 2.0, 4.0)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_boundary_hit(self):
        d = pocock_boundary(0.025, 0.5)
        assert conditional_power(d.c1 + 0.1, d, 0.0) == 1.0


class TestCombination:
    @given(st.floats(-4, 4), st.floats(-4, 4), st.floats(0.05, 0.95))
    def test_weights_sum_preserves_variance(self, z1, z2, w):
        stat = combination_statistic(z1, z2, CombinationSpec(w=w))
        assert stat == pytest.approx(
            math.sqrt(w) * z1 + math.sqrt(1 - w) * z2, abs=1e-12
        )

    @given(st.floats(-4, 4), st.floats(-4, 4), st.sampled_from([0.3, 0.5, 0.8]))
    def test_second_stage_roundtrip(self, z_tau, z2, tau):
        # Rebuilding z from (z_tau, z2) and decomposing again must return z2.
        z = math.sqrt(tau) * z_tau + math.sqrt(1 - tau) * z2
        assert second_stage_statistic(z, z_tau, tau) == pytest.approx(z2, abs=1e-10)

    @settings(max_examples=30)
    @given(st.sampled_from([0.3, 0.5, 0.8]))
    def test_combination_with_planned_weight_matches_pooled(self, tau):
        # With w = tau the combination statistic equals the pooled statistic
        # when there is no dilution.
        spec = CombinationSpec(w=tau)
        z_tau, z2 = 0.7, -0.2
        z = math.sqrt(tau) * z_tau + math.sqrt(1 - tau) * z2
        assert combination_statistic(z_tau, z2, spec) == pytest.approx(z, abs=1e-12)

    def test_invalid_weight(self):
        with pytest.raises(DomainError):
            CombinationSpec(w=1.5)
