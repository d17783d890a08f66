import math

import pytest
from hypothesis import given, settings, strategies as st

from trial_resizer import (
    DilutionSpec,
    DomainError,
    InfeasibleError,
    adjusted_stage2_n,
    adjusted_stage2_n_gsd,
    boundary_for_scheme,
    fixed_power_diluted,
    gsd_power,
    xi_roots,
)
from trial_resizer.errors import DegenerateQuadraticError

ALPHA = 0.025
POWER = 0.9

taus = st.sampled_from([0.3, 0.5, 0.8])
etas = st.sampled_from([0.0, 0.1, 0.3])
psis = st.sampled_from([0.8, 1.0, 1.25])


class TestXiRoots:
    def test_frozen_reference(self):
        roots = xi_roots(0.5, DilutionSpec(eta=0.1, psi=1.0))
        assert roots.root_minus == pytest.approx(0.4461486186258297, abs=1e-12)
        assert roots.root_plus == pytest.approx(181.55385138137402, rel=1e-12)
        assert roots.discriminant == pytest.approx(0.82, abs=1e-12)

    @given(taus, etas, st.sampled_from([0.8, 1.25]))
    def test_vieta(self, tau, eta, psi):
        a = tau * eta**2 - 1.0 + psi
        b = 2.0 * tau * eta * (1.0 - eta) - psi
        c = tau * (1.0 - eta) ** 2
        roots = xi_roots(tau, DilutionSpec(eta=eta, psi=psi))
        assert roots.root_minus + roots.root_plus == pytest.approx(-b / a, rel=1e-9)
        assert roots.root_minus * roots.root_plus == pytest.approx(c / a, rel=1e-9)

    @given(taus, etas, st.sampled_from([0.8, 1.25]))
    def test_discriminant_identity(self, tau, eta, psi):
        # b^2 - 4ac simplifies to psi^2 - 4*tau*(1-eta)*(eta + psi - 1).
        roots = xi_roots(tau, DilutionSpec(eta=eta, psi=psi))
        closed_form = psi**2 - 4.0 * tau * (1.0 - eta) * (eta + psi - 1.0)
        assert roots.discriminant == pytest.approx(closed_form, rel=1e-9)

    def test_degenerate_leading_coefficient(self):
        with pytest.raises(DegenerateQuadraticError):
            xi_roots(0.5, DilutionSpec(eta=0.0, psi=1.0))

    def test_invalid_tau(self):
        with pytest.raises(DomainError):
            xi_roots(1.0, DilutionSpec(eta=0.1))


class TestAdjustedStage2N:
    def test_frozen_reference(self):
        result = adjusted_stage2_n(100.0, 0.5, DilutionSpec(eta=0.1), ALPHA, POWER)
        assert result.xi == pytest.approx(0.4461486186258297, abs=1e-12)
        assert result.n1_continuous == pytest.approx(62.07027863047889, abs=1e-8)
        assert result.n1_ceiling == 63
        assert result.branch == "quadratic_root"

    def test_degenerate_case_exact(self):
        for tau in (0.3, 0.5, 0.8):
            result = adjusted_stage2_n(100.0, tau, DilutionSpec(), ALPHA, POWER)
            assert result.branch == "degenerate_linear"
            assert result.n1_continuous == 100.0 * (1.0 - tau)
            assert result.xi == pytest.approx(tau, abs=1e-14)

    @settings(max_examples=60, deadline=None)
    @given(taus, etas, psis)
    def test_power_fixed_point(self, tau, eta, psi):
        # Plugging the returned continuous n1 back into the power formula
        # must reproduce the planned power.
        result = adjusted_stage2_n(
            100.0, tau, DilutionSpec(eta=eta, psi=psi), ALPHA, POWER
        )
        assert result.achieved_power == pytest.approx(POWER, abs=1e-9)

    @given(taus, st.sampled_from([0.1, 0.3]), psis)
    def test_more_dilution_needs_more_patients(self, tau, eta, psi):
        spec = DilutionSpec(eta=eta, psi=psi)
        worse = DilutionSpec(eta=eta + 0.1, psi=psi)
        base = adjusted_stage2_n(100.0, tau, spec, ALPHA, POWER)
        diluted = adjusted_stage2_n(100.0, tau, worse, ALPHA, POWER)
        assert diluted.n1_continuous > base.n1_continuous

    def test_full_effect_loss_infeasible(self):
        with pytest.raises(InfeasibleError):
            adjusted_stage2_n(100.0, 0.5, DilutionSpec(eta=1.0), ALPHA, POWER)

    def test_undiluted_resize_restores_power_exactly(self):
        result = adjusted_stage2_n(100.0, 0.4, DilutionSpec(), ALPHA, POWER)
        assert fixed_power_diluted(
            ALPHA, POWER, 0.4, DilutionSpec()
        ) == pytest.approx(result.achieved_power, abs=1e-12)


class TestAdjustedStage2NGsd:
    @pytest.mark.parametrize("scheme", ["pocock", "obrien_fleming"])
    @pytest.mark.parametrize("tau", [0.3, 0.5, 0.8])
    def test_no_dilution_small_topup(self, scheme, tau):
        # The interim look costs some power, so even without dilution the
        # stage-2 enrollment slightly exceeds the originally planned N*(1-tau)
        # remainder (or is zero when the design is already overpowered).
        design = boundary_for_scheme(scheme, ALPHA, tau)
        result = adjusted_stage2_n_gsd(design, 100.0, tau, DilutionSpec(), ALPHA, POWER)
        planned_remainder = 100.0 * (1.0 - tau)
        overall_at_plan = gsd_power(design, ALPHA, POWER, tau).overall
        if overall_at_plan >= POWER:
            assert result.n1_continuous <= planned_remainder
        else:
            assert result.n1_continuous > planned_remainder
        assert result.achieved_power == pytest.approx(POWER, abs=1e-6)

    def test_dilution_inflates_stage2(self):
        design = boundary_for_scheme("pocock", ALPHA, 0.5)
        base = adjusted_stage2_n_gsd(design, 100.0, 0.5, DilutionSpec(), ALPHA, POWER)
        diluted = adjusted_stage2_n_gsd(
            design, 100.0, 0.5, DilutionSpec(eta=0.2, psi=1.2), ALPHA, POWER
        )
        assert diluted.n1_continuous > base.n1_continuous
        assert diluted.achieved_power == pytest.approx(POWER, abs=1e-6)

    def test_boundaries_not_recomputed(self):
        design = boundary_for_scheme("obrien_fleming", ALPHA, 0.5)
        result = adjusted_stage2_n_gsd(
            design, 100.0, 0.5, DilutionSpec(eta=0.3), ALPHA, POWER
        )
        assert result.branch == "gsd_search"
        # The search changes only n1; a fresh boundary pair at the implied
        # information fraction would differ.
        implied_tau = result.xi
        fresh = boundary_for_scheme("obrien_fleming", ALPHA, implied_tau)
        assert fresh.c1 != design.c1

    def test_severe_dilution_infeasible(self):
        design = boundary_for_scheme("pocock", ALPHA, 0.5)
        with pytest.raises(InfeasibleError):
            adjusted_stage2_n_gsd(
                design, 100.0, 0.5, DilutionSpec(eta=0.99), ALPHA, POWER, cap_factor=5.0
            )

    def test_mismatched_tau_rejected(self):
        design = boundary_for_scheme("pocock", ALPHA, 0.5)
        with pytest.raises(DomainError):
            adjusted_stage2_n_gsd(design, 100.0, 0.6, DilutionSpec(), ALPHA, POWER)
