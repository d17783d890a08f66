import math

import numpy as np
import pytest

from trial_resizer import (
    DesignParams,
    DilutionSpec,
    DomainError,
    GeneralDilutionSpec,
    McConfig,
    RelativeChange,
    joint_law_general,
    mc_two_cohort_power,
    pocock_boundary,
    simulate_joint_statistics,
)

REPS = 200_000


def params(delta=0.5, alpha=0.025, beta=0.1):
    return DesignParams(alpha=alpha, beta_planned=beta, delta=delta, sigma=1.0, r=1.0)


def general_spec(eta=0.1, psi=1.2):
    return GeneralDilutionSpec(
        mu_c0=0.0,
        mu_t0=0.5,
        sigma_c0=1.0,
        sigma_t0=1.0,
        change_c=RelativeChange(0.0),
        change_t=RelativeChange(eta),
        psi_c=psi,
        psi_t=psi,
    )


class TestDeterminism:
    def test_same_seed_same_stream(self):
        cfg = McConfig(replications=5_000, seed=42)
        a = simulate_joint_statistics(80.0, 0.5, 1.0, general_spec(), cfg)
        b = simulate_joint_statistics(80.0, 0.5, 1.0, general_spec(), cfg)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_different_seed_different_stream(self):
        a = simulate_joint_statistics(
            80.0, 0.5, 1.0, general_spec(), McConfig(replications=5_000, seed=1)
        )
        b = simulate_joint_statistics(
            80.0, 0.5, 1.0, general_spec(), McConfig(replications=5_000, seed=2)
        )
        assert not np.array_equal(a[0], b[0])

    def test_chunking_invisible(self):
        # A replication count spanning several chunks must agree with the
        # prefix of a longer run under the same seed.
        short = simulate_joint_statistics(
            80.0, 0.5, 1.0, general_spec(), McConfig(replications=250_000, seed=9)
        )
        longer = simulate_joint_statistics(
            80.0, 0.5, 1.0, general_spec(), McConfig(replications=300_000, seed=9)
        )
        for x, y in zip(short, longer):
            assert np.array_equal(x, y[:250_000])


class TestAgainstJointLaw:
    @pytest.mark.parametrize("tau", [0.3, 0.7])
    @pytest.mark.parametrize("r", [1.0, 2.0])
    def test_sample_moments_match_law(self, tau, r):
        spec = general_spec(eta=0.2, psi=1.3)
        N = 120.0
        cfg = McConfig(replications=REPS, seed=7)
        t0, t1, t = simulate_joint_statistics(N, tau, r, spec, cfg)
        law = joint_law_general(N, tau, r, spec)
        draws = np.stack([t0, t1, t])
        tol = 4.0 / math.sqrt(REPS)
        assert np.allclose(draws.mean(axis=1), law.mean, atol=4 * tol)
        assert np.allclose(np.corrcoef(draws), law.corr, atol=5 * tol)

    def test_t0_t1_empirically_uncorrelated(self):
        t0, t1, _ = simulate_joint_statistics(
            100.0, 0.5, 1.0, general_spec(), McConfig(replications=REPS, seed=3)
        )
        assert abs(np.corrcoef(t0, t1)[0, 1]) < 4.0 / math.sqrt(REPS)


class TestMcPower:
    def test_fixed_full_matches_planned_power(self):
        result = mc_two_cohort_power(
            params(), 0.5, DilutionSpec(), "fixed-full", McConfig(replications=REPS)
        )
        assert abs(result.overall - 0.9) < 3.0 * result.se_overall + 1e-4

    def test_gsd_matches_analytic(self):
        from trial_resizer import gsd_power

        design = pocock_boundary(0.025, 0.5)
        analytic = gsd_power(design, 0.025, 0.9, 0.5, DilutionSpec(eta=0.1))
        result = mc_two_cohort_power(
            params(), 0.5, DilutionSpec(eta=0.1), design, McConfig(replications=REPS)
        )
        assert abs(result.stage1 - analytic.stage1) < 3.0 * result.se_stage1 + 1e-4
        assert abs(result.overall - analytic.overall) < 3.0 * result.se_overall + 1e-4

    def test_null_rejection_rate_is_alpha(self):
        design = pocock_boundary(0.025, 0.5)
        result = mc_two_cohort_power(
            params(delta=0.0), 0.5, DilutionSpec(), design, McConfig(replications=REPS)
        )
        assert abs(result.overall - 0.025) < 3.0 * result.se_overall + 1e-4

    def test_counts_consistent(self):
        result = mc_two_cohort_power(
            params(), 0.5, DilutionSpec(), "fixed-early", McConfig(replications=20_000)
        )
        assert result.reject_overall == result.reject_stage1
        assert result.stage1 == result.reject_stage1 / result.replications
        assert result.warning is None

    def test_small_run_warns(self):
        result = mc_two_cohort_power(
            params(), 0.5, DilutionSpec(), "fixed-full", McConfig(replications=500)
        )
        assert result.warning is not None

    def test_unknown_design_string(self):
        with pytest.raises(DomainError):
            mc_two_cohort_power(
                params(), 0.5, DilutionSpec(), "fixed", McConfig(replications=100)
            )

    def test_bad_config(self):
        with pytest.raises(DomainError):
            McConfig(replications=0)
        with pytest.raises(DomainError):
            McConfig(seed=-1)
