"""Seeded Monte-Carlo oracle for the analytic power and joint-law formulas.

Simulation happens at the sufficient-statistic level: each replication draws
the four cohort-by-arm sample means from their exact normal laws and forms
the z statistics t0 (pre-disruption patients), t1 (post-disruption), and t
(pooled) with the true variances. Replications are split into fixed-size
chunks, each driven by its own SeedSequence child, so results are
bit-identical for a given seed regardless of how chunks are executed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .design import DesignParams, required_sample_size
from .dilution import AbsoluteChange, DilutionSpec, GeneralDilutionSpec, RelativeChange
from .errors import DomainError, check_fraction
from .gaussian import std_normal_quantile
from .gsd import GsdDesign

__all__ = ["McConfig", "McPowerResult", "mc_two_cohort_power", "simulate_joint_statistics"]

_CHUNK = 250_000
_MIN_REPLICATIONS_CLEAN = 10_000


@dataclass(frozen=True)
class McConfig:
    """Replication count and seed; identical seeds give identical streams."""

    replications: int = 1_000_000
    seed: int = 20200525

    def __post_init__(self):
        if int(self.replications) < 1:
            raise DomainError(
                f"replications must be >= 1, got {self.replications}",
                parameter="replications",
            )
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(
                f"seed must fit in 64 unsigned bits, got {self.seed}", parameter="seed"
            )


@dataclass(frozen=True)
class McPowerResult:
    stage1: float
    overall: float
    reject_stage1: int
    reject_overall: int
    replications: int
    se_stage1: float
    se_overall: float
    warning: str | None = None


def simulate_joint_statistics(
    N: float, tau: float, r: float, spec: GeneralDilutionSpec, config: McConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw (t0, t1, t) samples for the general per-arm dilution setting."""
    tau = check_fraction("tau", tau, include_one=False)
    n_c0 = N * tau / (r + 1.0)
    n_t0 = r * N * tau / (r + 1.0)
    n_c1 = N * (1.0 - tau) / (r + 1.0)
    n_t1 = r * N * (1.0 - tau) / (r + 1.0)
    sizes = (n_c0, n_t0, n_c1, n_t1)
    mus = (spec.mu_c0, spec.mu_t0, spec.mu_c1, spec.mu_t1)
    variances = (
        spec.sigma_c0**2,
        spec.sigma_t0**2,
        spec.psi_c * spec.sigma_c0**2,
        spec.psi_t * spec.sigma_t0**2,
    )

    reps = int(config.replications)
    n_chunks = (reps + _CHUNK - 1) // _CHUNK
    children = np.random.SeedSequence(config.seed).spawn(n_chunks)
    means = [np.empty(reps) for _ in range(4)]
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        lo, hi = i * _CHUNK, min((i + 1) * _CHUNK, reps)
        for j in range(4):
            scale = math.sqrt(variances[j] / sizes[j])
            means[j][lo:hi] = mus[j] + scale * rng.standard_normal(hi - lo)
    xbar_c0, xbar_t0, xbar_c1, xbar_t1 = means

    sd0 = math.sqrt(variances[1] / n_t0 + variances[0] / n_c0)
    sd1 = math.sqrt(variances[3] / n_t1 + variances[2] / n_c1)
    n_t, n_c = n_t0 + n_t1, n_c0 + n_c1
    sd_pooled = math.sqrt(
        (n_t0 * variances[1] + n_t1 * variances[3]) / n_t**2
        + (n_c0 * variances[0] + n_c1 * variances[2]) / n_c**2
    )
    t0 = (xbar_t0 - xbar_c0) / sd0
    t1 = (xbar_t1 - xbar_c1) / sd1
    t = (
        (n_t0 * xbar_t0 + n_t1 * xbar_t1) / n_t
        - (n_c0 * xbar_c0 + n_c1 * xbar_c1) / n_c
    ) / sd_pooled
    return t0, t1, t


def _simple_to_general(params: DesignParams, dilution: DilutionSpec) -> GeneralDilutionSpec:
    # Control mean pinned at 0; the dilution acts on the treatment mean.
    return GeneralDilutionSpec(
        mu_c0=0.0,
        mu_t0=params.delta,
        sigma_c0=params.sigma,
        sigma_t0=params.sigma,
        change_c=RelativeChange(0.0),
        change_t=AbsoluteChange(dilution.eta * params.delta),
        psi_c=dilution.psi,
        psi_t=dilution.psi,
    )


def mc_two_cohort_power(
    params: DesignParams,
    tau: float,
    dilution: DilutionSpec,
    design: GsdDesign | str,
    config: McConfig,
) -> McPowerResult:
    """Empirical stage-1 and overall rejection rates from simulated trials.

    design is either a calibrated GsdDesign, "fixed-early" (single analysis
    on the pre-disruption patients only), or "fixed-full" (single pooled
    analysis of all N patients).
    """
    tau = check_fraction("tau", tau, include_one=False)
    if params.delta > 0.0:
        N = required_sample_size(params).continuous_total
    else:
        # Under H0 the law of (t0, t1, t) does not depend on N.
        N = 100.0
    t0, _, t = simulate_joint_statistics(
        N, tau, params.r, _simple_to_general(params, dilution), config
    )

    if isinstance(design, GsdDesign):
        rej1 = t0 >= design.c1
        rej = rej1 | (t >= design.c2)
    elif design == "fixed-early":
        z_a = std_normal_quantile(1.0 - params.alpha)
        rej1 = rej = t0 >= z_a
    elif design == "fixed-full":
        z_a = std_normal_quantile(1.0 - params.alpha)
        rej1 = rej = t >= z_a
    else:
        raise DomainError(
            f"design must be a GsdDesign, 'fixed-early', or 'fixed-full', got {design!r}",
            parameter="design",
        )

    reps = int(config.replications)
    count1 = int(np.count_nonzero(rej1))
    count = int(np.count_nonzero(rej))
    p1, p = count1 / reps, count / reps
    warning = None
    if reps < _MIN_REPLICATIONS_CLEAN:
        warning = (
            f"only {reps} replications; Monte-Carlo SE may be too large for "
            "tight comparisons"
        )
    return McPowerResult(
        stage1=p1,
        overall=p,
        reject_stage1=count1,
        reject_overall=count,
        replications=reps,
        se_stage1=math.sqrt(max(p1 * (1.0 - p1), 1e-12) / reps),
        se_overall=math.sqrt(max(p * (1.0 - p), 1e-12) / reps),
        warning=warning,
    )
