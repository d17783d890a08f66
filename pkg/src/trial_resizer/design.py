"""Fixed-design sample size and power for a two-arm superiority trial.

All formulas assume a normally distributed endpoint, one-sided testing, and
allocation ratio 1:r for control versus treatment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, check_fraction, check_positive, check_probability
from .gaussian import std_normal_cdf, std_normal_quantile

__all__ = [
    "DesignParams",
    "SampleSize",
    "required_sample_size",
    "power_given_n",
    "power_at_fraction",
]


@dataclass(frozen=True)
class DesignParams:
    """Planning inputs for a two-arm superiority trial.

    alpha: one-sided significance level.
    beta_planned: planned type-II error (planned power is 1 - beta_planned).
    delta: mean difference under the alternative, in outcome units.
    sigma: common outcome SD for both arms.
    r: allocation ratio, 1:r for control versus treatment.
    """

    alpha: float
    beta_planned: float
    delta: float
    sigma: float
    r: float = 1.0

    def __post_init__(self):
        a = float(self.alpha)
        b = float(self.beta_planned)
        if not (math.isfinite(a) and 0.0 < a < 0.5):
            raise DomainError(f"alpha must lie in (0, 0.5), got {a}", parameter="alpha")
        if not (math.isfinite(b) and 0.0 < b < 0.5):
            raise DomainError(
                f"beta_planned must lie in (0, 0.5), got {b}", parameter="beta_planned"
            )
        check_positive("sigma", self.sigma)
        check_positive("r", self.r)
        if not math.isfinite(float(self.delta)):
            raise DomainError(f"delta must be finite, got {self.delta}", parameter="delta")

    @property
    def power_planned(self) -> float:
        return 1.0 - self.beta_planned

    @property
    def allocation_factor(self) -> float:
        """sqrt(r / (r+1)^2), the per-patient scaling of the noncentrality."""
        return math.sqrt(self.r / (self.r + 1.0) ** 2)


@dataclass(frozen=True)
class SampleSize:
    """Total and per-arm sample sizes, continuous and integer (ceiling per arm)."""

    total: int
    per_arm_control: int
    per_arm_treatment: int
    continuous_total: float
    continuous_control: float
    continuous_treatment: float


def required_sample_size(params: DesignParams) -> SampleSize:
    """Total sample size achieving the planned power for the given effect.

    The continuous solution is kept alongside the integer allocation (per-arm
    ceiling) because downstream fraction-based identities are exact only in
    the continuous parameterization.
    """
    if params.delta <= 0.0:
        raise DomainError(
            "delta must be positive for sample sizing (delta=0 needs infinite N)",
            parameter="delta",
        )
    z_a = std_normal_quantile(1.0 - params.alpha)
    z_b = std_normal_quantile(1.0 - params.beta_planned)
    r = params.r
    n_cont = (z_a + z_b) ** 2 * (params.sigma / params.delta) ** 2 * (r + 1.0) ** 2 / r
    n_control = n_cont / (r + 1.0)
    n_treat = r * n_cont / (r + 1.0)
    per_c = math.ceil(n_control - 1e-12)
    per_t = math.ceil(n_treat - 1e-12)
    return SampleSize(
        total=per_c + per_t,
        per_arm_control=per_c,
        per_arm_treatment=per_t,
        continuous_total=n_cont,
        continuous_control=n_control,
        continuous_treatment=n_treat,
    )


def power_given_n(n: float, params: DesignParams) -> float:
    """Power of a single analysis performed with n patients in total."""
    n = float(n)
    if not (math.isfinite(n) and n >= 2):
        raise DomainError(f"n must be >= 2, got {n}", parameter="n")
    z_a = std_normal_quantile(1.0 - params.alpha)
    drift = (params.delta / params.sigma) * params.allocation_factor * math.sqrt(n)
    return std_normal_cdf(drift - z_a)


def power_at_fraction(alpha: float, power_planned: float, tau: float) -> float:
    """Power of an early analysis with a fraction tau of the planned patients.

    Depends only on (alpha, planned power, tau) -- not on the allocation
    ratio, effect size, or SD.
    """
    alpha = check_probability("alpha", alpha, open_interval=True)
    power_planned = check_probability("power_planned", power_planned, open_interval=True)
    tau = check_fraction("tau", tau)
    z_a = std_normal_quantile(1.0 - alpha)
    z_b = std_normal_quantile(power_planned)
    sqrt_tau = math.sqrt(tau)
    return std_normal_cdf(z_b * sqrt_tau - z_a * (1.0 - sqrt_tau))
