"""Joint laws of the pre-disruption, post-disruption, and pooled test statistics.

A disruption partway through recruitment can dilute the treatment effect
(post-disruption mean difference (1-eta)*delta) and inflate the outcome
variance (factor psi). This module gives the exact trivariate normal law of
(t0, t1, t) -- the statistics from pre-disruption patients only,
post-disruption patients only, and all patients pooled -- plus the power of
a single pooled analysis under dilution.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .design import DesignParams
from .errors import DomainError, check_fraction, check_positive, check_probability
from .gaussian import std_normal_cdf, std_normal_quantile

__all__ = [
    "DilutionSpec",
    "RelativeChange",
    "AbsoluteChange",
    "GeneralDilutionSpec",
    "JointLaw",
    "joint_law",
    "joint_law_general",
    "convert_mean_change",
    "fixed_power_diluted",
]


@dataclass(frozen=True)
class DilutionSpec:
    """Common-variance dilution: post-disruption effect (1-eta)*delta, variance psi*sigma^2.

    eta may be negative (post-disruption effect larger than planned); values
    above 1 reverse the effect direction and trigger a warning but are kept.
    """

    eta: float = 0.0
    psi: float = 1.0

    def __post_init__(self):
        if not math.isfinite(float(self.eta)):
            raise DomainError(f"eta must be finite, got {self.eta}", parameter="eta")
        check_positive("psi", self.psi)
        if self.eta > 1.0:
            warnings.warn(
                f"eta={self.eta} > 1 reverses the post-disruption effect direction",
                stacklevel=3,
            )


@dataclass(frozen=True)
class RelativeChange:
    """Post-disruption arm mean mu1 = (1 - eta_arm) * mu0."""

    eta_arm: float


@dataclass(frozen=True)
class AbsoluteChange:
    """Post-disruption arm mean mu1 = mu0 - epsilon_arm."""

    epsilon_arm: float


@dataclass(frozen=True)
class GeneralDilutionSpec:
    """Per-arm means, SDs, mean changes, and variance factors around the disruption."""

    mu_c0: float
    mu_t0: float
    sigma_c0: float
    sigma_t0: float
    change_c: RelativeChange | AbsoluteChange
    change_t: RelativeChange | AbsoluteChange
    psi_c: float = 1.0
    psi_t: float = 1.0

    def __post_init__(self):
        check_positive("sigma_c0", self.sigma_c0)
        check_positive("sigma_t0", self.sigma_t0)
        check_positive("psi_c", self.psi_c)
        check_positive("psi_t", self.psi_t)

    @property
    def mu_c1(self) -> float:
        return _post_mean(self.change_c, self.mu_c0)

    @property
    def mu_t1(self) -> float:
        return _post_mean(self.change_t, self.mu_t0)


def _post_mean(change: RelativeChange | AbsoluteChange, mu0: float) -> float:
    if isinstance(change, RelativeChange):
        return (1.0 - change.eta_arm) * mu0
    if isinstance(change, AbsoluteChange):
        return mu0 - change.epsilon_arm
    raise DomainError(f"unknown mean-change kind: {change!r}", parameter="change")


def convert_mean_change(
    change: RelativeChange | AbsoluteChange, mu0: float
) -> tuple[float, float]:
    """Return (eta_arm, epsilon_arm) for a mean change relative to mu0.

    The two parameterizations are interchangeable via epsilon = eta * mu0;
    an absolute change cannot be expressed relatively when mu0 = 0.
    """
    mu0 = float(mu0)
    if isinstance(change, RelativeChange):
        return change.eta_arm, change.eta_arm * mu0
    if isinstance(change, AbsoluteChange):
        if mu0 == 0.0:
            raise DomainError(
                "relative change undefined for mu0 = 0", parameter="mu0"
            )
        return change.epsilon_arm / mu0, change.epsilon_arm
    raise DomainError(f"unknown mean-change kind: {change!r}", parameter="change")


@dataclass(frozen=True)
class JointLaw:
    """Mean vector and correlation matrix of (t0, t1, t)."""

    mean: np.ndarray
    corr: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mean", np.asarray(self.mean, dtype=float))
        object.__setattr__(self, "corr", np.asarray(self.corr, dtype=float))
        if self.mean.shape != (3,) or self.corr.shape != (3, 3):
            raise DomainError("JointLaw requires a 3-vector mean and 3x3 correlation")


def _joint_from_moments(
    n_c0: float, n_t0: float, n_c1: float, n_t1: float,
    mu_c0: float, mu_t0: float, mu_c1: float, mu_t1: float,
    var_c0: float, var_t0: float, var_c1: float, var_t1: float,
) -> JointLaw:
    """Exact joint law of (t0, t1, t) from per-cohort, per-arm moments.

    t0 and t1 are the two-sample z statistics of the pre- and post-disruption
    cohorts; t pools the cohorts within each arm. Each statistic uses the true
    variances, so margins are standard normal and t0, t1 are independent.
    """
    sd0 = math.sqrt(var_t0 / n_t0 + var_c0 / n_c0)
    sd1 = math.sqrt(var_t1 / n_t1 + var_c1 / n_c1)
    n_t, n_c = n_t0 + n_t1, n_c0 + n_c1
    var_pooled = (n_t0 * var_t0 + n_t1 * var_t1) / n_t**2 + (
        n_c0 * var_c0 + n_c1 * var_c1
    ) / n_c**2
    sd_pooled = math.sqrt(var_pooled)
    mean = np.array(
        [
            (mu_t0 - mu_c0) / sd0,
            (mu_t1 - mu_c1) / sd1,
            ((n_t0 * mu_t0 + n_t1 * mu_t1) / n_t - (n_c0 * mu_c0 + n_c1 * mu_c1) / n_c)
            / sd_pooled,
        ]
    )
    cov_t0_t = var_t0 / n_t + var_c0 / n_c
    cov_t1_t = var_t1 / n_t + var_c1 / n_c
    corr = np.array(
        [
            [1.0, 0.0, cov_t0_t / (sd0 * sd_pooled)],
            [0.0, 1.0, cov_t1_t / (sd1 * sd_pooled)],
            [cov_t0_t / (sd0 * sd_pooled), cov_t1_t / (sd1 * sd_pooled), 1.0],
        ]
    )
    return JointLaw(mean=mean, corr=corr)


def joint_law(
    N: float, tau: float, params: DesignParams, dilution: DilutionSpec
) -> JointLaw:
    """Joint law of (t0, t1, t) under common-variance dilution.

    N is continuous throughout; integer rounding belongs to the design module
    so the analytic identities here hold exactly.
    """
    check_positive("N", N)
    tau = check_fraction("tau", tau, include_one=False)
    eta, psi = dilution.eta, dilution.psi
    base = math.sqrt(N * params.r / (params.r + 1.0) ** 2) * params.delta / params.sigma
    denom = math.sqrt(tau + (1.0 - tau) * psi)
    mean = np.array(
        [
            base * math.sqrt(tau),
            base * math.sqrt(1.0 - tau) * (1.0 - eta) / math.sqrt(psi),
            base * (tau + (1.0 - tau) * (1.0 - eta)) / denom,
        ]
    )
    rho_0 = math.sqrt(tau) / denom
    rho_1 = math.sqrt((1.0 - tau) * psi) / denom
    corr = np.array([[1.0, 0.0, rho_0], [0.0, 1.0, rho_1], [rho_0, rho_1, 1.0]])
    return JointLaw(mean=mean, corr=corr)


def joint_law_general(
    N: float, tau: float, r: float, spec: GeneralDilutionSpec
) -> JointLaw:
    """Joint law of (t0, t1, t) with per-arm means, SDs, and variance factors.

    Cohort sizes split the 1:r allocation proportionally within each cohort:
    n_c0 = N*tau/(r+1), n_t0 = r*N*tau/(r+1), and analogously for the
    post-disruption cohort. Reduces to joint_law on the equal-variance
    subfamily.
    """
    check_positive("N", N)
    tau = check_fraction("tau", tau, include_one=False)
    check_positive("r", r)
    n_c0 = N * tau / (r + 1.0)
    n_t0 = r * N * tau / (r + 1.0)
    n_c1 = N * (1.0 - tau) / (r + 1.0)
    n_t1 = r * N * (1.0 - tau) / (r + 1.0)
    return _joint_from_moments(
        n_c0, n_t0, n_c1, n_t1,
        spec.mu_c0, spec.mu_t0, spec.mu_c1, spec.mu_t1,
        spec.sigma_c0**2, spec.sigma_t0**2,
        spec.psi_c * spec.sigma_c0**2, spec.psi_t * spec.sigma_t0**2,
    )


def diluted_drift(alpha: float, power_planned: float, tau: float, dilution: DilutionSpec) -> float:
    """Mean of the pooled statistic t when N is the planned continuous size."""
    alpha = check_probability("alpha", alpha, open_interval=True)
    power_planned = check_probability("power_planned", power_planned, open_interval=True)
    tau = check_fraction("tau", tau)
    k = std_normal_quantile(1.0 - alpha) + std_normal_quantile(power_planned)
    return (
        k
        * (tau + (1.0 - tau) * (1.0 - dilution.eta))
        / math.sqrt(tau + (1.0 - tau) * dilution.psi)
    )


def fixed_power_diluted(
    alpha: float, power_planned: float, tau: float, dilution: DilutionSpec
) -> float:
    """Power of a single full-N analysis when post-disruption data is diluted."""
    z_a = std_normal_quantile(1.0 - check_probability("alpha", alpha, open_interval=True))
    return std_normal_cdf(diluted_drift(alpha, power_planned, tau, dilution) - z_a)
