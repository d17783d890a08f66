"""Two-look group-sequential boundaries, their power, and adaptive-test statistics.

Converting an interrupted fixed design into a two-look group-sequential
design keeps the planned total N but adds an interim look at information
fraction tau; the boundary pair (c1, c2) is calibrated so that the overall
one-sided type-I error stays at alpha. Efficacy boundaries only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.optimize

from .dilution import DilutionSpec
from .errors import (
    DomainError,
    NumericalError,
    check_fraction,
    check_positive,
    check_probability,
)
from .gaussian import bivariate_normal_cdf, std_normal_cdf, std_normal_quantile

__all__ = [
    "GsdDesign",
    "PowerBreakdown",
    "CombinationSpec",
    "pocock_boundary",
    "obf_boundary",
    "spending_boundary",
    "boundary_for_scheme",
    "type_one_error",
    "gsd_power",
    "conditional_error",
    "combination_statistic",
    "second_stage_statistic",
    "conditional_power",
]

_BRACKET = (0.0, 10.0)
_ROOT_XTOL = 1e-12


@dataclass(frozen=True)
class GsdDesign:
    """A calibrated two-look design: scheme, first-look fraction, boundary pair."""

    scheme: str
    tau: float
    alpha: float
    c1: float
    c2: float
    rho_spend: float | None = None


@dataclass(frozen=True)
class PowerBreakdown:
    """Stage-1 rejection probability and cumulative overall power."""

    stage1: float
    overall: float


@dataclass(frozen=True)
class CombinationSpec:
    """Pre-fixed weight w of the stage-1 statistic in the combination test."""

    w: float

    def __post_init__(self):
        check_probability("w", self.w)


def type_one_error(c1: float, c2: float, tau: float) -> float:
    """Overall one-sided rejection probability under H0 for boundaries (c1, c2)."""
    tau = check_fraction("tau", tau, include_one=False)
    return 1.0 - bivariate_normal_cdf(c1, c2, math.sqrt(tau))


def _solve_boundary(f, alpha: float) -> float:
    lo, hi = _BRACKET
    f_lo, f_hi = f(lo), f(hi)
    if f_lo * f_hi > 0.0:
        raise NumericalError(
            f"boundary root not bracketed on [{lo}, {hi}]: f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e}"
        )
    return float(scipy.optimize.brentq(f, lo, hi, xtol=_ROOT_XTOL))


def pocock_boundary(alpha: float, tau: float) -> GsdDesign:
    """Constant boundary c1 = c2 = c calibrated to overall level alpha."""
    alpha = check_probability("alpha", alpha, open_interval=True)
    tau = check_fraction("tau", tau, include_one=False)
    c = _solve_boundary(lambda c: type_one_error(c, c, tau) - alpha, alpha)
    return GsdDesign(scheme="pocock", tau=tau, alpha=alpha, c1=c, c2=c)


def obf_boundary(alpha: float, tau: float) -> GsdDesign:
    """O'Brien-Fleming-type boundary: c1 = c2 / sqrt(tau), stringent early."""
    alpha = check_probability("alpha", alpha, open_interval=True)
    tau = check_fraction("tau", tau, include_one=False)
    sqrt_tau = math.sqrt(tau)
    c = _solve_boundary(
        lambda c: type_one_error(c / sqrt_tau, c, tau) - alpha, alpha
    )
    return GsdDesign(scheme="obrien_fleming", tau=tau, alpha=alpha, c1=c / sqrt_tau, c2=c)


def spending_boundary(alpha: float, tau: float, rho_spend: float) -> GsdDesign:
    """Kim-DeMets power-family spending alpha(t) = alpha * t^rho_spend.

    c1 spends alpha * tau^rho_spend at the first look; c2 absorbs the rest so
    the overall level is exactly alpha.
    """
    alpha = check_probability("alpha", alpha, open_interval=True)
    tau = check_fraction("tau", tau, include_one=False)
    check_positive("rho_spend", rho_spend)
    spent = alpha * tau**rho_spend
    c1 = std_normal_quantile(1.0 - spent)
    c2 = _solve_boundary(lambda c: type_one_error(c1, c, tau) - alpha, alpha)
    return GsdDesign(
        scheme="kim_demets_spending", tau=tau, alpha=alpha, c1=c1, c2=c2,
        rho_spend=float(rho_spend),
    )


def boundary_for_scheme(
    scheme: str, alpha: float, tau: float, rho_spend: float | None = None
) -> GsdDesign:
    """Dispatch on the scheme name used by the CLI and service."""
    if scheme == "pocock":
        return pocock_boundary(alpha, tau)
    if scheme in ("obrien_fleming", "obf"):
        return obf_boundary(alpha, tau)
    if scheme == "kim_demets_spending":
        if rho_spend is None:
            raise DomainError(
                "kim_demets_spending requires rho_spend", parameter="rho_spend"
            )
        return spending_boundary(alpha, tau, rho_spend)
    raise DomainError(f"unknown scheme: {scheme!r}", parameter="scheme")


def gsd_power(
    design: GsdDesign,
    alpha: float,
    power_planned: float,
    tau: float,
    dilution: DilutionSpec = DilutionSpec(),
) -> PowerBreakdown:
    """Stage-1 and overall power of a two-look design under dilution.

    Stage 1 uses only pre-disruption data, so its power is invariant to
    (eta, psi); the pooled final statistic carries the diluted drift and a
    correlation with stage 1 that shrinks as psi grows.
    """
    alpha = check_probability("alpha", alpha, open_interval=True)
    power_planned = check_probability("power_planned", power_planned, open_interval=True)
    tau = check_fraction("tau", tau, include_one=False)
    if not math.isclose(design.tau, tau, rel_tol=0.0, abs_tol=1e-12):
        raise DomainError(
            f"design.tau={design.tau} does not match tau={tau}", parameter="tau"
        )
    eta, psi = dilution.eta, dilution.psi
    k = std_normal_quantile(1.0 - alpha) + std_normal_quantile(power_planned)
    m0 = math.sqrt(tau) * k
    denom = math.sqrt(tau + (1.0 - tau) * psi)
    m = k * (tau + (1.0 - tau) * (1.0 - eta)) / denom
    rho = math.sqrt(tau) / denom
    stage1 = 1.0 - std_normal_cdf(design.c1 - m0)
    overall = 1.0 - bivariate_normal_cdf(design.c1 - m0, design.c2 - m, rho)
    return PowerBreakdown(stage1=stage1, overall=overall)


def _require_stage_two(design: GsdDesign):
    if design.tau >= 1.0:
        raise DomainError("design has no stage 2 (tau = 1)", parameter="tau")


def conditional_error(z1: float, design: GsdDesign) -> float:
    """Probability of an eventual type-I error given the stage-1 statistic.

    Equals 1 once z1 clears the stage-1 boundary; integrating against the
    null density of z1 recovers the overall level alpha.
    """
    _require_stage_two(design)
    z1 = float(z1)
    if z1 >= design.c1:
        return 1.0
    tau = design.tau
    return 1.0 - std_normal_cdf(
        (design.c2 - math.sqrt(tau) * z1) / math.sqrt(1.0 - tau)
    )


def combination_statistic(z1: float, z2: float, spec: CombinationSpec) -> float:
    """sqrt(w)*z1 + sqrt(1-w)*z2, standard normal for independent standard inputs."""
    return math.sqrt(spec.w) * float(z1) + math.sqrt(1.0 - spec.w) * float(z2)


def second_stage_statistic(z: float, z_tau: float, tau: float) -> float:
    """Stage-2 increment statistic, independent of the interim statistic z_tau."""
    tau = check_fraction("tau", tau, include_one=False)
    return (float(z) - math.sqrt(tau) * float(z_tau)) / math.sqrt(1.0 - tau)


def conditional_power(z1: float, design: GsdDesign, drift: float) -> float:
    """Probability of final rejection given z1 and an assumed full-information drift.

    drift is E[z] under the assumed effect; drift = 0 recovers the
    conditional error function on the continuation region.
    """
    _require_stage_two(design)
    z1 = float(z1)
    if z1 >= design.c1:
        return 1.0
    tau = design.tau
    return 1.0 - std_normal_cdf(
        (design.c2 - math.sqrt(tau) * z1 - (1.0 - tau) * float(drift))
        / math.sqrt(1.0 - tau)
    )
