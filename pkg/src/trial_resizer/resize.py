"""Stage-2 sample-size adjustment restoring the planned power under dilution.

With n0 = N*tau patients enrolled pre-disruption, the post-disruption
enrollment n1 that restores the planned power of a single pooled analysis
solves a quadratic in xi = n0 / (n0 + n1). The group-sequential variant keeps
the original boundary pair fixed and searches n1 directly on the overall
power, which is monotone in n1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.optimize

from .dilution import DilutionSpec
from .errors import (
    DegenerateQuadraticError,
    DomainError,
    InfeasibleError,
    check_fraction,
    check_positive,
    check_probability,
)
from .gaussian import bivariate_normal_cdf, std_normal_cdf, std_normal_quantile
from .gsd import GsdDesign

__all__ = ["ResizeResult", "XiRoots", "xi_roots", "adjusted_stage2_n", "adjusted_stage2_n_gsd"]

# Leading coefficient below this magnitude switches to the linear branch.
_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class XiRoots:
    """Both roots of the resize quadratic in xi, unfiltered, plus its discriminant."""

    root_minus: float
    root_plus: float
    discriminant: float


@dataclass(frozen=True)
class ResizeResult:
    """Adjusted stage-2 size: xi, continuous and ceiling n1, branch, achieved power."""

    xi: float
    n1_continuous: float
    n1_ceiling: int
    branch: str
    achieved_power: float
    note: str | None = None


def _quadratic_coefficients(tau: float, eta: float, psi: float) -> tuple[float, float, float]:
    a = tau * eta**2 - 1.0 + psi
    b = 2.0 * tau * eta * (1.0 - eta) - psi
    c = tau * (1.0 - eta) ** 2
    return a, b, c


def xi_roots(tau: float, dilution: DilutionSpec) -> XiRoots:
    """Both solutions of the resize quadratic; the caller selects validity."""
    tau = check_fraction("tau", tau, include_one=False)
    a, b, c = _quadratic_coefficients(tau, dilution.eta, dilution.psi)
    if abs(a) < _DEGENERATE_TOL:
        raise DegenerateQuadraticError(
            "leading coefficient tau*eta^2 - 1 + psi vanishes; use the linear branch"
        )
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise InfeasibleError(
            f"negative discriminant {disc:.6g}: no real xi restores the planned power"
        )
    sqrt_disc = math.sqrt(disc)
    r1 = (-b - sqrt_disc) / (2.0 * a)
    r2 = (-b + sqrt_disc) / (2.0 * a)
    return XiRoots(root_minus=min(r1, r2), root_plus=max(r1, r2), discriminant=disc)


def _achieved_fixed_power(
    xi: float, n_total: float, N: float, alpha: float, power_planned: float,
    dilution: DilutionSpec,
) -> float:
    """Power of a single pooled analysis with n_total patients, fraction xi pre."""
    z_a = std_normal_quantile(1.0 - alpha)
    z_b = std_normal_quantile(power_planned)
    k = z_a + z_b
    mean = (
        math.sqrt(n_total / N)
        * k
        * (xi + (1.0 - xi) * (1.0 - dilution.eta))
        / math.sqrt(xi + (1.0 - xi) * dilution.psi)
    )
    return std_normal_cdf(mean - z_a)


def adjusted_stage2_n(
    N: float, tau: float, dilution: DilutionSpec, alpha: float, power_planned: float
) -> ResizeResult:
    """Post-disruption enrollment restoring the planned power of a pooled analysis.

    N is the planned continuous total (consistent with the planning alpha and
    power). Uses the closed-form linear branch when the quadratic degenerates,
    otherwise the root with xi in (0, 1].
    """
    check_positive("N", N)
    tau = check_fraction("tau", tau, include_one=False)
    alpha = check_probability("alpha", alpha, open_interval=True)
    power_planned = check_probability("power_planned", power_planned, open_interval=True)
    eta, psi = dilution.eta, dilution.psi
    if eta >= 1.0:
        raise InfeasibleError(
            f"eta={eta} leaves no residual post-disruption effect; planned power unreachable"
        )
    a, _, _ = _quadratic_coefficients(tau, eta, psi)
    note = None
    n0 = N * tau
    if abs(a) < _DEGENERATE_TOL:
        # Solve for n1 directly; via xi the division would lose the exact
        # n1 = N*(1 - tau) answer of the undiluted case to rounding.
        d = 1.0 - tau * eta * (2.0 - eta)
        xi = tau * (1.0 - eta) ** 2 / d
        n1 = N * (d - tau * (1.0 - eta) ** 2) / (1.0 - eta) ** 2
        branch = "degenerate_linear"
    else:
        roots = xi_roots(tau, dilution)
        valid = [x for x in (roots.root_minus, roots.root_plus) if 0.0 < x <= 1.0]
        if not valid:
            raise InfeasibleError(
                f"no xi root in (0, 1] (roots {roots.root_minus:.6g}, {roots.root_plus:.6g}); "
                "planned power unreachable"
            )
        if len(valid) == 2:
            # Larger xi means smaller added n1; keep it but surface the ambiguity.
            note = "both quadratic roots lie in (0, 1]; smaller n1 selected"
        xi = max(valid)
        n1 = n0 * (1.0 - xi) / xi
        branch = "quadratic_root"
    achieved = _achieved_fixed_power(xi, n0 + n1, N, alpha, power_planned, dilution)
    return ResizeResult(
        xi=xi,
        n1_continuous=n1,
        n1_ceiling=math.ceil(n1 - 1e-9),
        branch=branch,
        achieved_power=achieved,
        note=note,
    )


def _gsd_overall_power(
    n1: float, design: GsdDesign, N: float, tau: float, dilution: DilutionSpec,
    alpha: float, power_planned: float,
) -> float:
    """Overall power of the original (c1, c2) design after enrolling n1 more patients."""
    z_a = std_normal_quantile(1.0 - alpha)
    z_b = std_normal_quantile(power_planned)
    k = z_a + z_b
    n0 = N * tau
    n_total = n0 + n1
    m0 = math.sqrt(tau) * k
    if n1 <= 0.0:
        return 1.0 - std_normal_cdf(min(design.c1, design.c2) - m0)
    xi = n0 / n_total
    denom = math.sqrt(xi + (1.0 - xi) * dilution.psi)
    m = (
        math.sqrt(n_total / N)
        * k
        * (xi + (1.0 - xi) * (1.0 - dilution.eta))
        / denom
    )
    rho = math.sqrt(xi) / denom
    return 1.0 - bivariate_normal_cdf(design.c1 - m0, design.c2 - m, rho)


def adjusted_stage2_n_gsd(
    design: GsdDesign,
    N: float,
    tau: float,
    dilution: DilutionSpec,
    alpha: float,
    power_planned: float,
    cap_factor: float = 100.0,
) -> ResizeResult:
    """Smallest stage-2 enrollment giving the two-look design its planned power.

    The boundary pair stays fixed (recomputing it post hoc would change the
    type-I-error contract mid-trial); only the information fraction moves.
    Monotone bisection on n1 to 1e-4 patients, capped at cap_factor * N.
    """
    check_positive("N", N)
    tau = check_fraction("tau", tau, include_one=False)
    alpha = check_probability("alpha", alpha, open_interval=True)
    power_planned = check_probability("power_planned", power_planned, open_interval=True)
    if not math.isclose(design.tau, tau, rel_tol=0.0, abs_tol=1e-12):
        raise DomainError(
            f"design.tau={design.tau} does not match tau={tau}", parameter="tau"
        )
    if dilution.eta >= 1.0:
        raise InfeasibleError(
            f"eta={dilution.eta} leaves no residual post-disruption effect; "
            "planned power unreachable"
        )

    def power(n1: float) -> float:
        return _gsd_overall_power(n1, design, N, tau, dilution, alpha, power_planned)

    cap = cap_factor * N
    if power(0.0) >= power_planned:
        n1 = 0.0
    else:
        if power(cap) < power_planned:
            raise InfeasibleError(
                f"planned power {power_planned} unreachable with n1 <= {cap:.6g}"
            )
        n1 = float(
            scipy.optimize.brentq(
                lambda x: power(x) - power_planned, 0.0, cap, xtol=1e-4
            )
        )
    n0 = N * tau
    return ResizeResult(
        xi=n0 / (n0 + n1) if n0 + n1 > 0 else 1.0,
        n1_continuous=n1,
        n1_ceiling=math.ceil(n1 - 1e-9),
        branch="gsd_search",
        achieved_power=power(n1),
    )
