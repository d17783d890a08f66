"""Grid evaluators shared by the CLI and the HTTP service.

Reproduces the power-versus-information-fraction table for the fixed,
Pocock, and O'Brien-Fleming analyses and the matching curve series used by
the web UI.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .design import power_at_fraction
from .dilution import DilutionSpec
from .errors import DomainError
from .gsd import gsd_power, obf_boundary, pocock_boundary

__all__ = ["CurveGrid", "TABLE_TAUS", "CURVE_SERIES", "power_curves", "table_rows"]

TABLE_TAUS = (0.50, 0.60, 0.70, 0.80, 0.85, 0.90, 0.95, 0.99)
CURVE_SERIES = ("fixed", "pocock_stage1", "pocock_overall", "obf_stage1", "obf_overall")

# Curve grid over eta panels; the published figure caption uses these values.
DEFAULT_ETA_PANELS = (0.0, 0.1, 0.5)


@dataclass(frozen=True)
class CurveGrid:
    """One axis and a named family of equally long series over it."""

    axis_name: str
    axis_values: tuple[float, ...]
    series: dict[str, tuple[float, ...]]

    def __post_init__(self):
        for name, values in self.series.items():
            if len(values) != len(self.axis_values):
                raise DomainError(
                    f"series {name!r} has {len(values)} values for "
                    f"{len(self.axis_values)} axis points"
                )


def power_curves(
    alpha: float,
    power_planned: float,
    eta: float = 0.0,
    psi: float = 1.0,
    taus: Sequence[float] = TABLE_TAUS,
) -> CurveGrid:
    """Fixed / Pocock / OBF power series over an information-fraction axis."""
    dilution = DilutionSpec(eta=eta, psi=psi)
    series: dict[str, list[float]] = {name: [] for name in CURVE_SERIES}
    for tau in taus:
        series["fixed"].append(power_at_fraction(alpha, power_planned, tau))
        for scheme, build in (("pocock", pocock_boundary), ("obf", obf_boundary)):
            design = build(alpha, tau)
            breakdown = gsd_power(design, alpha, power_planned, tau, dilution)
            series[f"{scheme}_stage1"].append(breakdown.stage1)
            series[f"{scheme}_overall"].append(breakdown.overall)
    return CurveGrid(
        axis_name="tau",
        axis_values=tuple(float(t) for t in taus),
        series={name: tuple(vals) for name, vals in series.items()},
    )


def table_rows(
    power_planned: float,
    eta: float = 0.0,
    psi: float = 1.0,
    alpha: float = 0.025,
    taus: Sequence[float] = TABLE_TAUS,
) -> list[dict[str, float]]:
    """Row-per-tau version of power_curves, convenient for CSV output."""
    grid = power_curves(alpha, power_planned, eta=eta, psi=psi, taus=taus)
    rows = []
    for i, tau in enumerate(grid.axis_values):
        row = {"tau": tau}
        for name in CURVE_SERIES:
            row[name] = grid.series[name][i]
        rows.append(row)
    return rows
