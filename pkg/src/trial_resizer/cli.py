"""Command-line interface mirroring the HTTP service.

Exit codes: 0 on success, 2 on usage errors, 3 on domain errors. Output
formats: json (12 significant digits), csv and text (6 significant digits,
LF line endings, '.' decimal).
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import design as design_mod
from . import dilution as dilution_mod
from . import grids, gsd, resize, shortterm
from .errors import TrialResizerError

DEFAULT_PORT = 8080
DEFAULT_BIND = "127.0.0.1"


def _fmt6(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return "" if value is None else str(value)


def _round12(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _emit(payload, fmt: str):
    """payload is a dict (scalar result) or a list of dicts (table)."""
    if fmt == "json":
        click.echo(json.dumps(_round12(payload), indent=2))
        return
    rows = payload if isinstance(payload, list) else [payload]
    if fmt == "csv":
        header = list(rows[0].keys())
        click.echo(",".join(header))
        for row in rows:
            click.echo(",".join(_fmt6(row[k]) for k in header))
        return
    if fmt == "text":
        for row in rows:
            for key, value in row.items():
                click.echo(f"{key}: {_fmt6(value)}")
        return
    raise click.UsageError(f"unknown format: {fmt}")


format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="text",
    show_default=True, help="Output format.",
)


def handle_domain_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except TrialResizerError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


@click.group()
def main():
    """Resizing toolkit for trials interrupted partway through recruitment."""


@main.command("power-at-fraction")
@click.option("--alpha", type=float, required=True, help="One-sided significance level.")
@click.option("--power", type=float, required=True, help="Planned power.")
@click.option("--tau", type=float, required=True, help="Information fraction in (0, 1].")
@format_option
@handle_domain_errors
def power_at_fraction_cmd(alpha, power, tau, fmt):
    """Power of an early analysis with a fraction tau of the planned patients."""
    _emit({"power": design_mod.power_at_fraction(alpha, power, tau)}, fmt)


@main.command("sample-size")
@click.option("--alpha", type=float, required=True)
@click.option("--power", type=float, required=True)
@click.option("--delta", type=float, required=True, help="Mean difference under H1.")
@click.option("--sigma", type=float, required=True, help="Common outcome SD.")
@click.option("--r", type=float, default=1.0, show_default=True, help="Allocation ratio 1:r.")
@format_option
@handle_domain_errors
def sample_size_cmd(alpha, power, delta, sigma, r, fmt):
    """Total sample size achieving the planned power."""
    params = design_mod.DesignParams(
        alpha=alpha, beta_planned=1.0 - power, delta=delta, sigma=sigma, r=r
    )
    result = design_mod.required_sample_size(params)
    _emit(
        {
            "total": result.total,
            "per_arm_control": result.per_arm_control,
            "per_arm_treatment": result.per_arm_treatment,
            "continuous_total": result.continuous_total,
        },
        fmt,
    )


scheme_option = click.option(
    "--scheme",
    type=click.Choice(["pocock", "obrien_fleming", "kim_demets_spending"]),
    required=True,
)
rho_spend_option = click.option(
    "--rho-spend", type=float, default=None,
    help="Power-family spending exponent (kim_demets_spending only).",
)


@main.command("gsd-boundaries")
@scheme_option
@click.option("--alpha", type=float, required=True)
@click.option("--tau", type=float, required=True)
@rho_spend_option
@format_option
@handle_domain_errors
def gsd_boundaries_cmd(scheme, alpha, tau, rho_spend, fmt):
    """Two-look boundary pair calibrated to overall level alpha."""
    d = gsd.boundary_for_scheme(scheme, alpha, tau, rho_spend)
    _emit(
        {
            "scheme": d.scheme,
            "tau": d.tau,
            "alpha": d.alpha,
            "c1": d.c1,
            "c2": d.c2,
            "type_one_error": gsd.type_one_error(d.c1, d.c2, d.tau),
        },
        fmt,
    )


@main.command("gsd-power")
@scheme_option
@click.option("--alpha", type=float, required=True)
@click.option("--power", type=float, required=True)
@click.option("--tau", type=float, required=True)
@click.option("--eta", type=float, default=0.0, show_default=True)
@click.option("--psi", type=float, default=1.0, show_default=True)
@rho_spend_option
@format_option
@handle_domain_errors
def gsd_power_cmd(scheme, alpha, power, tau, eta, psi, rho_spend, fmt):
    """Stage-1 and overall power of a two-look design under dilution."""
    d = gsd.boundary_for_scheme(scheme, alpha, tau, rho_spend)
    breakdown = gsd.gsd_power(
        d, alpha, power, tau, dilution_mod.DilutionSpec(eta=eta, psi=psi)
    )
    _emit(
        {
            "c1": d.c1,
            "c2": d.c2,
            "stage1": breakdown.stage1,
            "overall": breakdown.overall,
        },
        fmt,
    )


@main.command("dilution-power")
@click.option("--alpha", type=float, required=True)
@click.option("--power", type=float, required=True)
@click.option("--tau", type=float, required=True)
@click.option("--eta", type=float, default=0.0, show_default=True)
@click.option("--psi", type=float, default=1.0, show_default=True)
@format_option
@handle_domain_errors
def dilution_power_cmd(alpha, power, tau, eta, psi, fmt):
    """Power of a single full-N analysis when post-disruption data is diluted."""
    value = dilution_mod.fixed_power_diluted(
        alpha, power, tau, dilution_mod.DilutionSpec(eta=eta, psi=psi)
    )
    _emit({"power": value}, fmt)


@main.command("resize")
@click.option("--n", type=float, required=True, help="Planned continuous total N.")
@click.option("--tau", type=float, required=True)
@click.option("--eta", type=float, default=0.0, show_default=True)
@click.option("--psi", type=float, default=1.0, show_default=True)
@click.option("--alpha", type=float, default=0.025, show_default=True)
@click.option("--power", type=float, default=0.9, show_default=True)
@format_option
@handle_domain_errors
def resize_cmd(n, tau, eta, psi, alpha, power, fmt):
    """Post-disruption enrollment restoring the planned power (single analysis)."""
    result = resize.adjusted_stage2_n(
        n, tau, dilution_mod.DilutionSpec(eta=eta, psi=psi), alpha, power
    )
    _emit(
        {
            "xi": result.xi,
            "n1_continuous": result.n1_continuous,
            "n1_ceiling": result.n1_ceiling,
            "branch": result.branch,
            "achieved_power": result.achieved_power,
        },
        fmt,
    )


@main.command("resize-gsd")
@scheme_option
@click.option("--n", type=float, required=True)
@click.option("--tau", type=float, required=True)
@click.option("--eta", type=float, default=0.0, show_default=True)
@click.option("--psi", type=float, default=1.0, show_default=True)
@click.option("--alpha", type=float, default=0.025, show_default=True)
@click.option("--power", type=float, default=0.9, show_default=True)
@rho_spend_option
@format_option
@handle_domain_errors
def resize_gsd_cmd(scheme, n, tau, eta, psi, alpha, power, rho_spend, fmt):
    """Stage-2 enrollment giving the two-look design its planned overall power."""
    d = gsd.boundary_for_scheme(scheme, alpha, tau, rho_spend)
    result = resize.adjusted_stage2_n_gsd(
        d, n, tau, dilution_mod.DilutionSpec(eta=eta, psi=psi), alpha, power
    )
    _emit(
        {
            "c1": d.c1,
            "c2": d.c2,
            "xi": result.xi,
            "n1_continuous": result.n1_continuous,
            "n1_ceiling": result.n1_ceiling,
            "achieved_power": result.achieved_power,
        },
        fmt,
    )


@main.command("shortterm-estimate")
@click.argument("csv_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--estimator", type=click.Choice(["marschner_becker", "van_lancker"]),
    default="marschner_becker", show_default=True,
)
@click.option("--n-planned", type=int, default=None, help="Planned primary observations.")
@format_option
@handle_domain_errors
def shortterm_estimate_cmd(csv_path, estimator, n_planned, fmt):
    """Interim per-arm success estimates from an `arm,s,l,x1..xk` CSV."""
    data = shortterm.ShortTermDataset.from_csv(open(csv_path).read())
    if estimator == "marschner_becker":
        est = shortterm.marschner_becker(data)
    else:
        est = shortterm.van_lancker_estimate(data)
    payload = {
        "estimator": estimator,
        "p_arm0": est.p_arm0,
        "p_arm1": est.p_arm1,
        "difference": est.difference,
        "n_complete": est.n_complete,
        "n_short_only": est.n_short_only,
    }
    if n_planned is not None:
        payload["information_fraction"] = shortterm.interim_information_fraction(
            data, n_planned
        )
    _emit(payload, fmt)


@main.command("table1")
@click.option("--power", type=float, required=True, help="Planned power (0.8 or 0.9 in the published table).")
@click.option("--eta", type=float, default=0.0, show_default=True)
@click.option("--psi", type=float, default=1.0, show_default=True)
@click.option("--alpha", type=float, default=0.025, show_default=True)
@format_option
@handle_domain_errors
def table1_cmd(power, eta, psi, alpha, fmt):
    """Power-versus-tau table for the fixed, Pocock, and OBF analyses."""
    rows = grids.table_rows(power, eta=eta, psi=psi, alpha=alpha)
    _emit(rows, "csv" if fmt == "text" else fmt)


@main.command("curves")
@click.option("--alpha", type=float, default=0.025, show_default=True)
@click.option("--power", type=float, required=True)
@click.option("--eta", type=float, default=0.0, show_default=True)
@click.option("--psi", type=float, default=1.0, show_default=True)
@click.option(
    "--taus", type=str, default=None,
    help="Comma-separated tau grid; defaults to the published table grid.",
)
@format_option
@handle_domain_errors
def curves_cmd(alpha, power, eta, psi, taus, fmt):
    """Curve grid of power series over tau (one row per tau)."""
    tau_values = (
        tuple(float(t) for t in taus.split(",")) if taus else grids.TABLE_TAUS
    )
    rows = grids.table_rows(power, eta=eta, psi=psi, alpha=alpha, taus=tau_values)
    _emit(rows, "csv" if fmt == "text" else fmt)


@main.command("serve")
@click.option("--port", type=int, default=None, help="Port (default: TRIAL_RESIZER_PORT or 8080).")
@click.option("--bind", type=str, default=None, help="Bind address (default: TRIAL_RESIZER_BIND or loopback).")
@handle_domain_errors
def serve_cmd(port, bind):
    """Run the JSON HTTP service."""
    import uvicorn

    from .service import create_app

    if port is None:
        port = int(os.environ.get("TRIAL_RESIZER_PORT", DEFAULT_PORT))
    if bind is None:
        bind = os.environ.get("TRIAL_RESIZER_BIND", DEFAULT_BIND)
    uvicorn.run(create_app(), host=bind, port=port)


if __name__ == "__main__":
    main()
