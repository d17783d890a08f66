"""Stateless JSON HTTP service exposing the resizing toolkit.

Every handler calls the pure core functions; there is no request state.
Domain errors surface as 422 with a structured {code, message, parameter}
body, malformed JSON as 400, and valid requests never produce a 500.
"""

from __future__ import annotations

import os
from typing import Sequence

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import design as design_mod
from . import dilution as dilution_mod
from . import grids, gsd, resize, shortterm
from .errors import DomainError, TrialResizerError

__all__ = ["create_app"]

_SIG_DIGITS = 12


def _round(value):
    """Emit floats with 12 significant digits; full precision is an illusion in JSON anyway."""
    if isinstance(value, float):
        return float(f"{value:.{_SIG_DIGITS}g}")
    if isinstance(value, dict):
        return {k: _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    return value


class PowerFractionRequest(BaseModel):
    alpha: float
    power: float
    tau: float


class SampleSizeRequest(BaseModel):
    alpha: float
    power: float
    delta: float
    sigma: float
    r: float = 1.0


class BoundariesRequest(BaseModel):
    scheme: str
    alpha: float
    tau: float
    rho_spend: float | None = None


class GsdPowerRequest(BoundariesRequest):
    power: float
    eta: float = 0.0
    psi: float = 1.0


class ConditionalErrorRequest(BoundariesRequest):
    z1: float


class ConditionalPowerRequest(ConditionalErrorRequest):
    drift: float


class JointLawRequest(BaseModel):
    tau: float
    eta: float = 0.0
    psi: float = 1.0
    alpha: float | None = None
    power: float | None = None
    n: float | None = None
    delta: float | None = None
    sigma: float | None = None
    r: float = 1.0


class DilutionPowerRequest(BaseModel):
    alpha: float
    power: float
    tau: float
    eta: float = 0.0
    psi: float = 1.0


class ResizeFixedRequest(BaseModel):
    n: float
    tau: float
    alpha: float
    power: float
    eta: float = 0.0
    psi: float = 1.0


class ResizeGsdRequest(ResizeFixedRequest):
    scheme: str
    rho_spend: float | None = None


class CurvesRequest(BaseModel):
    alpha: float
    power: float
    eta: float = 0.0
    psi: float = 1.0
    taus: list[float] | None = None


def _design_payload(d: gsd.GsdDesign) -> dict:
    return {
        "scheme": d.scheme,
        "tau": d.tau,
        "alpha": d.alpha,
        "c1": d.c1,
        "c2": d.c2,
        "rho_spend": d.rho_spend,
        "type_one_error": gsd.type_one_error(d.c1, d.c2, d.tau),
    }


def _resize_payload(result: resize.ResizeResult) -> dict:
    return {
        "xi": result.xi,
        "n1_continuous": result.n1_continuous,
        "n1_ceiling": result.n1_ceiling,
        "branch": result.branch,
        "achieved_power": result.achieved_power,
        "note": result.note,
    }


def create_app(cors_origins: Sequence[str] | None = None) -> FastAPI:
    """Build the service app; cors_origins defaults to TRIAL_RESIZER_CORS or '*'."""
    app = FastAPI(title="trial-resizer", version="0.1.0")
    if cors_origins is None:
        cors_origins = [
            o.strip()
            for o in os.environ.get("TRIAL_RESIZER_CORS", "*").split(",")
            if o.strip()
        ]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(TrialResizerError)
    async def _domain_error(request: Request, exc: TrialResizerError):
        return JSONResponse(
            status_code=422,
            content={
                "code": exc.code,
                "message": str(exc),
                "parameter": getattr(exc, "parameter", None),
            },
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        malformed = any("json" in str(e.get("type", "")) for e in errors)
        first = errors[0] if errors else {}
        loc = [str(p) for p in first.get("loc", []) if p != "body"]
        return JSONResponse(
            status_code=400 if malformed else 422,
            content={
                "code": "malformed_json" if malformed else "validation_error",
                "message": first.get("msg", "invalid request"),
                "parameter": ".".join(loc) or None,
            },
        )

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/power/fraction")
    def power_fraction(req: PowerFractionRequest):
        return _round(
            {"power": design_mod.power_at_fraction(req.alpha, req.power, req.tau)}
        )

    @app.post("/v1/design/sample-size")
    def sample_size(req: SampleSizeRequest):
        params = design_mod.DesignParams(
            alpha=req.alpha,
            beta_planned=1.0 - req.power,
            delta=req.delta,
            sigma=req.sigma,
            r=req.r,
        )
        result = design_mod.required_sample_size(params)
        return _round(
            {
                "total": result.total,
                "per_arm_control": result.per_arm_control,
                "per_arm_treatment": result.per_arm_treatment,
                "continuous_total": result.continuous_total,
                "continuous_control": result.continuous_control,
                "continuous_treatment": result.continuous_treatment,
            }
        )

    @app.post("/v1/gsd/boundaries")
    def boundaries(req: BoundariesRequest):
        d = gsd.boundary_for_scheme(req.scheme, req.alpha, req.tau, req.rho_spend)
        return _round(_design_payload(d))

    @app.post("/v1/gsd/power")
    def gsd_power_endpoint(req: GsdPowerRequest):
        d = gsd.boundary_for_scheme(req.scheme, req.alpha, req.tau, req.rho_spend)
        breakdown = gsd.gsd_power(
            d, req.alpha, req.power, req.tau,
            dilution_mod.DilutionSpec(eta=req.eta, psi=req.psi),
        )
        payload = _design_payload(d)
        payload.update({"stage1": breakdown.stage1, "overall": breakdown.overall})
        return _round(payload)

    @app.post("/v1/gsd/conditional-error")
    def conditional_error_endpoint(req: ConditionalErrorRequest):
        d = gsd.boundary_for_scheme(req.scheme, req.alpha, req.tau, req.rho_spend)
        return _round({"value": gsd.conditional_error(req.z1, d)})

    @app.post("/v1/gsd/conditional-power")
    def conditional_power_endpoint(req: ConditionalPowerRequest):
        d = gsd.boundary_for_scheme(req.scheme, req.alpha, req.tau, req.rho_spend)
        return _round({"value": gsd.conditional_power(req.z1, d, req.drift)})

    @app.post("/v1/dilution/joint-law")
    def joint_law_endpoint(req: JointLawRequest):
        spec = dilution_mod.DilutionSpec(eta=req.eta, psi=req.psi)
        if req.delta is not None and req.sigma is not None and req.n is not None:
            if req.alpha is None:
                raise DomainError("alpha is required", parameter="alpha")
            params = design_mod.DesignParams(
                alpha=req.alpha,
                beta_planned=0.1 if req.power is None else 1.0 - req.power,
                delta=req.delta,
                sigma=req.sigma,
                r=req.r,
            )
            law = dilution_mod.joint_law(req.n, req.tau, params, spec)
        elif req.alpha is not None and req.power is not None:
            # Normalized form: N is the continuous planned size, so the law
            # depends only on (alpha, power, tau, eta, psi).
            params = design_mod.DesignParams(
                alpha=req.alpha,
                beta_planned=1.0 - req.power,
                delta=1.0,
                sigma=1.0,
                r=req.r,
            )
            n = design_mod.required_sample_size(params).continuous_total
            law = dilution_mod.joint_law(n, req.tau, params, spec)
        else:
            raise DomainError(
                "provide either (alpha, power) or (n, delta, sigma, alpha)"
            )
        return _round({"mean": law.mean.tolist(), "corr": law.corr.tolist()})

    @app.post("/v1/dilution/power")
    def dilution_power(req: DilutionPowerRequest):
        return _round(
            {
                "power": dilution_mod.fixed_power_diluted(
                    req.alpha, req.power, req.tau,
                    dilution_mod.DilutionSpec(eta=req.eta, psi=req.psi),
                )
            }
        )

    @app.post("/v1/resize/fixed")
    def resize_fixed(req: ResizeFixedRequest):
        result = resize.adjusted_stage2_n(
            req.n, req.tau,
            dilution_mod.DilutionSpec(eta=req.eta, psi=req.psi),
            req.alpha, req.power,
        )
        return _round(_resize_payload(result))

    @app.post("/v1/resize/gsd")
    def resize_gsd(req: ResizeGsdRequest):
        d = gsd.boundary_for_scheme(req.scheme, req.alpha, req.tau, req.rho_spend)
        result = resize.adjusted_stage2_n_gsd(
            d, req.n, req.tau,
            dilution_mod.DilutionSpec(eta=req.eta, psi=req.psi),
            req.alpha, req.power,
        )
        payload = _resize_payload(result)
        payload.update({"c1": d.c1, "c2": d.c2})
        return _round(payload)

    @app.post("/v1/shortterm/estimate")
    async def shortterm_estimate(
        request: Request,
        estimator: str = "marschner_becker",
        n_planned: int | None = None,
    ):
        body = (await request.body()).decode("utf-8")
        data = shortterm.ShortTermDataset.from_csv(body)
        if estimator == "marschner_becker":
            est = shortterm.marschner_becker(data)
        elif estimator == "van_lancker":
            est = shortterm.van_lancker_estimate(data)
        else:
            raise DomainError(f"unknown estimator: {estimator!r}", parameter="estimator")
        payload = {
            "estimator": estimator,
            "p_arm0": est.p_arm0,
            "p_arm1": est.p_arm1,
            "difference": est.difference,
            "n_complete": est.n_complete,
            "n_short_only": est.n_short_only,
            "out_of_range": est.out_of_range,
        }
        if n_planned is not None:
            payload["information_fraction"] = shortterm.interim_information_fraction(
                data, n_planned
            )
        return _round(payload)

    @app.post("/v1/curves")
    def curves(req: CurvesRequest):
        taus = tuple(req.taus) if req.taus else grids.TABLE_TAUS
        grid = grids.power_curves(
            req.alpha, req.power, eta=req.eta, psi=req.psi, taus=taus
        )
        return _round(
            {
                "axis_name": grid.axis_name,
                "axis_values": list(grid.axis_values),
                "series": {k: list(v) for k, v in grid.series.items()},
            }
        )

    return app
