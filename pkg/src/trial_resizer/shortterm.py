"""Interim estimation of a binary long-term endpoint from short-term read-outs.

Two estimators of the per-arm success probability at an interim analysis
where many patients have only a short-term status: the Marschner-Becker
total-probability ML estimator, and a three-step covariate-adjusted
estimator (fit long on short + covariates, project onto covariates, average
over everyone recruited). Working models are least-squares linear fits;
with no covariates the three-step estimator reproduces Marschner-Becker
exactly, which a logistic fitter would not.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CollinearityError,
    CsvParseError,
    DomainError,
    StratumCollapseError,
)

__all__ = [
    "Record",
    "ShortTermDataset",
    "InterimEstimate",
    "marschner_becker",
    "van_lancker_estimate",
    "interim_information_fraction",
]


@dataclass(frozen=True)
class Record:
    """One patient: arm, short-term status s, long-term outcome l, covariates.

    s and l are 0/1 or None (missing). Follow-up is monotone: l observed
    implies s observed.
    """

    arm: int
    s: int | None
    l: int | None
    covariates: tuple[float, ...] = ()


@dataclass(frozen=True)
class ShortTermDataset:
    records: tuple[Record, ...]
    covariate_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        for i, rec in enumerate(self.records):
            if rec.arm not in (0, 1):
                raise DomainError(f"record {i}: arm must be 0 or 1, got {rec.arm}")
            for name, v in (("s", rec.s), ("l", rec.l)):
                if v is not None and v not in (0, 1):
                    raise DomainError(f"record {i}: {name} must be 0, 1, or missing")
            if rec.l is not None and rec.s is None:
                raise DomainError(
                    f"record {i}: l observed without s (monotone follow-up violated)"
                )
            if len(rec.covariates) != self.covariate_dim:
                raise DomainError(
                    f"record {i}: expected {self.covariate_dim} covariates, "
                    f"got {len(rec.covariates)}"
                )

    @classmethod
    def from_csv(cls, source: str | Path) -> "ShortTermDataset":
        """Parse the `arm,s,l,x1..xk` CSV format; empty fields are missing.

        source is a path or the CSV text itself. Malformed rows raise
        CsvParseError with the 1-based line number.
        """
        if isinstance(source, Path) or (
            isinstance(source, str) and "\n" not in source and source.endswith(".csv")
        ):
            text = Path(source).read_text()
        else:
            text = source
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise CsvParseError("empty CSV", line=1) from None
        header = [h.strip() for h in header]
        expected_prefix = ["arm", "s", "l"]
        if header[:3] != expected_prefix:
            raise CsvParseError(
                f"header must start with 'arm,s,l', got {','.join(header)}", line=1
            )
        cov_names = header[3:]
        for i, name in enumerate(cov_names):
            if name != f"x{i + 1}":
                raise CsvParseError(
                    f"covariate columns must be x1..xk, got {name!r}", line=1
                )
        records = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise CsvParseError(
                    f"expected {len(header)} fields, got {len(row)}", line=line_no
                )
            try:
                arm = int(row[0])
                s = None if row[1].strip() == "" else int(row[1])
                l = None if row[2].strip() == "" else int(row[2])
                covs = tuple(float(v) for v in row[3:])
            except ValueError as exc:
                raise CsvParseError(str(exc), line=line_no) from None
            if any(not math.isfinite(v) for v in covs):
                raise CsvParseError("covariates must be finite", line=line_no)
            try:
                records.append(Record(arm=arm, s=s, l=l, covariates=covs))
            except DomainError as exc:
                raise CsvParseError(str(exc), line=line_no) from None
        return cls(records=tuple(records), covariate_dim=len(cov_names))


@dataclass(frozen=True)
class InterimEstimate:
    """Per-arm success probability estimates and their difference.

    n_complete counts records with both s and l observed; n_short_only those
    with s observed but l missing. out_of_range flags an estimate outside
    [0, 1] (possible for the covariate-adjusted estimator, whose working
    models are not probability-constrained).
    """

    p_arm0: float
    p_arm1: float
    difference: float
    n_complete: int
    n_short_only: int
    out_of_range: bool = False


def _arm_records(data: ShortTermDataset, arm: int) -> list[Record]:
    return [rec for rec in data.records if rec.arm == arm]


def _counts(data: ShortTermDataset) -> tuple[int, int]:
    n_complete = sum(1 for r in data.records if r.s is not None and r.l is not None)
    n_short_only = sum(1 for r in data.records if r.s is not None and r.l is None)
    return n_complete, n_short_only


def marschner_becker(data: ShortTermDataset) -> InterimEstimate:
    """Total-probability ML estimate of P(L=1) per arm.

    P(S=1) comes from every record with s observed; the conditional terms
    P(L=1 | S=s) from complete records only. Each arm needs complete records
    in both short-term strata.
    """
    estimates = []
    for arm in (0, 1):
        recs = _arm_records(data, arm)
        s_observed = [r for r in recs if r.s is not None]
        if not s_observed:
            raise StratumCollapseError(f"arm {arm}: no records with s observed")
        complete_s1 = [r for r in recs if r.l is not None and r.s == 1]
        complete_s0 = [r for r in recs if r.l is not None and r.s == 0]
        if not complete_s1:
            raise StratumCollapseError(f"arm {arm}: no complete records with s=1")
        if not complete_s0:
            raise StratumCollapseError(f"arm {arm}: no complete records with s=0")
        p_s1 = sum(r.s for r in s_observed) / len(s_observed)
        p_l_given_s1 = sum(r.l for r in complete_s1) / len(complete_s1)
        p_l_given_s0 = sum(r.l for r in complete_s0) / len(complete_s0)
        estimates.append(p_l_given_s1 * p_s1 + p_l_given_s0 * (1.0 - p_s1))
    n_complete, n_short_only = _counts(data)
    return InterimEstimate(
        p_arm0=estimates[0],
        p_arm1=estimates[1],
        difference=estimates[1] - estimates[0],
        n_complete=n_complete,
        n_short_only=n_short_only,
    )


def _lstsq_fit(x: np.ndarray, y: np.ndarray, context: str) -> np.ndarray:
    beta, _, rank, _ = np.linalg.lstsq(x, y, rcond=None)
    if rank < x.shape[1]:
        raise CollinearityError(f"{context}: design matrix is rank deficient")
    return beta


def van_lancker_estimate(data: ShortTermDataset) -> InterimEstimate:
    """Three-step covariate-adjusted estimate of P(L=1) per arm.

    Step 1 fits l on (s, covariates) over complete records and predicts for
    every s-observed record; step 2 fits those predictions on the covariates
    over s-observed records; step 3 averages the step-2 predictions over all
    recruited records. Step-1 predictions are deliberately not clipped to
    [0, 1] so the no-covariate reduction to marschner_becker is exact.
    """
    k = data.covariate_dim
    estimates = []
    out_of_range = False
    for arm in (0, 1):
        recs = _arm_records(data, arm)
        complete = [r for r in recs if r.l is not None]
        s_observed = [r for r in recs if r.s is not None]
        if len(complete) <= k + 2:
            raise DomainError(
                f"arm {arm}: need more than covariate_dim + 2 = {k + 2} complete "
                f"records to fit the working model, got {len(complete)}"
            )
        if not recs:
            raise DomainError(f"arm {arm}: no recruited records")

        x1 = np.array([[1.0, float(r.s), *r.covariates] for r in complete])
        y1 = np.array([float(r.l) for r in complete])
        beta1 = _lstsq_fit(x1, y1, f"arm {arm} step 1")
        x1_pred = np.array([[1.0, float(r.s), *r.covariates] for r in s_observed])
        l_hat = x1_pred @ beta1

        x2 = np.array([[1.0, *r.covariates] for r in s_observed])
        beta2 = _lstsq_fit(x2, l_hat, f"arm {arm} step 2")

        x3 = np.array([[1.0, *r.covariates] for r in recs])
        estimate = float(np.mean(x3 @ beta2))
        if not 0.0 <= estimate <= 1.0:
            out_of_range = True
        estimates.append(estimate)
    n_complete, n_short_only = _counts(data)
    return InterimEstimate(
        p_arm0=estimates[0],
        p_arm1=estimates[1],
        difference=estimates[1] - estimates[0],
        n_complete=n_complete,
        n_short_only=n_short_only,
        out_of_range=out_of_range,
    )


def interim_information_fraction(data: ShortTermDataset, n_planned: int) -> float:
    """Fraction of the planned primary-endpoint observations already available."""
    if int(n_planned) < 1:
        raise DomainError(f"n_planned must be positive, got {n_planned}", parameter="n_planned")
    n_observed = sum(1 for r in data.records if r.l is not None)
    if n_observed == 0:
        raise DomainError(
            "no primary-endpoint observations yet; information fraction must be > 0"
        )
    if n_observed > int(n_planned):
        raise DomainError(
            f"{n_observed} primary observations exceed n_planned={n_planned}",
            parameter="n_planned",
        )
    return n_observed / int(n_planned)
