"""Univariate and bivariate standard-normal primitives and 1-D quadrature.

The bivariate CDF follows Genz's refinement of Drezner's method: the
probability is reduced to a one-dimensional Gauss-Legendre quadrature over
the correlation parameter, with a dedicated asymptotic-expansion branch for
|rho| > 0.925 where the direct reduction loses accuracy. Absolute error is
well below the 1e-10 contract across the full correlation range.
"""

from __future__ import annotations

import math
from typing import Callable

import scipy.integrate
import scipy.special

from .errors import DomainError, NumericalError, check_correlation

__all__ = [
    "std_normal_cdf",
    "std_normal_pdf",
    "std_normal_quantile",
    "bivariate_normal_cdf",
    "integrate",
    "POS_INF",
]

# Sentinel for an unbounded upper limit in bivariate_normal_cdf.
POS_INF = math.inf

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_TWO_PI = 2.0 * math.pi


def std_normal_pdf(x: float) -> float:
    """Density of the standard normal distribution."""
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x: float) -> float:
    """Distribution function of the standard normal, Phi(x).

    Uses the complementary error function, accurate to ~1e-15 absolute.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}", parameter="x")
    return 0.5 * math.erfc(-x / _SQRT2)


def std_normal_quantile(p: float) -> float:
    """Inverse of std_normal_cdf on (0, 1)."""
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie strictly in (0, 1), got {p}", parameter="p")
    return float(scipy.special.ndtri(p))


# Gauss-Legendre abscissae/weights for the three rules used by Genz's method;
# rule selection depends on |rho| (coarser rules suffice for small |rho|).
_GL_X = (
    (0.9324695142031521, 0.6612093864662645, 0.2386191860831969),
    (
        0.9815606342467192, 0.9041172563704749, 0.7699026741943047,
        0.5873179542866175, 0.3678314989981802, 0.1252334085114689,
    ),
    (
        0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
        0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
        0.5108670019508271, 0.3737060887154195, 0.2277858511416451,
        0.0765265211334973,
    ),
)
_GL_W = (
    (0.1713244923791704, 0.3607615730481386, 0.4679139345726910),
    (
        0.04717533638651183, 0.1069393259953184, 0.1600783285433462,
        0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    ),
    (
        0.01761400713915212, 0.04060142980038694, 0.06267204833410907,
        0.08327674157670475, 0.1019301198172404, 0.1181945319615184,
        0.1316886384491766, 0.1420961093183820, 0.1491729864726037,
        0.1527533871307258,
    ),
)


def _bvn_upper(dh: float, dk: float, r: float) -> float:
    """P(X > dh, Y > dk) for standard bivariate normal with correlation r."""
    if abs(r) < 0.3:
        rule = 0
    elif abs(r) < 0.75:
        rule = 1
    else:
        rule = 2
    xs, ws = _GL_X[rule], _GL_W[rule]

    h, k = dh, dk
    hk = h * k
    bvn = 0.0
    if abs(r) < 0.925:
        if abs(r) > 0.0:
            hs = (h * h + k * k) / 2.0
            asr = math.asin(r)
            for x, w in zip(xs, ws):
                for sign in (-1.0, 1.0):
                    sn = math.sin(asr * (sign * x + 1.0) / 2.0)
                    bvn += w * math.exp((sn * hk - hs) / (1.0 - sn * sn))
            bvn = bvn * asr / (2.0 * _TWO_PI)
        bvn += std_normal_cdf(-h) * std_normal_cdf(-k)
    else:
        if r < 0.0:
            k = -k
            hk = -hk
        if abs(r) < 1.0:
            a_sq = (1.0 - r) * (1.0 + r)
            a = math.sqrt(a_sq)
            bs = (h - k) ** 2
            c = (4.0 - hk) / 8.0
            d = (12.0 - hk) / 16.0
            asr = -(bs / a_sq + hk) / 2.0
            if asr > -100.0:
                bvn = (
                    a
                    * math.exp(asr)
                    * (1.0 - c * (bs - a_sq) * (1.0 - d * bs / 5.0) / 3.0
                       + c * d * a_sq * a_sq / 5.0)
                )
            if -hk < 100.0:
                b = math.sqrt(bs)
                bvn -= (
                    math.exp(-hk / 2.0)
                    * math.sqrt(_TWO_PI)
                    * std_normal_cdf(-b / a)
                    * b
                    * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0)
                )
            a /= 2.0
            for x, w in zip(xs, ws):
                for sign in (-1.0, 1.0):
                    x_sq = (a * (sign * x + 1.0)) ** 2
                    rs = math.sqrt(1.0 - x_sq)
                    asr = -(bs / x_sq + hk) / 2.0
                    if asr > -100.0:
                        sp = 1.0 + c * x_sq * (1.0 + d * x_sq)
                        ep = math.exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs
                        bvn += a * w * math.exp(asr) * (ep - sp)
            bvn = -bvn / _TWO_PI
        if r > 0.0:
            bvn += std_normal_cdf(-max(h, k))
        else:
            bvn = -bvn
            if k > h:
                bvn += std_normal_cdf(k) - std_normal_cdf(h)
    return min(max(bvn, 0.0), 1.0)


def bivariate_normal_cdf(a: float, b: float, rho: float) -> float:
    """P(Z1 <= a, Z2 <= b) for standard bivariate normal with correlation rho.

    Either limit may be POS_INF (math.inf), in which case the probability
    reduces to the univariate marginal of the other coordinate.
    """
    rho = check_correlation("rho", rho)
    a, b = float(a), float(b)
    for name, v in (("a", a), ("b", b)):
        if math.isnan(v) or v == -math.inf:
            raise DomainError(
                f"{name} must be finite or +inf, got {v}", parameter=name
            )
    if a == POS_INF and b == POS_INF:
        return 1.0
    if a == POS_INF:
        return std_normal_cdf(b)
    if b == POS_INF:
        return std_normal_cdf(a)
    return _bvn_upper(-a, -b, rho)


def integrate(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10
) -> float:
    """Adaptive quadrature of f over [lo, hi] with estimated error <= tol.

    Backed by scipy's adaptive Gauss-Kronrod integrator; raises
    NumericalError (with the best estimate attached) when the requested
    tolerance cannot be certified.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}", parameter="tol")
    result = scipy.integrate.quad(
        f, lo, hi, epsabs=tol, epsrel=tol, limit=200, full_output=True
    )
    value, abserr = result[0], result[1]
    if len(result) > 3:
        raise NumericalError(
            f"quadrature did not converge: {result[3]}", best_estimate=value
        )
    if abserr > max(tol, tol * abs(value)):
        raise NumericalError(
            f"quadrature error estimate {abserr:.3e} exceeds tol {tol:.3e}",
            best_estimate=value,
        )
    return value
