"""Shared fixtures: the published power table and independent oracles."""

from __future__ import annotations

import math

import pytest
import scipy.integrate

from trial_resizer import std_normal_cdf

# Published power-versus-tau table (planned power, eta) -> tau ->
# (fixed, pocock_stage1, pocock_overall, obf_stage1, obf_overall); psi = 1,
# alpha = 0.025 throughout.
PUBLISHED_TABLE = {
    (0.8, 0.0): {
        0.50: (0.508, 0.422, 0.756, 0.207, 0.797),
        0.60: (0.583, 0.504, 0.764, 0.344, 0.795),
        0.70: (0.650, 0.581, 0.772, 0.478, 0.793),
        0.80: (0.707, 0.653, 0.780, 0.597, 0.792),
        0.85: (0.733, 0.688, 0.785, 0.650, 0.793),
        0.90: (0.757, 0.721, 0.789, 0.699, 0.794),
        0.95: (0.780, 0.754, 0.794, 0.745, 0.796),
        0.99: (0.796, 0.785, 0.799, 0.783, 0.799),
    },
    (0.9, 0.0): {
        0.50: (0.630, 0.545, 0.870, 0.307, 0.898),
        0.60: (0.709, 0.637, 0.875, 0.476, 0.896),
        0.70: (0.774, 0.717, 0.880, 0.622, 0.895),
        0.80: (0.826, 0.785, 0.886, 0.739, 0.895),
        0.85: (0.848, 0.815, 0.889, 0.786, 0.895),
        0.90: (0.868, 0.842, 0.892, 0.826, 0.896),
        0.95: (0.885, 0.868, 0.896, 0.862, 0.897),
        0.99: (0.897, 0.890, 0.899, 0.889, 0.899),
    },
    (0.8, 0.1): {
        0.50: (0.508, 0.422, 0.718, 0.207, 0.756),
        0.60: (0.583, 0.504, 0.735, 0.344, 0.763),
        0.70: (0.650, 0.581, 0.752, 0.478, 0.770),
        0.80: (0.707, 0.653, 0.768, 0.597, 0.778),
        0.85: (0.733, 0.688, 0.776, 0.650, 0.783),
        0.90: (0.757, 0.721, 0.784, 0.699, 0.788),
        0.95: (0.780, 0.754, 0.792, 0.745, 0.793),
        0.99: (0.796, 0.785, 0.798, 0.783, 0.798),
    },
    (0.9, 0.1): {
        0.50: (0.630, 0.545, 0.838, 0.307, 0.867),
        0.60: (0.709, 0.637, 0.852, 0.476, 0.872),
        0.70: (0.774, 0.717, 0.864, 0.622, 0.878),
        0.80: (0.826, 0.785, 0.877, 0.739, 0.884),
        0.85: (0.848, 0.815, 0.883, 0.786, 0.887),
        0.90: (0.868, 0.842, 0.888, 0.826, 0.891),
        0.95: (0.885, 0.868, 0.894, 0.862, 0.895),
        0.99: (0.897, 0.890, 0.899, 0.889, 0.899),
    },
}

TABLE_COLUMNS = ("fixed", "pocock_stage1", "pocock_overall", "obf_stage1", "obf_overall")


def bivariate_cdf_oracle(a: float, b: float, rho: float) -> float:
    """Independent nested-quadrature oracle for P(Z1 <= a, Z2 <= b).

    Integrates the conditional probability P(Z2 <= b | Z1 = x) against the
    marginal density; does not share any code path with the Genz reduction.
    """
    scale = math.sqrt(1.0 - rho * rho)

    def integrand(x):
        return (
            std_normal_cdf((b - rho * x) / scale)
            * math.exp(-0.5 * x * x)
            / math.sqrt(2.0 * math.pi)
        )

    value, _ = scipy.integrate.quad(integrand, -9.0, a, epsabs=1e-13, limit=400)
    return value


@pytest.fixture
def published_table():
    return PUBLISHED_TABLE
