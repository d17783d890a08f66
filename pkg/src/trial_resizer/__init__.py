"""Decision support for two-arm superiority trials interrupted mid-recruitment.

Answers "stop now, convert to a two-look group-sequential design, or
resize?" with exact normal-theory power formulas, dilution-effect joint
laws, boundary calibration, and stage-2 sample-size adjustment, plus a
seeded Monte-Carlo oracle, a CLI, and a JSON HTTP service.
"""

from .design import DesignParams, SampleSize, power_at_fraction, power_given_n, required_sample_size
from .dilution import (
    AbsoluteChange,
    DilutionSpec,
    GeneralDilutionSpec,
    JointLaw,
    RelativeChange,
    convert_mean_change,
    fixed_power_diluted,
    joint_law,
    joint_law_general,
)
from .errors import (
    CollinearityError,
    CsvParseError,
    DegenerateQuadraticError,
    DomainError,
    InfeasibleError,
    NumericalError,
    StratumCollapseError,
    TrialResizerError,
)
from .gaussian import POS_INF, bivariate_normal_cdf, integrate, std_normal_cdf, std_normal_quantile
from .gsd import (
    CombinationSpec,
    GsdDesign,
    PowerBreakdown,
    boundary_for_scheme,
    combination_statistic,
    conditional_error,
    conditional_power,
    gsd_power,
    obf_boundary,
    pocock_boundary,
    second_stage_statistic,
    spending_boundary,
    type_one_error,
)
from .montecarlo import McConfig, McPowerResult, mc_two_cohort_power, simulate_joint_statistics
from .resize import ResizeResult, XiRoots, adjusted_stage2_n, adjusted_stage2_n_gsd, xi_roots
from .shortterm import (
    InterimEstimate,
    Record,
    ShortTermDataset,
    interim_information_fraction,
    marschner_becker,
    van_lancker_estimate,
)

__version__ = "0.1.0"
