"""Extremes of dependent extended-Weibull lifetimes under Archimedean copulas.

The package evaluates lifetime distributions of series/parallel systems
whose components follow extended Weibull laws coupled by an Archimedean
(survival) copula, and numerically verifies or falsifies stochastic-order
relations between two such systems.
"""

from .archimedean import (
    Family,
    Generator,
    check_log_concave_psi,
    check_phi_condition,
    check_psi_ratio,
    check_star_condition_max,
    check_star_condition_min,
    check_superadditive,
    exp_reciprocal,
    gumbel_variant,
    independence,
)
from .errors import ContractError, ConvergenceError, DomainError
from .ew_marginal import EwParams, cdf, hazard, pdf, quantile, rev_hazard, sf
from .extremes import (
    CountDistribution,
    CoupledSystem,
    Coupling,
    Statistic,
    dist_handle,
    extreme_cdf,
    extreme_pdf,
    extreme_quantile,
    extreme_sf,
    marginal_handle,
    max_cdf,
    min_hazard_independent,
    min_sf,
    mixture_handle,
    mixture_max_cdf,
    mixture_min_sf,
)
from .grids import GridSpec, Spacing
from .majorization import (
    log_vector,
    majorizes,
    schur_convexity_scan,
    weak_submajorizes,
    weak_supermajorizes,
)
from .scenarios import (
    Scenario,
    TheoremCheck,
    builtin_scenarios,
    fuzz_theorem,
    run_all,
    run_random_n_scenario,
    run_scenario,
)
from .stochastic_orders import (
    DistHandle,
    OrderVerdict,
    check_dispersive,
    check_hazard_rate,
    check_lorenz,
    check_reversed_hazard,
    check_star,
    check_usual_st,
    find_crossing,
)
from .verdicts import ConditionVerdict, Status

__version__ = "0.1.0"
