"""Numerical laboratory for prime-counting bias at the square-root scale.

The package provides, bottom-up:

- ``summation``: compensated (error-bounded) reductions.
- ``sieve``: von Mangoldt / primality tables with a binary cache format.
- ``classical``: Chebyshev and prime-counting step functions, logarithmic
  integrals, and partial-summation integrals of their deficits.
- ``characters``: exact Dirichlet character groups built on integer
  arithmetic, Gauss sums, and root numbers.
- ``specials``: zeta, Hurwitz zeta, Dirichlet L-functions, their central
  values and logarithmic derivatives, and the modulus constant C(q).
- ``zeros``: critical-line zero computation, bundled zeta ordinates, and
  precision-guarded oscillating sums over zeros.
- ``bias_sums``: the weighted prime sums under study (log-weighted
  deficits, Riesz normalizations, restricted residue sums, prime races,
  screw functions, modulus averages) with a deterministic sweep driver.
- ``explicit``: truncated explicit-formula oracles whose residuals
  quantify the zero-sum truncation error for each sum kind.
- ``findings``: structured reporting when a hypothesis-conditional
  expectation fails on sampled data.
- ``config`` / ``cli``: reproducible run configuration and the
  ``prime-bias-lab`` command-line front end.
"""

from .bias_sums import (
    SUM_KINDS,
    HypothesisError,
    SumSeries,
    SumSpec,
    chebyshev_weight_sum,
    f_log,
    f_log_shifted,
    modulus_average_sum,
    prime_only_sqrtlog,
    prime_square_log_sum,
    psi_half,
    residue_sums,
    riesz_sum,
    screw_g0,
    screw_ginf,
    screw_total,
    sweep,
    titchmarsh_sum,
)
from .characters import (
    CharacterGroup,
    DirichletCharacter,
    character_group,
    chi4,
    euler_phi,
    gauss_sum,
    induce_primitive,
    root_number,
)
from .classical import (
    chebyshev_psi,
    chebyshev_theta,
    integral_of_li,
    johnston_integral_pi,
    johnston_integral_theta,
    log_integral,
    mertens_sum,
    prime_pi,
    titchmarsh_divisor_sum,
)
from .config import GridSpec, RunConfig, cache_dir, config_from_sources
from .explicit import (
    ExplicitEval,
    ShiftedRieszDecomposition,
    SingularityError,
    character_log_weighted_formula,
    character_power_sum_formula,
    character_shifted_formula,
    log_weighted_formula,
    power_sum_formula,
    residual_profile,
    residue_zero_formula,
    shifted_log_weighted_formula,
    shifted_riesz_decomposition,
    sqrt_scale_formula,
    trivial_zero_tail,
    zero_block,
)
from .findings import Finding, ScanReport, emit_findings, sign_scan, window_scan
from .sieve import (
    CacheInvalid,
    CapacityError,
    MangoldtTable,
    build_mangoldt_table,
    divisor_count_table,
    load_table,
    save_table,
)
from .specials import (
    CentralConstants,
    c_of_q,
    central_constants,
    dirichlet_L,
    hurwitz_zeta,
    l_central_data,
    threshold_moduli,
    xi_logderiv,
    zeta,
    zeta_logderiv,
    zeta_logderiv_prime,
)
from .summation import CompensatedSum, comp_sum
from .zeros import (
    PhasePrecisionError,
    ZeroSet,
    compute_dirichlet_zeros,
    compute_zeta_zeros,
    load_bundled_zeta_zeros,
    load_zeros,
    save_zeros,
    zero_count_estimate,
    zero_sum,
)

__version__ = "0.1.0"

__all__ = [
    "SUM_KINDS",
    "CacheInvalid",
    "CapacityError",
    "CentralConstants",
    "CharacterGroup",
    "CompensatedSum",
    "DirichletCharacter",
    "ExplicitEval",
    "Finding",
    "GridSpec",
    "HypothesisError",
    "MangoldtTable",
    "PhasePrecisionError",
    "RunConfig",
    "ScanReport",
    "ShiftedRieszDecomposition",
    "SingularityError",
    "SumSeries",
    "SumSpec",
    "ZeroSet",
    "build_mangoldt_table",
    "c_of_q",
    "cache_dir",
    "central_constants",
    "character_group",
    "character_log_weighted_formula",
    "character_power_sum_formula",
    "character_shifted_formula",
    "chebyshev_psi",
    "chebyshev_theta",
    "chebyshev_weight_sum",
    "chi4",
    "comp_sum",
    "compute_dirichlet_zeros",
    "compute_zeta_zeros",
    "config_from_sources",
    "dirichlet_L",
    "divisor_count_table",
    "emit_findings",
    "euler_phi",
    "f_log",
    "f_log_shifted",
    "gauss_sum",
    "hurwitz_zeta",
    "induce_primitive",
    "integral_of_li",
    "johnston_integral_pi",
    "johnston_integral_theta",
    "l_central_data",
    "load_bundled_zeta_zeros",
    "load_table",
    "load_zeros",
    "log_integral",
    "log_weighted_formula",
    "mertens_sum",
    "modulus_average_sum",
    "power_sum_formula",
    "prime_only_sqrtlog",
    "prime_pi",
    "prime_square_log_sum",
    "psi_half",
    "residual_profile",
    "residue_sums",
    "residue_zero_formula",
    "riesz_sum",
    "root_number",
    "save_table",
    "save_zeros",
    "screw_g0",
    "screw_ginf",
    "screw_total",
    "shifted_log_weighted_formula",
    "shifted_riesz_decomposition",
    "sign_scan",
    "sqrt_scale_formula",
    "sweep",
    "threshold_moduli",
    "titchmarsh_divisor_sum",
    "titchmarsh_sum",
    "trivial_zero_tail",
    "window_scan",
    "xi_logderiv",
    "zero_block",
    "zero_count_estimate",
    "zero_sum",
    "zeta",
    "zeta_logderiv",
    "zeta_logderiv_prime",
]
