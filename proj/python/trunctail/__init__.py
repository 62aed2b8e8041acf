"""Tail-index and second-order parameter estimation for randomly
right-truncated heavy-tailed data."""

from ._trunctail import (  # noqa: F401
    ConstantBundle,
    DegenerateDenominatorError,
    EmptySampleError,
    McCell,
    NotAdmissibleError,
    ObservedSample,
    ProductLimitTables,
    QuadratureError,
    Rho1Estimate,
    SecondOrderContext,
    TailEstimates,
    TieError,
    TruncationModel,
    bmn_weights,
    build_tables,
    burr_quantile,
    burr_survival,
    constants,
    coverage,
    d_fn,
    delta_alpha_fn,
    delta_factor,
    draw_truncated_sample,
    estimate_a0,
    estimate_gamma1_reduced,
    estimate_rho1,
    full_pipeline,
    m_alpha,
    normal_limit_bias,
    q_alpha,
    q_alpha_stat,
    reiss_thomas_k,
    run_cell,
    s_alpha,
    s_alpha_inverse,
    s_alpha_prime,
    s_alpha_stat,
    sigma_alpha_sq,
    sigma_bmn_sq,
    sigma_star_sq,
    solve_gamma2,
    u_n,
    upper_tail_mass,
    woodroofe_cdf,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
