"""Weighted trapezoid / midpoint error bounds for (alpha, m)-convex functions."""

from ._hhbound import (  # noqa: F401
    BoundCase,
    BoundReport,
    ConvergenceError,
    DomainError,
    Function,
    IntegralResult,
    Interval,
    InvalidArgument,
    Verdict,
    Witness,
    build_case,
    bound,
    check_alpha_m_convex,
    check_hh,
    constant_A,
    constant_M,
    family_ids,
    integrate,
    integrate_function,
    kernel_K,
    lhs_endpoint,
    lhs_point,
    make_interval,
    proof_integral,
    reduction_check,
    residual_lemma11,
    residual_lemma12,
    run_suite,
    step_weight,
    sup_norm,
    verify_case,
)
