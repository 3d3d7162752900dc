"""Stieltjes constants through summations over pF(p+1) hypergeometric
functions, with independent verification oracles for every identity used."""

from .errors import (ConstantDeterminationFailure, DomainError, HypStieltjesError,
                     IllConditionedFit, InvalidParameters, InvalidSpec,
                     NonConvergence, OrderUnavailable, RecursionDepthExceeded,
                     ToleranceNotMet)
from .hypergeom import (F23_32, F34_52, F45_52, AsymExpansion, Family, HypSpec,
                        SeriesResult, Z_SWITCH, asym_algebraic, asym_exponential,
                        eval_auto, eval_taylor, integrate_spec)
from .oracle import (P1Evaluator, QuadratureProblem, appendix_closed_form,
                     appendix_verify, integrate, stieltjes_limit,
                     stieltjes_quadrature)
from .precision import DEFAULT_BITS, Real, workprec
from .stieltjes import (StieltjesRequest, TailModel, digamma_series, euler_gamma,
                        fit_tail, gamma1, gamma1_half, gamma2, gamma_j,
                        stieltjes_constant)
from .trigintegrals import (J_MAX, RecursionState, X_SWITCH, build_recursion, ci,
                            ci_log_integral, laplace_form_3f4, logsine_finite,
                            logsine_tail, mu_sine_integral, si_lower)

__version__ = "0.1.0"

__all__ = [
    "AsymExpansion", "ConstantDeterminationFailure", "DEFAULT_BITS", "DomainError",
    "F23_32", "F34_52", "F45_52", "Family", "HypSpec", "HypStieltjesError",
    "IllConditionedFit", "InvalidParameters", "InvalidSpec", "J_MAX",
    "NonConvergence", "OrderUnavailable", "P1Evaluator", "QuadratureProblem",
    "Real", "RecursionDepthExceeded", "RecursionState", "SeriesResult",
    "StieltjesRequest", "TailModel", "ToleranceNotMet", "X_SWITCH", "Z_SWITCH",
    "appendix_closed_form", "appendix_verify", "asym_algebraic",
    "asym_exponential", "build_recursion", "ci", "ci_log_integral",
    "digamma_series", "euler_gamma", "eval_auto", "eval_taylor", "fit_tail",
    "gamma1", "gamma1_half", "gamma2", "gamma_j", "integrate", "integrate_spec",
    "laplace_form_3f4", "logsine_finite", "logsine_tail", "mu_sine_integral",
    "si_lower", "stieltjes_constant", "stieltjes_limit", "stieltjes_quadrature",
    "workprec",
]
