"""bandlim: Legendre / spherical-Bessel transform pair and ODE solver."""

from .errors import (BandlimError, ConvergenceError, DomainError,
                     EvaluationError, InvalidOrderError, InvalidRuleError,
                     RuleTooSmallError, SingularSymbolError)
from .odesolve import (DifferentialOperator, SolutionBundle, apply_operator,
                       operator_from_json, operator_to_json, solve,
                       symbol_eval)
from .quadrature import (LineIntegralParams, QuadratureRule,
                         gauss_legendre_rule, integrate_compact,
                         integrate_oscillatory_line)
from .specfun import (half_integer_bessel_via_poisson, legendre_all,
                      legendre_p, spherical_j, spherical_j_all)
from .transform import (CALIBRATED, PAPER_C, PAPER_QUARTER, BesselSeries,
                        LegendreSeries, TransformConfig, bauer_partial_sum,
                        bessel_projection, calibrate_normalization, coeff_bar,
                        coeff_unbar, forward_transform, inverse_transform,
                        legendre_projection, orthogonality_matrix_j,
                        roundtrip, series_from_json, series_to_json)

__all__ = [
    "BandlimError", "ConvergenceError", "DomainError", "EvaluationError",
    "InvalidOrderError", "InvalidRuleError", "RuleTooSmallError",
    "SingularSymbolError",
    "DifferentialOperator", "SolutionBundle", "apply_operator",
    "operator_from_json", "operator_to_json", "solve", "symbol_eval",
    "LineIntegralParams", "QuadratureRule", "gauss_legendre_rule",
    "integrate_compact", "integrate_oscillatory_line",
    "half_integer_bessel_via_poisson", "legendre_all", "legendre_p",
    "spherical_j", "spherical_j_all",
    "CALIBRATED", "PAPER_C", "PAPER_QUARTER", "BesselSeries",
    "LegendreSeries", "TransformConfig", "bauer_partial_sum",
    "bessel_projection", "calibrate_normalization", "coeff_bar",
    "coeff_unbar", "forward_transform", "inverse_transform",
    "legendre_projection", "orthogonality_matrix_j", "roundtrip",
    "series_from_json", "series_to_json",
]

__version__ = "0.1.0"
