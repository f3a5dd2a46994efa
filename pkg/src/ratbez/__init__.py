"""Polynomial approximation of rational Bezier curves.

The main entry point is :func:`approximate`, which computes the
constrained, Jacobi-weighted least-squares Bezier approximant of a
rational Bezier curve using the constrained dual Bernstein basis.
"""
from ratbez.approximator import (ApproximationRequest, ApproximationResult, approximate,
                                 approximate_composite)
from ratbez.baselines import huang_approximation, lu_iterate
from ratbez.bezier import (BezierCurve, CompositeCurve, RationalBezierCurve, bernstein_eval,
                           degree_elevate, poly_eval, rational_eval, subdivide)
from ratbez.dual import ConstraintSpec, JacobiWeight, build_ctable
from ratbez.errors import ConvergenceError, NumericalError, RatBezError, ValidationError
from ratbez.kernels import BACKEND
from ratbez.metrics import ErrorReport, error_report, l2_error, max_error

__version__ = "0.1.0"

__all__ = [
    "ApproximationRequest", "ApproximationResult", "approximate", "approximate_composite",
    "huang_approximation", "lu_iterate",
    "BezierCurve", "CompositeCurve", "RationalBezierCurve", "bernstein_eval", "degree_elevate",
    "poly_eval", "rational_eval", "subdivide",
    "ConstraintSpec", "JacobiWeight", "build_ctable",
    "ConvergenceError", "NumericalError", "RatBezError", "ValidationError",
    "BACKEND", "ErrorReport", "error_report", "l2_error", "max_error",
]
