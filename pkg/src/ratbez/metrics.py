"""Error functionals between a rational curve and a polynomial approximant.

E(t) = ||R(t) - P(t)||; ``e_inf`` is its maximum over [0, 1] and
``e_2(alpha, beta)`` the square root of its Jacobi-weighted mean square.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ratbez.bezier import BezierCurve, RationalBezierCurve, poly_eval, rational_eval
from ratbez.chebyshev import DEFAULT_EPS, M_MAX, chebyshev_fit, chebyshev_nodes, jacobi_integral
from ratbez.dual import JacobiWeight

DEFAULT_SAMPLES = 10_000


@dataclass(frozen=True)
class ErrorReport:
    e_inf: float
    e_2: float
    sample_count: int
    argmax_t: float
    alpha: float = 0.0
    beta: float = 0.0


def _eval(curve, t):
    if isinstance(curve, RationalBezierCurve):
        return rational_eval(curve, t)
    return poly_eval(curve, t)


def error_function(R, P, t):
    """E(t) at an array of parameters."""
    return np.linalg.norm(_eval(R, t) - _eval(P, t), axis=-1)


def max_error(R, P, samples: int = DEFAULT_SAMPLES):
    """Return ``(e_inf, argmax_t)`` from ``samples`` uniform points incl. both ends."""
    if samples < 2:
        raise ValueError("need at least two samples")
    t = np.linspace(0.0, 1.0, samples)
    err = error_function(R, P, t)
    idx = int(np.argmax(err))
    return float(err[idx]), float(t[idx])


def l2_error(R, P, w: JacobiWeight = JacobiWeight(), eps: float = DEFAULT_EPS, m_max: int = M_MAX) -> float:
    """Jacobi-weighted L2 distance between ``R`` and ``P`` on [0, 1].

    The squared error is interpolated on [-1, 1] by an adaptive Chebyshev
    sum and integrated exactly against the Jacobi weight.  ``eps`` is
    relative to the size of the squared error.
    """
    def g(x):
        return error_function(R, P, 0.5 * (1.0 + np.asarray(x))) ** 2

    scale = float(np.max(g(chebyshev_nodes(32))))
    series = chebyshev_fit(g, eps * max(1.0, scale), m_max)
    val = jacobi_integral(w.alpha, w.beta, series) * 2.0 ** (-w.sigma)
    return math.sqrt(max(val, 0.0))


def error_report(R, P, w: JacobiWeight = JacobiWeight(), samples: int = DEFAULT_SAMPLES,
                 eps: float = DEFAULT_EPS) -> ErrorReport:
    e_inf, t_max = max_error(R, P, samples)
    return ErrorReport(e_inf, l2_error(R, P, w, eps), samples, t_max, w.alpha, w.beta)
