"""Two reference comparison methods.

* :func:`elevation_approximation` - elevate the rational curve in
  homogeneous form and drop the weights of the elevated control polygon.
  Converges uniformly (with all derivatives) as the elevation grows, but
  slowly.
* :func:`lu_iterate` - progressive iterative approximation: the control
  points are repeatedly corrected by the interpolation residual at fixed
  parameter nodes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ratbez.bezier import BezierCurve, RationalBezierCurve, bernstein_matrix, degree_elevate, rational_eval
from ratbez.errors import ValidationError


def huang_approximation(curve: RationalBezierCurve, h: int) -> BezierCurve:
    """Polynomial curve of degree n+h built from the h-times elevated control points."""
    return BezierCurve(degree_elevate(curve, h).control_points)


elevation_approximation = huang_approximation


def lu_nodes(m: int, kind: str = "uniform") -> np.ndarray:
    """m+1 increasing nodes in [0, 1] including both ends."""
    if m < 1:
        raise ValidationError("need a target degree of at least 1")
    i = np.arange(m + 1)
    if kind == "uniform":
        t = i / m
    elif kind == "chebyshev":
        t = 0.5 * (1.0 - np.cos(i * np.pi / m))
    else:
        raise ValidationError(f"unknown node distribution {kind!r}")
    t[0], t[-1] = 0.0, 1.0
    return t


@dataclass(frozen=True, eq=False)
class LuResult:
    curve: BezierCurve
    residuals: np.ndarray
    nodes: np.ndarray
    lam: float
    snapshots: dict = field(default_factory=dict)


def lu_iterate(curve: RationalBezierCurve, m: int, nodes="uniform", lam: float = 1.0,
               iters: int = 100, keep=()) -> LuResult:
    """Run ``iters`` progressive-iteration steps towards degree ``m``.

    ``residuals[h]`` is max_i ||R(t_i) - V^h(t_i)|| for h = 0..iters.
    Curves at the iteration counts listed in ``keep`` are returned in
    ``snapshots``.
    """
    t = lu_nodes(m, nodes) if isinstance(nodes, str) else np.asarray(nodes, dtype=float)
    if t.shape != (m + 1,):
        raise ValidationError(f"need exactly m+1 = {m + 1} nodes")
    if t[0] != 0.0 or t[-1] != 1.0 or np.any(np.diff(t) <= 0):
        raise ValidationError("nodes must increase strictly from 0 to 1")
    if iters < 0:
        raise ValidationError("iteration count must be non-negative")
    keep = set(keep)
    A = bernstein_matrix(m, t)
    targets = rational_eval(curve, t)
    v = targets.copy()
    residuals = np.empty(iters + 1)
    snapshots = {}
    for h in range(iters + 1):
        res = targets - A @ v
        residuals[h] = np.linalg.norm(res, axis=1).max()
        if h in keep:
            snapshots[h] = BezierCurve(v.copy())
        if h < iters:
            v = v + lam * res
    return LuResult(BezierCurve(v), residuals, t, float(lam), snapshots)
