"""Bernstein and Bezier primitives.

Polynomial and rational Bezier curves live on the parameter interval
[0, 1].  Rational curves are manipulated in homogeneous form, i.e. as the
polynomial curve with control data ``(w_i * r_i, w_i)`` in one extra
dimension; projection back to R^d only happens on evaluation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ratbez import kernels
from ratbez.errors import ValidationError
from ratbez.special import TABLE_MAX, binom, log_binom


def _points(data, name="control_points"):
    pts = np.array(data, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
        raise ValidationError(f"{name} must be a non-empty sequence of points")
    if not np.all(np.isfinite(pts)):
        raise ValidationError(f"{name} must be finite")
    pts.setflags(write=False)
    return pts


def _params(t):
    arr = np.asarray(t, dtype=float)
    return arr.ndim == 0, np.atleast_1d(arr).ravel()


@dataclass(frozen=True, eq=False)
class BezierCurve:
    """Degree-m polynomial Bezier curve in R^d.

    ``control_points`` may be given as a flat sequence (d = 1) or as m+1
    rows of d coordinates; it is stored as a read-only (m+1, d) array.
    """

    control_points: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "control_points", _points(self.control_points))

    @property
    def degree(self) -> int:
        return self.control_points.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.control_points.shape[1]

    def __call__(self, t):
        return poly_eval(self, t)

    def __repr__(self):
        return f"BezierCurve(degree={self.degree}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class RationalBezierCurve:
    """Degree-n rational Bezier curve with positive weights."""

    control_points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = _points(self.control_points)
        w = np.array(self.weights, dtype=float).ravel()
        if w.shape[0] != pts.shape[0]:
            raise ValidationError(
                f"got {pts.shape[0]} control points but {w.shape[0]} weights")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValidationError("weights must be finite and strictly positive")
        w.setflags(write=False)
        object.__setattr__(self, "control_points", pts)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_homogeneous(cls, hom):
        hom = np.asarray(hom, dtype=float)
        w = hom[:, -1]
        return cls(hom[:, :-1] / w[:, None], w)

    @classmethod
    def from_polynomial(cls, curve: BezierCurve):
        return cls(curve.control_points, np.ones(curve.degree + 1))

    @property
    def degree(self) -> int:
        return self.control_points.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.control_points.shape[1]

    def homogeneous(self):
        """Control data ``(w_i r_i, w_i)`` as an (n+1, d+1) array."""
        return np.hstack([self.control_points * self.weights[:, None], self.weights[:, None]])

    def __call__(self, t):
        return rational_eval(self, t)

    def __repr__(self):
        return f"RationalBezierCurve(degree={self.degree}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class CompositeCurve:
    """Ordered chain of curve segments, each parameterised on [0, 1]."""

    segments: tuple
    continuity_order: int = 0

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise ValidationError("a composite curve needs at least one segment")
        if self.continuity_order < 0:
            raise ValidationError("continuity order must be non-negative")
        dims = {s.dim for s in segs}
        if len(dims) != 1:
            raise ValidationError("all segments must share one dimension")
        for a, (left, right) in enumerate(zip(segs, segs[1:])):
            p, q = _eval_any(left, 1.0), _eval_any(right, 0.0)
            scale = 1.0 + max(np.abs(p).max(), np.abs(q).max())
            if np.abs(p - q).max() > 1e-9 * scale:
                raise ValidationError(f"segments {a} and {a + 1} do not share their join point")
        object.__setattr__(self, "segments", segs)

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __getitem__(self, idx):
        return self.segments[idx]


def _eval_any(curve, t):
    if isinstance(curve, RationalBezierCurve):
        return rational_eval(curve, t)
    return poly_eval(curve, t)


def bernstein_eval(n: int, i: int, t):
    """Bernstein basis polynomial B^n_i(t) = C(n,i) t^i (1-t)^(n-i)."""
    if n < 0 or i < 0 or i > n:
        raise ValidationError(f"Bernstein index i={i} out of range for degree n={n}")
    scalar, tt = _params(t)
    if n <= TABLE_MAX:
        val = binom(n, i) * tt**i * (1.0 - tt) ** (n - i)
    else:
        with np.errstate(divide="ignore"):
            lg = log_binom(n, i) + i * np.log(tt) + (n - i) * np.log1p(-tt)
        val = np.exp(lg)
    return float(val[0]) if scalar else val


def bernstein_matrix(n: int, t) -> np.ndarray:
    """Collocation matrix ``A[q, i] = B^n_i(t_q)``."""
    _, tt = _params(t)
    return np.stack([bernstein_eval(n, i, tt) for i in range(n + 1)], axis=1)


def poly_eval(curve: BezierCurve, t):
    """Evaluate a polynomial Bezier curve by de Casteljau.

    Returns shape (d,) for scalar ``t`` and (len(t), d) otherwise.
    """
    scalar, tt = _params(t)
    out = kernels.decasteljau(curve.control_points, tt)
    return out[0] if scalar else out


def rational_eval(curve: RationalBezierCurve, t):
    """Evaluate a rational Bezier curve with the homogeneous de Casteljau scheme."""
    scalar, tt = _params(t)
    hom = kernels.decasteljau(curve.homogeneous(), tt)
    out = hom[:, :-1] / hom[:, -1:]
    # projection of w_0*r_0 need not round back to r_0
    out[tt == 0.0] = curve.control_points[0]
    out[tt == 1.0] = curve.control_points[-1]
    return out[0] if scalar else out


def _elevate_array(ctrl, h):
    for _ in range(h):
        n = ctrl.shape[0] - 1
        a = (np.arange(n + 2) / (n + 1))[:, None]
        lower = np.vstack([np.zeros((1, ctrl.shape[1])), ctrl])
        upper = np.vstack([ctrl, np.zeros((1, ctrl.shape[1]))])
        ctrl = a * lower + (1.0 - a) * upper
    return ctrl


def degree_elevate(curve, h: int):
    """Raise the degree of a polynomial or rational curve by ``h``."""
    if h < 0:
        raise ValidationError("elevation amount must be non-negative")
    if isinstance(curve, RationalBezierCurve):
        return RationalBezierCurve.from_homogeneous(_elevate_array(curve.homogeneous(), h))
    return BezierCurve(_elevate_array(np.array(curve.control_points), h))


def _split_array(ctrl, t0):
    rows = [ctrl]
    for _ in range(ctrl.shape[0] - 1):
        prev = rows[-1]
        rows.append((1.0 - t0) * prev[:-1] + t0 * prev[1:])
    left = np.array([r[0] for r in rows])
    right = np.array([r[-1] for r in reversed(rows)])
    return left, right


def subdivide(curve, t0: float):
    """Split ``curve`` at ``t0`` into two curves, each reparameterised to [0, 1]."""
    if not 0.0 < t0 < 1.0:
        raise ValidationError(f"subdivision parameter must lie in (0, 1), got {t0}")
    if isinstance(curve, RationalBezierCurve):
        left, right = _split_array(curve.homogeneous(), t0)
        return RationalBezierCurve.from_homogeneous(left), RationalBezierCurve.from_homogeneous(right)
    left, right = _split_array(np.array(curve.control_points), t0)
    return BezierCurve(left), BezierCurve(right)


def forward_difference(seq: Sequence, j: int):
    """j-th forward difference of ``seq`` taken at its head.

    ``seq`` may hold scalars or points (differences act along axis 0).
    """
    arr = np.asarray(seq, dtype=float)
    if j < 0:
        raise ValidationError("difference order must be non-negative")
    if arr.shape[0] < j + 1:
        raise ValidationError(f"need at least {j + 1} terms for a difference of order {j}")
    out = np.diff(arr[: j + 1], n=j, axis=0)[0]
    return float(out) if out.ndim == 0 else out


def endpoint_derivative(curve: BezierCurve, end: str, j: int):
    """j-th derivative of a polynomial Bezier curve at t=0 (``left``) or t=1 (``right``)."""
    m = curve.degree
    if j < 0 or j > m:
        raise ValidationError(f"derivative order {j} exceeds degree {m}")
    if end == "left":
        head = curve.control_points
    elif end == "right":
        head = curve.control_points[m - j:]
    else:
        raise ValidationError(f"end must be 'left' or 'right', got {end!r}")
    factor = math.perm(m, j)
    return factor * np.atleast_1d(forward_difference(head, j))
