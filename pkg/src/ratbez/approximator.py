"""Constrained weighted least-squares polynomial approximation of rational curves.

Given a rational Bezier curve R of degree n, :func:`approximate` returns
the degree-m Bezier curve P that minimises

    int_0^1 (1-t)^alpha t^beta ||R(t) - P(t)||^2 dt

subject to P matching the first k derivatives (orders 0..k-1) of R at
t=0 and the first l at t=1.  The constrained control points follow from
the endpoint derivatives of R; the free ones are inner products with the
constrained dual Bernstein basis, which reduce to the c-table, the
boundary coefficients K_ij and the rational moments I_h.

The c-table and moments depend only on the weights, so they are built
once and shared by all d coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ratbez.bezier import (BezierCurve, CompositeCurve, RationalBezierCurve, degree_elevate,
                           subdivide)
from ratbez.chebyshev import DEFAULT_EPS, M_MAX, MomentVector, rational_moments
from ratbez.dual import (ConstraintSpec, DualBasisTable, JacobiWeight, boundary_indices,
                         build_ctable, k_matrix)
from ratbez.errors import ValidationError
from ratbez.metrics import ErrorReport, error_report
from ratbez.special import binom_row, log_beta, log_binom


@dataclass(frozen=True)
class ApproximationRequest:
    curve: RationalBezierCurve
    m: int
    constraints: ConstraintSpec = ConstraintSpec()
    weight: JacobiWeight = JacobiWeight()
    eps: float = DEFAULT_EPS
    m_max: int = M_MAX

    def __post_init__(self):
        if isinstance(self.curve, BezierCurve):
            object.__setattr__(self, "curve", RationalBezierCurve.from_polynomial(self.curve))
        if self.m < 0:
            raise ValidationError("target degree must be non-negative")
        self.constraints.check(self.m)


@dataclass(frozen=True, eq=False)
class ApproximationResult:
    approximant: BezierCurve
    rho0: np.ndarray
    rho1: np.ndarray
    moments: MomentVector | None
    table: DualBasisTable
    residual_orthogonality: float
    errors: ErrorReport | None = field(default=None)

    @property
    def chebyshev_order(self):
        return None if self.moments is None else self.moments.M


def endpoint_rho(curve: RationalBezierCurve, end: str, max_order: int) -> np.ndarray:
    """Derivatives R^(i) at t=0 (``left``) or t=1 (``right``) for i = 0..max_order.

    Returns an array of shape (max_order+1, d).
    """
    n = curve.degree
    if max_order > n:
        raise ValidationError(f"derivative order {max_order} exceeds curve degree {n}")
    if max_order < 0:
        return np.zeros((0, curve.dim))
    w = curve.weights
    wr = curve.control_points * w[:, None]
    if end == "right":
        # work on the reversed curve; derivatives pick up (-1)^i
        w, wr = w[::-1], wr[::-1]
    elif end != "left":
        raise ValidationError(f"end must be 'left' or 'right', got {end!r}")

    def delta(seq, i):
        return np.diff(seq[: i + 1], n=i, axis=0)[0]

    fact = math.factorial
    rho = np.zeros((max_order + 1, curve.dim))
    for i in range(max_order + 1):
        acc = delta(wr, i) / fact(n - i)
        for j in range(i):
            acc = acc - math.comb(i, j) * delta(w, i - j) / fact(n - i + j) * rho[j]
        rho[i] = fact(n) / w[0] * acc
    if end == "right":
        rho *= ((-1.0) ** np.arange(max_order + 1))[:, None]
    return rho


def boundary_control_points(rho0, rho1, m: int, cons: ConstraintSpec, dim: int | None = None):
    """Control points fixed by the endpoint constraints.

    ``rho0``/``rho1`` hold the endpoint derivatives of orders 0..k-1 and
    0..l-1, one row per order.  Returns ``(left, right)`` where ``left``
    holds p_0..p_{k-1} and ``right`` holds p_{m-l+1}..p_m (in increasing
    index order).
    """
    k, l = cons.k, cons.l
    rho0 = np.asarray(rho0, dtype=float)
    rho1 = np.asarray(rho1, dtype=float)
    if dim is None:
        dim = next((r.size // r.shape[0] for r in (rho0, rho1) if r.ndim and r.shape[0]), 1)
    rho0 = rho0.reshape(-1, dim)
    rho1 = rho1.reshape(-1, dim)
    d = dim
    p = np.zeros((m + 1, d))
    for i in range(k):
        acc = math.factorial(m - i) / math.factorial(m) * rho0[i]
        for j in range(i):
            acc = acc - (-1) ** (i + j) * math.comb(i, j) * p[j]
        p[i] = acc
    for i in range(l):
        acc = (-1) ** i * math.factorial(m - i) / math.factorial(m) * rho1[i]
        for j in range(1, i + 1):
            acc = acc - (-1) ** j * math.comb(i, j) * p[m - i + j]
        p[m - i] = acc
    return p[:k], p[m - l + 1:]


def _moment_operator(n, m, cons, moments):
    """Matrix W with <R, B^m_j> = sum_h W[j, h] w_h r_h for j = k..m-l (long double)."""
    k, l = cons.k, cons.l
    N = n + m
    ext = np.longdouble
    W = np.empty((m - k - l + 1, n + 1), dtype=ext)
    for a, j in enumerate(range(k, m - l + 1)):
        for h in range(n + 1):
            ratio = ext(math.comb(n, h) * math.comb(m, j)) / ext(math.comb(N, j + h))
            W[a, h] = ratio * moments.values[j + h - k]
    return W


def inner_control_points(curve: RationalBezierCurve, m: int, cons: ConstraintSpec, w: JacobiWeight,
                         table: DualBasisTable, moments: MomentVector, left, right) -> np.ndarray:
    """Free control points p_k..p_{m-l}, shape (m-k-l+1, d)."""
    k, l = cons.k, cons.l
    n = curve.degree
    if table.m != m or table.constraints != cons or table.weight != w:
        raise ValidationError("c-table does not match the request")
    if moments.N != n + m or moments.k != k or moments.l != l:
        raise ValidationError("moment vector does not match the request")
    left = np.asarray(left, dtype=float).reshape(k, -1) if k else np.zeros((0, curve.dim))
    right = np.asarray(right, dtype=float).reshape(l, -1) if l else np.zeros((0, curve.dim))
    if left.shape[1:] != (curve.dim,) or right.shape[1:] != (curve.dim,):
        raise ValidationError("boundary control points have the wrong dimension")
    # the c-table is long double; keep the fold there so the large entries
    # cancel without losing the low digits
    ext = np.longdouble
    rhs = _moment_operator(n, m, cons, moments) @ (curve.control_points * curve.weights[:, None]).astype(ext)
    p = table.c @ rhs
    if k or l:
        p = p - k_matrix(m, cons, w).astype(ext) @ np.vstack([left, right]).astype(ext)
    return p.astype(float)


def bernstein_gram(m: int, w: JacobiWeight) -> np.ndarray:
    """G[p, q] = <B^m_p, B^m_q> in closed form."""
    G = np.empty((m + 1, m + 1))
    row = binom_row(m)
    for p in range(m + 1):
        for q in range(m + 1):
            G[p, q] = row[p] * row[q] * math.exp(log_beta(p + q + w.beta + 1, 2 * m - p - q + w.alpha + 1))
    return G


def _residual_orthogonality(curve, p, m, cons, w, moments):
    """max_j |<R - P, B^m_j>| over j = k..m-l, from the moments and closed-form Gram."""
    n = curve.degree
    W = _moment_operator(n, m, cons, moments).astype(float)
    rhs = W @ (curve.control_points * curve.weights[:, None])
    G = bernstein_gram(m, w)[cons.k: m - cons.l + 1]
    return float(np.max(np.abs(rhs - G @ p))) if rhs.size else 0.0


def approximate(req: ApproximationRequest, *, with_errors: bool = False,
                samples: int = 10_000) -> ApproximationResult:
    """Best constrained weighted-L2 approximant of ``req.curve`` of degree ``req.m``."""
    curve, m, cons, w = req.curve, req.m, req.constraints, req.weight
    k, l = cons.k, cons.l
    # endpoint derivatives of order > n come from an exactly elevated copy
    rho_curve = curve
    if max(k, l) - 1 > curve.degree:
        rho_curve = degree_elevate(curve, max(k, l) - 1 - curve.degree)
    rho0 = endpoint_rho(rho_curve, "left", k - 1)
    rho1 = endpoint_rho(rho_curve, "right", l - 1)
    left, right = boundary_control_points(rho0, rho1, m, cons, curve.dim)

    table = build_ctable(m, cons, w)
    moments = rational_moments(curve, m, cons, w, req.eps, req.m_max)
    inner = inner_control_points(curve, m, cons, w, table, moments, left, right)
    p = np.vstack([left, inner, right])
    approximant = BezierCurve(p)
    orth = _residual_orthogonality(curve, p, m, cons, w, moments)
    errors = error_report(curve, approximant, w, samples, req.eps) if with_errors else None
    return ApproximationResult(approximant, rho0, rho1, moments, table, orth, errors)


@dataclass(frozen=True, eq=False)
class CompositeApproximation:
    curve: CompositeCurve
    pieces: tuple
    sources: tuple


def split_segments(composite: CompositeCurve, subdivisions=None):
    """Subdivide each segment at its own increasing parameters in (0, 1).

    ``subdivisions`` is None (no splitting), a float applied to every
    segment, or one sequence of parameters per segment.
    """
    segs = list(composite.segments)
    if subdivisions is None:
        return segs
    if isinstance(subdivisions, (int, float)):
        subdivisions = [[float(subdivisions)]] * len(segs)
    if len(subdivisions) != len(segs):
        raise ValidationError(f"need one subdivision list per segment ({len(segs)})")
    out = []
    for seg, params in zip(segs, subdivisions):
        params = sorted(float(t) for t in (params or ()))
        prev = 0.0
        rest = seg
        for t in params:
            if not prev < t < 1.0:
                raise ValidationError(f"subdivision parameters must be increasing inside (0, 1): {params}")
            piece, rest = subdivide(rest, (t - prev) / (1.0 - prev))
            out.append(piece)
            prev = t
        out.append(rest)
    return out


def approximate_composite(composite: CompositeCurve, degrees: Sequence[int] | int,
                          constraints: ConstraintSpec | Sequence[ConstraintSpec] = ConstraintSpec(1, 1),
                          weight: JacobiWeight = JacobiWeight(), eps: float = DEFAULT_EPS,
                          subdivisions=None, *, with_errors: bool = False,
                          samples: int = 10_000) -> CompositeApproximation:
    """Approximate every (optionally subdivided) segment independently.

    ``degrees`` and ``constraints`` are given per resulting piece (or once
    for all).  With ``composite.continuity_order = c`` every interior join
    requires l >= c+1 on the left piece and k >= c+1 on the right piece.
    """
    pieces = [RationalBezierCurve.from_polynomial(s) if isinstance(s, BezierCurve) else s
              for s in split_segments(composite, subdivisions)]
    count = len(pieces)
    degrees = [degrees] * count if isinstance(degrees, int) else list(degrees)
    cons = [constraints] * count if isinstance(constraints, ConstraintSpec) else list(constraints)
    if len(degrees) != count or len(cons) != count:
        raise ValidationError(f"expected {count} degrees/constraints, one per piece")
    need = composite.continuity_order + 1
    for a in range(count - 1):
        if cons[a].l < need or cons[a + 1].k < need:
            raise ValidationError(
                f"join {a}: continuity order {composite.continuity_order} needs l >= {need} on the "
                f"left piece and k >= {need} on the right piece")
    results = tuple(
        approximate(ApproximationRequest(piece, m, c, weight, eps), with_errors=with_errors, samples=samples)
        for piece, m, c in zip(pieces, degrees, cons))
    out = CompositeCurve(tuple(r.approximant for r in results), composite.continuity_order)
    return CompositeApproximation(out, results, tuple(pieces))
