"""Constrained dual Bernstein basis for the Jacobi inner product.

For a degree ``m`` and constraint orders ``(k, l)`` the dual polynomials
D_k..D_{m-l} span the polynomials of degree <= m whose derivatives of
order < k vanish at 0 and of order < l vanish at 1, and satisfy

    <D_i, B^m_j> = delta_ij,   <f, g> = int_0^1 (1-t)^alpha t^beta f g dt

for k <= i, j <= m-l.  Their Bernstein coefficients (the "c-table") are
generated by a three-term-in-each-direction recurrence seeded with a
closed-form first row, which is much cheaper and better behaved than
inverting the Gram matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ratbez import kernels
from ratbez.bezier import bernstein_eval
from ratbez.errors import NumericalError, ValidationError
from ratbez.special import log_beta, log_binom, log_factorial, log_pochhammer

#: Largest degree accepted by :func:`build_ctable` in double precision.
MAX_DEGREE = 25


@dataclass(frozen=True)
class ConstraintSpec:
    """Orders of the endpoint interpolation constraints.

    ``k`` derivatives (orders 0..k-1) are matched at t=0 and ``l`` at t=1.
    """

    k: int = 0
    l: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or int(self.l) != self.l or self.k < 0 or self.l < 0:
            raise ValidationError(f"constraint orders must be non-negative integers, got k={self.k}, l={self.l}")

    def check(self, m: int):
        if self.k + self.l > m:
            raise ValidationError(f"constraints k={self.k}, l={self.l} need k+l <= m={m}")

    def reflected(self):
        return ConstraintSpec(self.l, self.k)


@dataclass(frozen=True)
class JacobiWeight:
    """Jacobi weight (1-t)^alpha t^beta on [0, 1]."""

    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValidationError(f"Jacobi exponents must exceed -1, got alpha={self.alpha}, beta={self.beta}")

    @property
    def sigma(self) -> float:
        return self.alpha + self.beta + 1.0

    def reflected(self):
        return JacobiWeight(self.beta, self.alpha)


@dataclass(frozen=True, eq=False)
class DualBasisTable:
    """Bernstein coefficients c_ij of the constrained dual basis.

    ``c[a, b]`` holds c_{k+a, k+b}; use :meth:`coefficient` for the
    original (global) indexing, which returns 0 outside k..m-l.
    """

    m: int
    constraints: ConstraintSpec
    weight: JacobiWeight
    c: np.ndarray

    @property
    def k(self):
        return self.constraints.k

    @property
    def l(self):
        return self.constraints.l

    @property
    def indices(self):
        return range(self.k, self.m - self.l + 1)

    def coefficient(self, i, j):
        lo, hi = self.k, self.m - self.l
        if lo <= i <= hi and lo <= j <= hi:
            return float(self.c[i - lo, j - lo])
        return 0.0


def _signed_exp(sign, lg):
    return sign * math.exp(lg)


def _first_row_last(m, k, l, alpha, beta):
    """c_{k, m-l} in log space."""
    L = m - k - l
    sigma = alpha + beta + 1.0
    s_poch, lg_poch = log_pochhammer(sigma + 2 * k + 2 * l + 1, L)
    lg = (lg_poch - log_binom(m, k) - log_binom(m, l)
          - log_beta(alpha + 2 * l + 1, beta + 2 * k + 1) - log_factorial(L))
    return _signed_exp(s_poch * (-1) ** L, lg)


def first_row(m: int, cons: ConstraintSpec, w: JacobiWeight) -> np.ndarray:
    """Row c_{k,k}..c_{k,m-l} (long double), filled right to left from c_{k,m-l}."""
    k, l = cons.k, cons.l
    alpha, beta = np.longdouble(w.alpha), np.longdouble(w.beta)
    L = m - k - l
    row = np.empty(L + 1, dtype=np.longdouble)
    row[L] = _first_row_last(m, k, l, w.alpha, w.beta)
    for j in range(m - l - 1, k - 1, -1):
        ratio = ((j - m) * (j - k + 1) * (j + beta + k + 2)
                 / ((j + 1) * (j - m + l) * (j - alpha - l - m)))
        row[j - k] = ratio * row[j - k + 1]
    return row


def first_row_closed_form(m: int, cons: ConstraintSpec, w: JacobiWeight) -> np.ndarray:
    """Same row as :func:`first_row` from the direct product formula."""
    k, l, alpha, beta = cons.k, cons.l, w.alpha, w.beta
    L = m - k - l
    sigma = w.sigma
    s1, lg1 = log_pochhammer(sigma + 2 * k + 2 * l + 1, L)
    s2, lg2 = log_pochhammer(k + beta + 2, m - l)
    head = lg1 + lg2 - log_binom(m, k) - log_factorial(L) - log_beta(alpha + 2 * l + 1, beta + 2 * k + 1)
    row = np.empty(L + 1)
    for j in range(k, m - l + 1):
        s3, lg3 = log_pochhammer(alpha + 2 * l + 1, m - l - j)
        s4, lg4 = log_pochhammer(k + beta + 2, j)
        lg = head + log_binom(L, j - k) - log_binom(m, j) - lg3 - lg4
        row[j - k] = _signed_exp(s1 * s2 * s3 * s4 * (-1) ** (k + j), lg)
    return row


def build_ctable(m: int, cons: ConstraintSpec, w: JacobiWeight) -> DualBasisTable:
    """Compute the full c-table for degree ``m``.

    Raises :class:`ValidationError` for inadmissible parameters (including
    ``m > MAX_DEGREE``) and :class:`NumericalError` if the recurrence
    produces a non-finite value.
    """
    if m < 0:
        raise ValidationError("degree must be non-negative")
    if m > MAX_DEGREE:
        raise ValidationError(
            f"degree {m} exceeds {MAX_DEGREE}; the c-table recurrence is unreliable in double precision")
    cons.check(m)
    L = m - cons.k - cons.l
    # extended precision: entries reach ~1e8 at m=12 and cancel in the fold
    c = np.zeros((L + 1, L + 1), dtype=np.longdouble)
    c[0] = first_row(m, cons, w)
    with np.errstate(over="ignore", invalid="ignore"):  # checked just below
        kernels.ctable_fill(c, m, cons.k, cons.l, float(w.alpha), float(w.beta))
    if not np.all(np.isfinite(c)):
        raise NumericalError(f"non-finite c-table entry for m={m}, {cons}, {w}")
    c.setflags(write=False)
    return DualBasisTable(m, cons, w, c)


def dual_eval(table: DualBasisTable, i: int, t):
    """Evaluate the dual basis polynomial D_i at ``t``."""
    if i not in table.indices:
        raise ValidationError(f"dual index {i} outside {table.k}..{table.m - table.l}")
    row = table.c[i - table.k]
    total = 0.0
    for b, j in enumerate(table.indices):
        total = total + row[b] * bernstein_eval(table.m, j, t)
    return np.asarray(total, dtype=float)[()]


def k_coefficient(i: int, j: int, m: int, cons: ConstraintSpec, w: JacobiWeight) -> float:
    """Inner product <B^m_j, D_i> for a boundary index j (j < k or j > m-l)."""
    k, l, alpha, beta = cons.k, cons.l, w.alpha, w.beta
    cons.check(m)
    if not k <= i <= m - l:
        raise ValidationError(f"dual index {i} outside {k}..{m - l}")
    if not 0 <= j <= m:
        raise ValidationError(f"Bernstein index {j} outside 0..{m}")
    if k <= j <= m - l:
        raise ValidationError(f"j={j} is an interior index; <B_j, D_i> is delta_ij there")
    L = m - k - l
    sign = (-1) ** (i - k) * (1 if i > j else -1)
    lg = log_binom(m, j) - log_binom(m, i) - math.log(abs(i - j))
    lg -= log_factorial(i - k) + log_factorial(m - l - i)
    for a, n, inv in ((k - j, L + 1, False), (alpha + l + 1, m - j, False), (beta + k + 1, j, False),
                      (alpha + l + 1, m - i, True), (beta + k + 1, i, True)):
        s, g = log_pochhammer(a, n)
        sign *= s
        lg += -g if inv else g
    return _signed_exp(sign, lg)


def boundary_indices(m: int, cons: ConstraintSpec):
    """Bernstein indices fixed by the endpoint constraints."""
    return list(range(cons.k)) + list(range(m - cons.l + 1, m + 1))


def k_matrix(m: int, cons: ConstraintSpec, w: JacobiWeight) -> np.ndarray:
    """Matrix of K_ij, rows i = k..m-l, columns over :func:`boundary_indices`."""
    cols = boundary_indices(m, cons)
    return np.array([[k_coefficient(i, j, m, cons, w) for j in cols]
                     for i in range(cons.k, m - cons.l + 1)]).reshape(m - cons.k - cons.l + 1, len(cols))
