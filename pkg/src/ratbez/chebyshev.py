"""Chebyshev interpolation and exact Jacobi-weighted integration.

A smooth function on [-1, 1] is interpolated at the extrema nodes
cos(i*pi/M) by

    S_M(x) = gamma_0/2 + sum_{j=1}^{M} gamma_j T_j(x),

doubling M until the last four coefficients are negligible.  The
integral of S_M against (1-x)^a (1+x)^b is then obtained from a short
backward recurrence on the coefficients, with no quadrature error.
This gives the rational moments

    I_h = int_0^1 (1-t)^alpha t^beta B^N_h(t) / w(t) dt

needed by the approximation algorithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from scipy.fft import dct

from ratbez import kernels
from ratbez.bezier import RationalBezierCurve
from ratbez.dual import ConstraintSpec, JacobiWeight
from ratbez.errors import ConvergenceError, ValidationError
from ratbez.special import log_beta

DEFAULT_EPS = 1e-12
M_START = 32
M_MAX = 2**17


@dataclass(frozen=True, eq=False)
class ChebyshevSeries:
    """Coefficients gamma_0..gamma_M of a Chebyshev sum (gamma_0 counted half)."""

    gamma: np.ndarray
    tail: float = field(default=0.0)

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float).ravel()
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    @property
    def M(self) -> int:
        return self.gamma.shape[0] - 1

    def __call__(self, x):
        c = self.gamma.copy()
        c[0] *= 0.5
        return npcheb.chebval(x, c)

    def __add__(self, other):
        n = max(self.gamma.shape[0], other.gamma.shape[0])
        g = np.zeros(n)
        g[: self.gamma.shape[0]] += self.gamma
        g[: other.gamma.shape[0]] += other.gamma
        return ChebyshevSeries(g)

    def __mul__(self, scalar):
        return ChebyshevSeries(self.gamma * float(scalar))

    __rmul__ = __mul__


def chebyshev_nodes(M: int) -> np.ndarray:
    return np.cos(np.arange(M + 1) * np.pi / M)


def chebyshev_coefficients(samples) -> np.ndarray:
    """gamma_0..gamma_M from samples f(cos(i*pi/M)), i = 0..M, via a DCT-I."""
    f = np.asarray(samples, dtype=float)
    M = f.shape[0] - 1
    g = dct(f, type=1) / M
    g[M] *= 0.5
    return g


def chebyshev_coefficients_direct(samples) -> np.ndarray:
    """O(M^2) evaluation of the same interpolation coefficients."""
    f = np.asarray(samples, dtype=float).copy()
    M = f.shape[0] - 1
    f[0] *= 0.5
    f[M] *= 0.5
    i = np.arange(M + 1)
    cos = np.cos(np.outer(i, i) * np.pi / M)
    g = 2.0 / M * (cos @ f)
    g[M] *= 0.5
    return g


def tail_norm(gamma) -> float:
    return float(np.sum(np.abs(gamma[-4:])))


def chebyshev_fit(f, eps: float = DEFAULT_EPS, m_max: int = M_MAX, m_start: int = M_START) -> ChebyshevSeries:
    """Adaptive Chebyshev interpolant of ``f`` on [-1, 1].

    ``f`` must accept a NumPy array.  M runs through m_start, 2*m_start, ...
    and the first M whose four trailing coefficients sum (in absolute
    value) below ``eps`` is returned.  Samples from the previous grid are
    reused: they are the even-indexed nodes of the doubled grid.

    Raises :class:`ConvergenceError` (carrying the best series) if M would
    exceed ``m_max``.
    """
    if eps <= 0:
        raise ValidationError("tolerance must be positive")
    M = m_start
    values = np.asarray(f(chebyshev_nodes(M)), dtype=float)
    best = None
    while True:
        if not np.all(np.isfinite(values)):
            raise ValidationError("function is not finite on [-1, 1]")
        gamma = chebyshev_coefficients(values)
        tail = tail_norm(gamma)
        series = ChebyshevSeries(gamma, tail)
        if tail < eps:
            return series
        if best is None or tail < best.tail:
            best = series
        if 2 * M > m_max:
            raise ConvergenceError(
                f"Chebyshev tail {tail:.3e} still above {eps:.1e} at M={M}: "
                "weight nearly singular or tolerance unreachable", best)
        odd = np.cos((2 * np.arange(M) + 1) * np.pi / (2 * M))
        doubled = np.empty(2 * M + 1)
        doubled[0::2] = values
        doubled[1::2] = np.asarray(f(odd), dtype=float)
        values = doubled
        M *= 2


def _check_exponents(a, b):
    if not (a > -1 and b > -1):
        raise ValidationError(f"Jacobi exponents must exceed -1, got a={a}, b={b}")


def jacobi_scale_log(a: float, b: float) -> float:
    """log of 2^(s-1) B(a+1, b+1), s = a+b+1."""
    return (a + b) * math.log(2.0) + log_beta(a + 1, b + 1)


def jacobi_integral(a: float, b: float, series: ChebyshevSeries) -> float:
    """int_{-1}^{1} (1-x)^a (1+x)^b S_M(x) dx, exact for the polynomial S_M."""
    _check_exponents(a, b)
    delta = float(kernels.jacobi_delta(series.gamma, float(a), float(b)))
    return math.exp(jacobi_scale_log(a, b)) * delta


def theta(weights, cons: ConstraintSpec):
    """The function (1-x)^l (1+x)^k / w((1+x)/2) on [-1, 1].

    ``weights`` are the curve weights w_0..w_n; the weight polynomial is
    evaluated by de Casteljau.
    """
    w = np.asarray(weights, dtype=float).reshape(-1, 1)
    if np.any(w <= 0):
        raise ValidationError("weights must be positive")
    k, l = cons.k, cons.l

    def f(x):
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x).ravel()
        den = kernels.decasteljau(w, 0.5 * (1.0 + flat))[:, 0]
        val = (1.0 - flat) ** l * (1.0 + flat) ** k / den
        return val.reshape(x.shape) if x.ndim else float(val[0])

    return f


@dataclass(frozen=True, eq=False)
class MomentVector:
    """Moments I_h for h = k..N-l (``values[h - k]``, kept in long double)."""

    values: np.ndarray
    N: int
    k: int
    l: int
    M: int

    def __getitem__(self, h):
        if not self.k <= h <= self.N - self.l:
            raise IndexError(f"moment index {h} outside {self.k}..{self.N - self.l}")
        return float(self.values[h - self.k])

    def __len__(self):
        return self.values.shape[0]

    def as_array(self, length=None):
        """Dense array indexed by h, zero outside k..N-l."""
        out = np.zeros(self.N + 1 if length is None else length, dtype=self.values.dtype)
        out[self.k: self.N - self.l + 1] = self.values
        return out


def rational_moments(curve, m: int, cons: ConstraintSpec, w: JacobiWeight,
                     eps: float = DEFAULT_EPS, m_max: int = M_MAX,
                     series: ChebyshevSeries | None = None) -> MomentVector:
    """Moments I_h, h = k..N-l with N = n+m, of the weight polynomial of ``curve``.

    ``curve`` may be a :class:`RationalBezierCurve` or a bare weight sequence.
    A precomputed Chebyshev ``series`` for theta may be passed in.
    """
    weights = curve.weights if isinstance(curve, RationalBezierCurve) else np.asarray(curve, dtype=float)
    n = len(weights) - 1
    N = n + m
    k, l = cons.k, cons.l
    if k + l > N:
        raise ValidationError(f"constraints k={k}, l={l} exceed N={N}")
    if series is None:
        series = chebyshev_fit(theta(weights, cons), eps, m_max)
    # I_h = C(N,h) 2^(a+b) B(a+1,b+1) 2^(-sigma-N) delta_h with a = alpha+N-l-h,
    # b = beta-k+h.  a+b does not depend on h, so the powers of two collapse
    # to 2^(-k-l-1) and consecutive Beta values differ by the ratio (b+1)/a.
    # Everything runs in long double: the fold with the c-table amplifies
    # relative moment errors by ~|c|, which reaches 1e8 at m = 12.
    ext = np.longdouble
    h = np.arange(k, N - l + 1)
    a = w.alpha + N - l - h
    b = w.beta - k + h
    delta = kernels.jacobi_delta(series.gamma, a, b)
    beta_h = np.empty(h.shape[0], dtype=ext)
    # the start value scales every moment alike, so its rounding is harmless
    beta_h[0] = np.exp(ext(log_beta(a[0] + 1, b[0] + 1)))
    for q in range(1, h.shape[0]):
        beta_h[q] = beta_h[q - 1] * (ext(b[q - 1]) + 1) / ext(a[q - 1])
    binoms = np.array([math.comb(N, int(x)) for x in h], dtype=object).astype(ext)
    vals = binoms * beta_h * delta / ext(2) ** (k + l + 1)
    return MomentVector(vals, N, k, l, series.M)
