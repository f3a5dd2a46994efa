"""Binomials, Pochhammer symbols and Beta functions.

Binomial coefficients up to ``TABLE_MAX`` come from an exact integer
table; larger ones, and everything involving real arguments, are built
in log space with explicit sign bookkeeping so products of many factors
do not overflow.
"""
import math

import numpy as np
from scipy.special import betaln, gammaln

TABLE_MAX = 60

_BINOM = np.zeros((TABLE_MAX + 1, TABLE_MAX + 1))
for _n in range(TABLE_MAX + 1):
    for _k in range(_n + 1):
        _BINOM[_n, _k] = float(math.comb(_n, _k))


def binom(n, k):
    """C(n, k) as a float; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0.0
    if n <= TABLE_MAX:
        return _BINOM[n, k]
    return math.exp(log_binom(n, k))


def log_binom(n, k):
    """log C(n, k) for 0 <= k <= n."""
    if k < 0 or k > n:
        raise ValueError(f"binomial C({n}, {k}) is zero")
    if n <= TABLE_MAX:
        return math.log(_BINOM[n, k])
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def binom_row(n):
    """Array [C(n, 0), ..., C(n, n)]."""
    if n <= TABLE_MAX:
        return _BINOM[n, : n + 1].copy()
    return np.array([binom(n, k) for k in range(n + 1)])


def log_pochhammer(a, k):
    """Return ``(sign, log|(a)_k|)`` for the rising factorial (a)_k.

    ``sign`` is 0 when one of the factors vanishes (log part is then -inf).
    """
    if k < 0:
        raise ValueError("Pochhammer length must be non-negative")
    if k == 0:
        return 1, 0.0
    if a > 0:
        return 1, float(gammaln(a + k) - gammaln(a))
    sign = 1
    acc = 0.0
    for j in range(k):
        f = a + j
        if f == 0:
            return 0, -math.inf
        if f < 0:
            sign = -sign
        acc += math.log(abs(f))
    return sign, acc


def pochhammer(a, k):
    sign, lg = log_pochhammer(a, k)
    return sign * math.exp(lg) if sign else 0.0


def log_factorial(n):
    return float(gammaln(n + 1))


def log_beta(x, y):
    """log B(x, y) for x, y > 0."""
    return float(betaln(x, y))
