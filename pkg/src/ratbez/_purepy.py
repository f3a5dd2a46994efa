"""Pure-Python/NumPy versions of the hot kernels.

These mirror :mod:`ratbez._speedups` one-to-one and are used when the
compiled extension is unavailable or ``RATBEZ_PURE_PYTHON`` is set.
"""
import numpy as np


def decasteljau(ctrl, t):
    """Evaluate Bezier control data ``ctrl`` (shape (n+1, d)) at every ``t``.

    Returns an array of shape (len(t), d).
    """
    ctrl = np.ascontiguousarray(ctrl, dtype=float)
    t = np.ascontiguousarray(t, dtype=float)
    work = np.broadcast_to(ctrl, (t.shape[0],) + ctrl.shape).copy()
    s = (1.0 - t)[:, None, None]
    tt = t[:, None, None]
    for r in range(1, ctrl.shape[0]):
        work = s * work[:, :-1] + tt * work[:, 1:]
    return work[:, 0, :]


def ctable_fill(c, m, k, l, alpha, beta):
    """Complete rows 1.. of the dual-basis c-table in place.

    ``c`` is an (L+1) x (L+1) array, L = m-k-l, whose row 0 already holds
    c_{k,k}..c_{k,m-l}; entry ``c[a, b]`` stores c_{k+a, k+b}.  ``c`` must
    be a ``np.longdouble`` array: the entries grow like 10^(m/1.5) and the
    later fold cancels them, so the extra digits are kept throughout.
    """
    L = m - k - l
    alpha, beta = np.longdouble(alpha), np.longdouble(beta)

    def A(u):
        return (u - m) * (u - k + 1) * (u + k + beta + 1) / (u + 1)

    def B(u):
        assert u - m - 1 != 0
        return u * (u - m - l - alpha - 1) * (u - m + l - 1) / (u - m - 1)

    def get(a, b):
        if 0 <= a <= L and 0 <= b <= L:
            return c[a, b]
        return np.longdouble(0)

    for a in range(L):
        i = k + a
        Ai = A(i)
        Bi = B(i)
        for b in range(L + 1):
            j = k + b
            val = ((i - j) * (2 * i + 2 * j - 2 * m - alpha + beta) * c[a, b]
                   + B(j) * get(a, b - 1)
                   + A(j) * get(a, b + 1)
                   - Bi * get(a - 1, b))
            c[a + 1, b] = val / Ai
    return c


def jacobi_delta(gamma, a, b):
    """Backward recurrence for the Jacobi-weighted integral of a Chebyshev sum.

    Returns ``gamma[0] - r*d_0 + s*d_1`` with r = b-a, s = a+b+1, for every
    pair in the broadcast of ``a`` and ``b``, as a ``np.longdouble`` array.
    The final combination cancels terms of size ~r against an O(1)
    result, so the recurrence runs in extended precision.
    """
    g = np.asarray(gamma, dtype=float)
    a = np.asarray(a, dtype=np.longdouble)
    b = np.asarray(b, dtype=np.longdouble)
    r = b - a
    s = a + b + 1
    M = g.shape[0] - 1
    d_next = np.zeros_like(r)  # d_{i+1}
    d_cur = np.zeros_like(r)   # d_i
    for i in range(M, 0, -1):
        d_prev = (2 * r * d_cur + (i - s) * d_next - 2 * np.longdouble(g[i])) / (i + s)
        d_next, d_cur = d_cur, d_prev
    # loop ends with d_cur = d_0, d_next = d_1
    return np.longdouble(g[0]) - r * d_cur + s * d_next
