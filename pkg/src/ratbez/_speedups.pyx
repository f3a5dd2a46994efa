# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels; see ratbez._purepy for the reference."""
import numpy as np


def decasteljau(ctrl, t):
    cdef const double[:, ::1] P = np.ascontiguousarray(ctrl, dtype=np.float64)
    cdef const double[::1] T = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n1 = P.shape[0], d = P.shape[1], nt = T.shape[0]
    cdef Py_ssize_t q, c, r, i
    cdef double u, s
    out = np.empty((nt, d), dtype=np.float64)
    cdef double[:, ::1] O = out
    cdef double[::1] w = np.empty(n1, dtype=np.float64)
    for q in range(nt):
        u = T[q]
        s = 1.0 - u
        for c in range(d):
            for i in range(n1):
                w[i] = P[i, c]
            for r in range(1, n1):
                for i in range(n1 - r):
                    w[i] = s * w[i] + u * w[i + 1]
            O[q, c] = w[0]
    return out


cdef inline long double _A(long double u, int m, int k, long double beta):
    return (u - m) * (u - k + 1) * (u + k + beta + 1) / (u + 1)


cdef inline long double _B(long double u, int m, int l, long double alpha):
    return u * (u - m - l - alpha - 1) * (u - m + l - 1) / (u - m - 1)


def ctable_fill(c, int m, int k, int l, alpha, beta):
    cdef long double[:, ::1] C = c
    cdef long double al = alpha, be = beta
    cdef int L = m - k - l
    cdef int a, b, i, j
    cdef long double Ai, Bi, val, left, right, up
    for a in range(L):
        i = k + a
        Ai = _A(i, m, k, be)
        Bi = _B(i, m, l, al)
        for b in range(L + 1):
            j = k + b
            left = C[a, b - 1] if b > 0 else 0.0
            right = C[a, b + 1] if b < L else 0.0
            up = C[a - 1, b] if a > 0 else 0.0
            val = ((i - j) * (2 * i + 2 * j - 2 * m - al + be) * C[a, b]
                   + _B(j, m, l, al) * left
                   + _A(j, m, k, be) * right
                   - Bi * up)
            C[a + 1, b] = val / Ai
    return c


def jacobi_delta(gamma, a, b):
    cdef const double[::1] g = np.ascontiguousarray(gamma, dtype=np.float64)
    A, B = np.broadcast_arrays(np.asarray(a, dtype=np.longdouble), np.asarray(b, dtype=np.longdouble))
    shape = A.shape
    cdef long double[::1] av = np.ascontiguousarray(A, dtype=np.longdouble).ravel()
    cdef long double[::1] bv = np.ascontiguousarray(B, dtype=np.longdouble).ravel()
    res = np.empty(av.shape[0], dtype=np.longdouble)
    cdef long double[::1] out = res
    cdef Py_ssize_t M = g.shape[0] - 1
    cdef Py_ssize_t i, q
    cdef long double r, s, d_next, d_cur, d_prev
    for q in range(av.shape[0]):
        r = bv[q] - av[q]
        s = av[q] + bv[q] + 1
        d_next = 0
        d_cur = 0
        for i in range(M, 0, -1):
            d_prev = (2 * r * d_cur + (i - s) * d_next - 2 * <long double> g[i]) / (i + s)
            d_next = d_cur
            d_cur = d_prev
        out[q] = <long double> g[0] - r * d_cur + s * d_next
    return res.reshape(shape)
