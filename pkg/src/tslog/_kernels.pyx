# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see _pykernels for the reference semantics."""

import numpy as np

BACKEND = "cython"


cdef inline double _fabs(double x) nogil:
    return -x if x < 0 else x


def weighted_sum(values, weights):
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = min(v.shape[0], w.shape[0])
    cdef Py_ssize_t i
    cdef double s = 0.0, c = 0.0, x, t
    with nogil:
        for i in range(n):
            x = v[i] * w[i]
            t = s + x
            if _fabs(s) >= _fabs(x):
                c += (s - t) + x
            else:
                c += (x - t) + s
            s = t
    return s + c


def triple_extrema(ts, fs):
    cdef double[::1] tv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef double[::1] fv = np.ascontiguousarray(fs, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0]
    cdef Py_ssize_t i, j, k
    cdef Py_ssize_t li = -1, lj = -1, lk = -1, hi_i = -1, hj = -1, hk = -1
    cdef double lo = np.inf, hi = -np.inf
    cdef double t1, f1, t, f, t2, e
    with nogil:
        for i in range(n - 2):
            t1 = tv[i]
            f1 = fv[i]
            for j in range(i + 1, n - 1):
                t = tv[j]
                f = fv[j]
                for k in range(j + 1, n):
                    t2 = tv[k]
                    e = (t2 - t) * f1 + (t1 - t2) * f + (t - t1) * fv[k]
                    if e < lo:
                        lo = e
                        li = i; lj = j; lk = k
                    if e > hi:
                        hi = e
                        hi_i = i; hj = j; hk = k
    if li < 0:
        return lo, None, hi, None
    return lo, (li, lj, lk), hi, (hi_i, hj, hk)


def slope_extrema(ts, fs):
    cdef double[::1] tv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef double[::1] fv = np.ascontiguousarray(fs, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0]
    cdef Py_ssize_t i, j, k
    cdef Py_ssize_t li = -1, lj = -1, lk = -1, hi_i = -1, hj = -1, hk = -1
    cdef double lo = np.inf, hi = -np.inf
    cdef double t1, f1, t, f, dl, dr, left, g
    with nogil:
        for i in range(n - 2):
            t1 = tv[i]
            f1 = fv[i]
            for j in range(i + 1, n - 1):
                t = tv[j]
                f = fv[j]
                dl = t - t1
                left = (f - f1) / dl
                for k in range(j + 1, n):
                    dr = tv[k] - t
                    g = ((fv[k] - f) / dr - left) * (dl * dr)
                    if g < lo:
                        lo = g
                        li = i; lj = j; lk = k
                    if g > hi:
                        hi = g
                        hi_i = i; hj = j; hk = k
    if li < 0:
        return lo, None, hi, None
    return lo, (li, lj, lk), hi, (hi_i, hj, hk)
