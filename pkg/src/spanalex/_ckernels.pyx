# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: small-integer convolution and complex Aberth iteration."""
from libc.math cimport fabs
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

from . import _pykernels

BACKEND = "cython"

cdef int64_t _LIMIT = (<int64_t>1) << 62


def conv(a, b):
    """Product of two integer coefficient lists (lowest degree first).

    Runs in int64 when the coefficient bound rules out overflow and defers to
    the arbitrary-precision fallback otherwise.
    """
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    ma = max(a, key=abs)
    mb = max(b, key=abs)
    if abs(ma) * abs(mb) * min(na, nb) >= _LIMIT:
        return _pykernels.conv(a, b)
    cdef int64_t *ca = <int64_t *> malloc(na * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *> malloc(nb * sizeof(int64_t))
    cdef int64_t *out = <int64_t *> malloc((na + nb - 1) * sizeof(int64_t))
    cdef int64_t y
    try:
        for i in range(na):
            ca[i] = a[i]
        for j in range(nb):
            cb[j] = b[j]
        for i in range(na + nb - 1):
            out[i] = 0
        for j in range(nb):
            y = cb[j]
            if y != 0:
                for i in range(na):
                    out[i + j] += ca[i] * y
        return [out[i] for i in range(na + nb - 1)]
    finally:
        free(ca)
        free(cb)
        free(out)


cdef inline double complex _horner(double *c, Py_ssize_t n, double complex z) nogil:
    cdef double complex acc = 0
    cdef Py_ssize_t k
    for k in range(n - 1, -1, -1):
        acc = acc * z + c[k]
    return acc


def horner(coeffs, double complex z):
    """Evaluate a polynomial (lowest degree first) at a complex point."""
    cdef double complex acc = 0
    for c in reversed(coeffs):
        acc = acc * z + <double> c
    return complex(acc)


initial_guesses = _pykernels.initial_guesses


def aberth(coeffs, roots, double tol, int maxiter):
    """Aberth-Ehrlich iteration; same contract as the pure-Python version."""
    cdef Py_ssize_t m = len(coeffs), n = len(roots), i, j
    cdef double *c = <double *> malloc(m * sizeof(double))
    cdef double *d = <double *> malloc(max(m - 1, 1) * sizeof(double))
    cdef double *a = <double *> malloc(m * sizeof(double))
    cdef double noise = 8.0 * m * 1.1102230246251565e-16, scale, r
    cdef double complex *z = <double complex *> malloc(n * sizeof(double complex))
    cdef char *done = <char *> malloc(n * sizeof(char))
    cdef double complex p, dp, s, w, ratio, diff, zi
    cdef double rel, max_corr = 0, az
    cdef int it, remaining
    try:
        for i in range(m):
            c[i] = coeffs[i]
            a[i] = fabs(c[i])
        for i in range(1, m):
            d[i - 1] = i * c[i]
        for i in range(n):
            z[i] = roots[i]
            done[i] = 0
        for it in range(1, maxiter + 1):
            max_corr = 0
            remaining = 0
            for i in range(n):
                if done[i]:
                    continue
                zi = z[i]
                p = _horner(c, m, zi)
                r = abs(zi)
                scale = 0
                for j in range(m - 1, -1, -1):
                    scale = scale * r + a[j]
                if abs(p) <= noise * scale:
                    done[i] = 1
                    continue
                dp = _horner(d, m - 1, zi)
                s = 0
                for j in range(n):
                    if j != i:
                        diff = zi - z[j]
                        if diff != 0:
                            s = s + 1.0 / diff
                if dp == 0:
                    w = p / (1e-300 + abs(p)) * 1e-3
                else:
                    ratio = p / dp
                    w = ratio / (1.0 - ratio * s)
                z[i] = zi - w
                az = abs(zi)
                rel = abs(w) / (az if az > 1.0 else 1.0)
                if rel < tol:
                    done[i] = 1
                else:
                    remaining += 1
                if rel > max_corr:
                    max_corr = rel
            if remaining == 0:
                return [complex(z[i]) for i in range(n)], it, True, max_corr
        return [complex(z[i]) for i in range(n)], maxiter, False, max_corr
    finally:
        free(c)
        free(d)
        free(a)
        free(z)
        free(done)
