# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: complex Jacobi eigensolver and Monte-Carlo error counting."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs
from libc.stdint cimport uint64_t

cnp.import_array()

cdef double EPS = 2.220446049250313e-16


cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex conj(double complex)
    double creal(double complex)


def jacobi_eigh(a_in, int max_sweeps):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] arr = np.array(a_in, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = arr.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] varr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = arr
    cdef double complex[:, ::1] v = varr
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef bint rotated
    cdef double mag, app, aqq, theta, t, c, s, floor, fro = 0.0
    cdef double complex b, ph, phc, xp, xq

    for p in range(n):
        for q in range(n):
            fro += creal(a[p, q] * conj(a[p, q]))
    fro = sqrt(fro)
    if fro < 1e-300:
        fro = 1e-300
    floor = EPS * EPS * fro

    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                mag = cabs(b)
                app = creal(a[p, p])
                aqq = creal(a[q, q])
                if mag <= floor or mag <= EPS * sqrt(fabs(app * aqq)):
                    continue
                rotated = True
                ph = b / mag
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                phc = conj(ph)
                for k in range(n):
                    xp = a[k, p]
                    xq = a[k, q]
                    a[k, p] = c * xp - (s * phc) * xq
                    a[k, q] = s * xp + (c * phc) * xq
                for k in range(n):
                    a[p, k] = conj(a[k, p])
                    a[q, k] = conj(a[k, q])
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q]
                    v[k, p] = c * xp - (s * phc) * xq
                    v[k, q] = s * xp + (c * phc) * xq
        if not rotated:
            return np.diag(arr).real.copy(), varr, sweep
    return np.diag(arr).real.copy(), varr, -1


cdef inline double _uniform(uint64_t seed, uint64_t counter) nogil:
    cdef uint64_t z = seed + (counter + 1) * <uint64_t>0x9E3779B97F4A7C15ULL
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    z = z ^ (z >> 31)
    return <double>(z >> 11) * (1.0 / 9007199254740992.0)


cdef inline Py_ssize_t _search(const double[::1] cdf, double u) nogil:
    cdef Py_ssize_t k = 0
    cdef Py_ssize_t last = cdf.shape[0] - 1
    while k < last and cdf[k] <= u:
        k += 1
    return k


def count_errors(prior_cdf, row_cdf, seed, long long start, long long count):
    cdef const double[::1] pc = np.ascontiguousarray(prior_cdf, dtype=np.float64)
    cdef const double[:, ::1] rc = np.ascontiguousarray(row_cdf, dtype=np.float64)
    cdef uint64_t s = <uint64_t>int(seed)
    cdef long long trial, errors = 0
    cdef Py_ssize_t i, j
    with nogil:
        for trial in range(start, start + count):
            i = _search(pc, _uniform(s, <uint64_t>(2 * trial)))
            j = _search(rc[i], _uniform(s, <uint64_t>(2 * trial + 1)))
            if j != i:
                errors += 1
    return errors
