# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernel for the covariance equation of motion.

Same contract as the pure-python fallback: fixed-step classical RK4 with
per-step re-symmetrization, sampling every ``stride``-th step.
"""

import numpy as np


cdef inline void _lyap(const double* a, const double* at, const double* s,
                       const double* d, double* out) noexcept nogil:
    # out = A S + S A^T + D on row-major 4x4 buffers
    cdef int i, j, k
    cdef double acc
    for i in range(4):
        for j in range(4):
            acc = d[4 * i + j]
            for k in range(4):
                acc += a[4 * i + k] * s[4 * k + j] + s[4 * i + k] * at[4 * k + j]
            out[4 * i + j] = acc


def rk4_evolve(drift, diffusion, sigma0, double dt, Py_ssize_t n_samples,
               Py_ssize_t stride):
    """Integrate dS/dt = A S + S A^T + D; return (n_samples+1, 4, 4) samples."""
    a_arr = np.ascontiguousarray(drift, dtype=np.float64)
    d_arr = np.ascontiguousarray(diffusion, dtype=np.float64)
    s_arr = np.ascontiguousarray(sigma0, dtype=np.float64)
    out_arr = np.empty((n_samples + 1, 4, 4), dtype=np.float64)
    cdef const double[:, ::1] a_mv = a_arr
    cdef const double[:, ::1] d_mv = d_arr
    cdef const double[:, ::1] s_mv = s_arr
    cdef double[:, :, ::1] out_mv = out_arr

    cdef double a[16]
    cdef double at[16]
    cdef double d[16]
    cdef double s[16]
    cdef double k1[16]
    cdef double k2[16]
    cdef double k3[16]
    cdef double k4[16]
    cdef double tmp[16]
    cdef double avg
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef int i, j
    cdef Py_ssize_t n, r

    for i in range(4):
        for j in range(4):
            a[4 * i + j] = a_mv[i, j]
            at[4 * i + j] = a_mv[j, i]
            d[4 * i + j] = d_mv[i, j]
            s[4 * i + j] = s_mv[i, j]
            out_mv[0, i, j] = s_mv[i, j]

    with nogil:
        for n in range(1, n_samples + 1):
            for r in range(stride):
                _lyap(a, at, s, d, k1)
                for i in range(16):
                    tmp[i] = s[i] + half * k1[i]
                _lyap(a, at, tmp, d, k2)
                for i in range(16):
                    tmp[i] = s[i] + half * k2[i]
                _lyap(a, at, tmp, d, k3)
                for i in range(16):
                    tmp[i] = s[i] + dt * k3[i]
                _lyap(a, at, tmp, d, k4)
                for i in range(16):
                    s[i] += sixth * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
                for i in range(4):
                    for j in range(i + 1, 4):
                        avg = 0.5 * (s[4 * i + j] + s[4 * j + i])
                        s[4 * i + j] = avg
                        s[4 * j + i] = avg
            for i in range(4):
                for j in range(4):
                    out_mv[n, i, j] = s[4 * i + j]
    return out_arr
