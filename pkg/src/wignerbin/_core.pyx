# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: scaled Laguerre recurrences and the two-mode RK4 stepper.

Mirrors the API of ``wignerbin._core_py``.  The Laguerre recurrence carries
e^{-x/2} L_n(x) as (mantissa, shared base-2 exponent), renormalized when the
mantissa pair leaves [2^-512, 2^512]; per-order accumulations over samples
use Kahan compensation so chunked parallel reductions stay reproducible.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, floor, ldexp, log, exp2

cnp.import_array()

BACKEND = "compiled"

cdef double _BIG = 2.0**512
cdef double _SMALL = 2.0**-512
cdef double _LN2 = 0.6931471805599453


def laguerre_halfexp(int n, xs):
    """e^{-x/2} L_n(x) for fixed order n over an array of x >= 0."""
    cdef double[::1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0]
    out_arr = np.empty(m)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int k
    cdef long E
    cdef double ef, mp, mc, mn, aM, xi
    with nogil:
        for i in range(m):
            xi = x[i]
            ef = -xi / (2.0 * _LN2)
            E = <long>floor(ef)
            mp = exp2(ef - E)
            if n == 0:
                out[i] = ldexp(mp, E)
                continue
            mc = (1.0 - xi) * mp
            for k in range(1, n):
                mn = ((2.0 * k + 1.0 - xi) * mc - k * mp) / (k + 1.0)
                mp = mc
                mc = mn
                aM = fabs(mc)
                if fabs(mp) > aM:
                    aM = fabs(mp)
                if aM > _BIG:
                    mc = ldexp(mc, -512)
                    mp = ldexp(mp, -512)
                    E += 512
                elif aM < _SMALL and aM > 0.0:
                    mc = ldexp(mc, 512)
                    mp = ldexp(mp, 512)
                    E -= 512
            out[i] = ldexp(mc, E)
    return out_arr


def laguerre_dot(xs, ws, int n_max):
    """out[n] = sum_i ws[i] * e^{-xs[i]/2} L_n(xs[i]) for n = 0..n_max."""
    cdef double[::1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(ws, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0]
    out_arr = np.zeros(n_max + 1)
    comp_arr = np.zeros(n_max + 1)
    cdef double[::1] out = out_arr
    cdef double[::1] comp = comp_arr
    cdef Py_ssize_t i
    cdef int k
    cdef long E
    cdef double ef, mp, mc, mn, aM, xi, wi, v, y, t
    with nogil:
        for i in range(m):
            xi = x[i]
            wi = w[i]
            ef = -xi / (2.0 * _LN2)
            E = <long>floor(ef)
            mp = exp2(ef - E)
            v = wi * ldexp(mp, E)
            y = v - comp[0]; t = out[0] + y; comp[0] = (t - out[0]) - y; out[0] = t
            if n_max == 0:
                continue
            mc = (1.0 - xi) * mp
            v = wi * ldexp(mc, E)
            y = v - comp[1]; t = out[1] + y; comp[1] = (t - out[1]) - y; out[1] = t
            for k in range(1, n_max):
                mn = ((2.0 * k + 1.0 - xi) * mc - k * mp) / (k + 1.0)
                mp = mc
                mc = mn
                aM = fabs(mc)
                if fabs(mp) > aM:
                    aM = fabs(mp)
                if aM > _BIG:
                    mc = ldexp(mc, -512)
                    mp = ldexp(mp, -512)
                    E += 512
                elif aM < _SMALL and aM > 0.0:
                    mc = ldexp(mc, 512)
                    mp = ldexp(mp, 512)
                    E -= 512
                v = wi * ldexp(mc, E)
                y = v - comp[k + 1]; t = out[k + 1] + y; comp[k + 1] = (t - out[k + 1]) - y; out[k + 1] = t
    return out_arr


def laguerre_moments(xs, int n_max):
    """Per-order moments of v_n(x) = 2 (-1)^n e^{-x/2} L_n(x) over samples.

    Returns (sums, sumsqs, totals); totals[i] = sum_n v_n(xs[i]).
    """
    cdef double[::1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0]
    sums_arr = np.zeros(n_max + 1)
    sumsq_arr = np.zeros(n_max + 1)
    tot_arr = np.zeros(m)
    comp_arr = np.zeros(n_max + 1)
    comp2_arr = np.zeros(n_max + 1)
    cdef double[::1] sums = sums_arr
    cdef double[::1] sumsqs = sumsq_arr
    cdef double[::1] tot = tot_arr
    cdef double[::1] comp = comp_arr
    cdef double[::1] comp2 = comp2_arr
    cdef Py_ssize_t i
    cdef int k
    cdef long E
    cdef double ef, mp, mc, mn, aM, xi, v, sgn, ti, y, t
    with nogil:
        for i in range(m):
            xi = x[i]
            ef = -xi / (2.0 * _LN2)
            E = <long>floor(ef)
            mp = exp2(ef - E)
            v = 2.0 * ldexp(mp, E)
            y = v - comp[0]; t = sums[0] + y; comp[0] = (t - sums[0]) - y; sums[0] = t
            y = v * v - comp2[0]; t = sumsqs[0] + y; comp2[0] = (t - sumsqs[0]) - y; sumsqs[0] = t
            ti = v
            if n_max > 0:
                mc = (1.0 - xi) * mp
                v = -2.0 * ldexp(mc, E)
                y = v - comp[1]; t = sums[1] + y; comp[1] = (t - sums[1]) - y; sums[1] = t
                y = v * v - comp2[1]; t = sumsqs[1] + y; comp2[1] = (t - sumsqs[1]) - y; sumsqs[1] = t
                ti += v
                sgn = -1.0
                for k in range(1, n_max):
                    mn = ((2.0 * k + 1.0 - xi) * mc - k * mp) / (k + 1.0)
                    mp = mc
                    mc = mn
                    aM = fabs(mc)
                    if fabs(mp) > aM:
                        aM = fabs(mp)
                    if aM > _BIG:
                        mc = ldexp(mc, -512)
                        mp = ldexp(mp, -512)
                        E += 512
                    elif aM < _SMALL and aM > 0.0:
                        mc = ldexp(mc, 512)
                        mp = ldexp(mp, 512)
                        E -= 512
                    sgn = -sgn
                    v = 2.0 * sgn * ldexp(mc, E)
                    y = v - comp[k + 1]; t = sums[k + 1] + y; comp[k + 1] = (t - sums[k + 1]) - y; sums[k + 1] = t
                    y = v * v - comp2[k + 1]; t = sumsqs[k + 1] + y; comp2[k + 1] = (t - sumsqs[k + 1]) - y; sumsqs[k + 1] = t
                    ti += v
            tot[i] = ti
    return sums_arr, sumsq_arr, tot_arr


def bh_rk4(a1_in, a2_in, double omega, double u, double dt, long n_steps):
    """Fixed-step RK4 for da1/dt = i*omega*a2 - i*u*(|a1|^2 - 1)*a1 (symmetric)."""
    a1_arr = np.array(a1_in, dtype=np.complex128, copy=True)
    a2_arr = np.array(a2_in, dtype=np.complex128, copy=True)
    cdef double complex[::1] a1 = a1_arr
    cdef double complex[::1] a2 = a2_arr
    cdef Py_ssize_t m = a1.shape[0]
    cdef Py_ssize_t i
    cdef long step
    cdef double complex b1, b2, c1, c2, k11, k12, k21, k22, k31, k32, k41, k42
    cdef double complex ii = 1j
    with nogil:
        for i in range(m):
            b1 = a1[i]
            b2 = a2[i]
            for step in range(n_steps):
                k11 = ii * (omega * b2 - u * ((b1.real * b1.real + b1.imag * b1.imag) - 1.0) * b1)
                k12 = ii * (omega * b1 - u * ((b2.real * b2.real + b2.imag * b2.imag) - 1.0) * b2)
                c1 = b1 + 0.5 * dt * k11
                c2 = b2 + 0.5 * dt * k12
                k21 = ii * (omega * c2 - u * ((c1.real * c1.real + c1.imag * c1.imag) - 1.0) * c1)
                k22 = ii * (omega * c1 - u * ((c2.real * c2.real + c2.imag * c2.imag) - 1.0) * c2)
                c1 = b1 + 0.5 * dt * k21
                c2 = b2 + 0.5 * dt * k22
                k31 = ii * (omega * c2 - u * ((c1.real * c1.real + c1.imag * c1.imag) - 1.0) * c1)
                k32 = ii * (omega * c1 - u * ((c2.real * c2.real + c2.imag * c2.imag) - 1.0) * c2)
                c1 = b1 + dt * k31
                c2 = b2 + dt * k32
                k41 = ii * (omega * c2 - u * ((c1.real * c1.real + c1.imag * c1.imag) - 1.0) * c1)
                k42 = ii * (omega * c1 - u * ((c2.real * c2.real + c2.imag * c2.imag) - 1.0) * c2)
                b1 = b1 + (dt / 6.0) * (k11 + 2.0 * k21 + 2.0 * k31 + k41)
                b2 = b2 + (dt / 6.0) * (k12 + 2.0 * k22 + 2.0 * k32 + k42)
            a1[i] = b1
            a2[i] = b2
    return a1_arr, a2_arr
