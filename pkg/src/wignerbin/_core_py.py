"""Pure-numpy implementations of the hot kernels.

Same signatures as the compiled extension ``wignerbin._core``; the active
backend is chosen in ``wignerbin._backend``.

The Laguerre kernels all carry e^{-x/2} L_n(x) through the three-term
recurrence in a scaled representation (double mantissa pair + shared base-2
exponent, renormalized whenever the pair magnitude leaves [2^-512, 2^512]),
so no intermediate value can overflow or underflow for n, x up to 1e5.
"""

import numpy as np

BACKEND = "python"

_BIG = 2.0**512
_SMALL = 2.0**-512
_LN2 = float(np.log(2.0))


def _init_mantissas(xs):
    """Mantissa/exponent split of e^{-x/2}: m * 2^E with m in [1, 2)."""
    ef = -xs / (2.0 * _LN2)
    E = np.floor(ef).astype(np.int64)
    m = np.exp2(ef - E)
    return m, E


def _renormalize(m_cur, m_prev, E):
    aM = np.maximum(np.abs(m_cur), np.abs(m_prev))
    up = aM > _BIG
    if up.any():
        m_cur[up] = np.ldexp(m_cur[up], -512)
        m_prev[up] = np.ldexp(m_prev[up], -512)
        E[up] += 512
    dn = (aM < _SMALL) & (aM > 0.0)
    if dn.any():
        m_cur[dn] = np.ldexp(m_cur[dn], 512)
        m_prev[dn] = np.ldexp(m_prev[dn], 512)
        E[dn] -= 512


def laguerre_halfexp(n, xs):
    """e^{-x/2} L_n(x) for fixed order n over an array of x >= 0."""
    xs = np.asarray(xs, dtype=np.float64)
    m_prev, E = _init_mantissas(xs)
    if n == 0:
        return np.ldexp(m_prev, E)
    m_cur = (1.0 - xs) * m_prev
    for k in range(1, n):
        m_next = ((2.0 * k + 1.0 - xs) * m_cur - k * m_prev) / (k + 1.0)
        m_prev, m_cur = m_cur, m_next
        _renormalize(m_cur, m_prev, E)
    return np.ldexp(m_cur, E)


def laguerre_dot(xs, ws, n_max):
    """out[n] = sum_i ws[i] * e^{-xs[i]/2} L_n(xs[i]) for n = 0..n_max."""
    xs = np.asarray(xs, dtype=np.float64)
    ws = np.asarray(ws, dtype=np.float64)
    out = np.empty(n_max + 1)
    m_prev, E = _init_mantissas(xs)
    out[0] = np.sum(ws * np.ldexp(m_prev, E))
    if n_max == 0:
        return out
    m_cur = (1.0 - xs) * m_prev
    out[1] = np.sum(ws * np.ldexp(m_cur, E))
    for k in range(1, n_max):
        m_next = ((2.0 * k + 1.0 - xs) * m_cur - k * m_prev) / (k + 1.0)
        m_prev, m_cur = m_cur, m_next
        _renormalize(m_cur, m_prev, E)
        out[k + 1] = np.sum(ws * np.ldexp(m_cur, E))
    return out


def laguerre_moments(xs, n_max):
    """Per-order moments of v_n(x) = 2 (-1)^n e^{-x/2} L_n(x) over samples.

    Returns (sums, sumsqs, totals): sums[n] and sumsqs[n] accumulate v_n and
    v_n^2 over the samples, totals[i] = sum_n v_n(xs[i]).  v_n is pi times
    the Fock-state Wigner function at |alpha|^2 = x/4.
    """
    xs = np.asarray(xs, dtype=np.float64)
    sums = np.empty(n_max + 1)
    sumsqs = np.empty(n_max + 1)
    m_prev, E = _init_mantissas(xs)
    v = 2.0 * np.ldexp(m_prev, E)
    sums[0] = v.sum()
    sumsqs[0] = np.sum(v * v)
    totals = v.copy()
    if n_max == 0:
        return sums, sumsqs, totals
    m_cur = (1.0 - xs) * m_prev
    v = -2.0 * np.ldexp(m_cur, E)
    sums[1] = v.sum()
    sumsqs[1] = np.sum(v * v)
    totals += v
    sign = -1.0
    for k in range(1, n_max):
        m_next = ((2.0 * k + 1.0 - xs) * m_cur - k * m_prev) / (k + 1.0)
        m_prev, m_cur = m_cur, m_next
        _renormalize(m_cur, m_prev, E)
        sign = -sign
        v = 2.0 * sign * np.ldexp(m_cur, E)
        sums[k + 1] = v.sum()
        sumsqs[k + 1] = np.sum(v * v)
        totals += v
    return sums, sumsqs, totals


def bh_rk4(a1, a2, omega, u, dt, n_steps):
    """Fixed-step RK4 for the two-mode amplitude equations.

    da1/dt = i*omega*a2 - i*u*(|a1|^2 - 1)*a1   (and 1 <-> 2 symmetric).
    Returns evolved copies; inputs are not modified.
    """
    a1 = np.array(a1, dtype=np.complex128, copy=True)
    a2 = np.array(a2, dtype=np.complex128, copy=True)

    def rhs(b1, b2):
        d1 = 1j * omega * b2 - 1j * u * (np.abs(b1) ** 2 - 1.0) * b1
        d2 = 1j * omega * b1 - 1j * u * (np.abs(b2) ** 2 - 1.0) * b2
        return d1, d2

    for _ in range(n_steps):
        k1 = rhs(a1, a2)
        k2 = rhs(a1 + 0.5 * dt * k1[0], a2 + 0.5 * dt * k1[1])
        k3 = rhs(a1 + 0.5 * dt * k2[0], a2 + 0.5 * dt * k2[1])
        k4 = rhs(a1 + dt * k3[0], a2 + dt * k3[1])
        a1 = a1 + (dt / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        a2 = a2 + (dt / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    return a1, a2
