"""Independent oracles used by the test suite.

These deliberately avoid the library's own code paths: arbitrary-precision
recurrences via mpmath, and brute-force Gauss-Legendre quadrature built
directly on numpy for moments and overlaps.
"""

import mpmath as mp
import numpy as np


def laguerre_halfexp_mp(n, x, dps=60):
    """e^{-x/2} L_n(x) by the plain three-term recurrence in dps-digit
    arithmetic (no scaling tricks needed at arbitrary precision)."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        prev, cur = mp.mpf(1), 1 - xm
        if n == 0:
            cur = prev
        for k in range(1, n):
            prev, cur = cur, ((2 * k + 1 - xm) * cur - k * prev) / (k + 1)
        return float(mp.e ** (-xm / 2) * cur)


def hermite_log_abs2_mp(zr, zi, n, dps=80):
    """ln |H_n(z)|^2 for complex z via the mpmath recurrence."""
    with mp.workdps(dps):
        z = mp.mpc(zr, zi)
        prev, cur = mp.mpc(1), 2 * z
        if n == 0:
            cur = prev
        for k in range(1, n):
            prev, cur = cur, 2 * z * cur - 2 * k * prev
        return float(2 * mp.log(abs(cur)))


def gl_integral(fn, lo, hi, panels=400, order=16):
    """Composite Gauss-Legendre quadrature of a vectorized integrand."""
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    h = edges[1] - edges[0]
    x = ((xg[None, :] + 1.0) * h / 2.0 + edges[:-1, None]).ravel()
    w = np.broadcast_to(wg[None, :] * h / 2.0, (panels, order)).ravel()
    return float(np.dot(w, fn(x)))


def fock_moment_u(n, k, u_max=None, panels=2000):
    """<|alpha|^2^k> of the exact order-n Fock Wigner function:
    2 (-1)^n Integral u^k e^{-2u} L_n(4u) du."""
    from wignerbin._core_py import laguerre_halfexp

    if u_max is None:
        u_max = 4.0 * (n + 1) + 20.0
    val = gl_integral(
        lambda u: (u**k) * laguerre_halfexp(n, 4.0 * u), 0.0, u_max, panels=panels
    )
    return 2.0 * (-1.0) ** n * val


def disk_quadrature_2d(fn, r_max, n_r=600, n_phi=512):
    """2-D integral of fn(alpha) over the disk |alpha| <= r_max."""
    xg, wg = np.polynomial.legendre.leggauss(64)
    panels = max(8, int(n_r // 64))
    edges = np.linspace(0.0, r_max**2, panels + 1)
    h = edges[1] - edges[0]
    u = ((xg[None, :] + 1.0) * h / 2.0 + edges[:-1, None]).ravel()
    wu = np.broadcast_to(wg[None, :] * h / 2.0, (panels, 64)).ravel()
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    alpha = np.sqrt(u)[:, None] * np.exp(1j * phi)[None, :]
    vals = fn(alpha)
    return float(np.dot(wu, vals.sum(axis=1)) * (2.0 * np.pi / n_phi) / 2.0)
