"""Closed-form number distributions for thermal and squeezed coherent states.

These serve as exact oracles for the stochastic and quadrature routes.  The
squeezed-coherent P_n needs the complex-argument Hermite polynomial at large
order; it is carried through the same exponent-scaled recurrence used for
the Laguerre kernels, with every prefactor assembled in log space, so the
evaluation cannot overflow.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .distributions import Method, NumberDistribution
from .states import GaussianWignerState


@dataclass(frozen=True)
class SqueezedCoherentParams:
    """Displacement |beta| e^{i varphi} and squeezing s e^{i theta}."""

    beta_mag: float
    varphi: float = 0.0
    s: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if self.beta_mag < 0:
            raise ValueError("displacement magnitude must be >= 0")
        if self.s < 0:
            raise ValueError("squeezing magnitude must be >= 0")

    @property
    def beta(self):
        return self.beta_mag * np.exp(1j * self.varphi)

    @property
    def mean_occupation(self):
        return self.beta_mag**2 + np.sinh(self.s) ** 2

    @property
    def occupation_variance(self):
        """Exact Var(n); the displacement term matches variance_formula."""
        return variance_formula(self) + 2.0 * np.sinh(self.s) ** 2 * np.cosh(self.s) ** 2

    def to_state(self):
        return GaussianWignerState.squeezed_coherent(self.beta, self.s, self.theta)


def variance_formula(p):
    """|beta|^2 [e^{-2s} cos^2(varphi - theta/2) + e^{2s} sin^2(varphi - theta/2)],
    the displacement part of Var(n), exact for s = 0."""
    ang = p.varphi - p.theta / 2.0
    return p.beta_mag**2 * (
        np.exp(-2.0 * p.s) * np.cos(ang) ** 2 + np.exp(2.0 * p.s) * np.sin(ang) ** 2
    )


def sigma_eff(p):
    """Effective radial rms width of the displaced Gaussian Wigner function."""
    ang = p.varphi - p.theta / 2.0
    ss, sa = np.exp(-p.s) / 2.0, np.exp(p.s) / 2.0
    return np.sqrt(ss**2 * np.cos(ang) ** 2 + sa**2 * np.sin(ang) ** 2)


# -- thermal -----------------------------------------------------------------


def pn_thermal(nbar, n_max=None):
    """Geometric law nbar^n / (nbar+1)^{n+1}."""
    if not nbar > 0:
        raise ValueError("thermal occupation must be positive")
    if n_max is None:
        n_max = int(np.ceil(50.0 * nbar)) + 50
    n = np.arange(n_max + 1)
    probs = np.exp(n * (np.log(nbar) - np.log(nbar + 1.0)) - np.log(nbar + 1.0))
    return NumberDistribution(
        probs=probs,
        method=Method.ANALYTIC,
        n_max=n_max,
        meta={"state": {"kind": "thermal", "nbar": nbar}},
    )


def dB_thermal(nbar):
    """Closed-form Bhattacharyya distance between the thermal P_n and the
    binned distribution of the thermal Wigner function.

    Algebraically D_B = -1/2 ln(1 - e^{-2a}) + ln(sqrt(nbar+1) - sqrt(nbar)
    e^{-a}) with a = 1/(2 nbar + 1), but the two terms cancel to ~nbar^{-4},
    so the difference is rearranged into the equivalent cancellation-free
    form D_B = 1/2 log1p[ nbar expm1(g)^2 / (-expm1(-2a)) ] with
    g = 1/2 log1p(1/nbar) - a.
    """
    if not nbar > 0:
        raise ValueError("thermal occupation must be positive")
    a = 1.0 / (2.0 * nbar + 1.0)
    g = 0.5 * np.log1p(1.0 / nbar) - a
    return 0.5 * np.log1p(nbar * np.expm1(g) ** 2 / (-np.expm1(-2.0 * a)))


# -- squeezed coherent --------------------------------------------------------


def hermite_logabs(z, n_max):
    """ln|H_n(z)| for complex z, physicists' convention, n = 0..n_max.

    Recurrence H_{n+1} = 2 z H_n - 2 n H_{n-1} carried as a complex mantissa
    pair with a shared base-2 exponent.  Unlike the Laguerre case the
    per-step multiplier |z| is unbounded, so the pair is renormalized to
    O(1) at every step.  Exact zeros give -inf.
    """
    import math

    out = np.empty(n_max + 1)
    out[0] = 0.0
    if n_max == 0:
        return out
    z = complex(z)
    m_prev, m_cur = 1.0 + 0j, 2.0 * z
    E = 0
    aM = abs(m_cur)
    if aM > 0:
        ex = math.frexp(aM)[1]
        m_prev, m_cur = math.ldexp(1.0, -ex) * m_prev, math.ldexp(1.0, -ex) * m_cur
        E += ex
    out[1] = (np.log(abs(m_cur)) + E * np.log(2.0)) if m_cur != 0 else -np.inf
    for k in range(1, n_max):
        m_next = 2.0 * z * m_cur - 2.0 * k * m_prev
        m_prev, m_cur = m_cur, m_next
        aM = max(abs(m_cur), abs(m_prev))
        if aM > 0:
            ex = math.frexp(aM)[1]
            if ex:
                scale = math.ldexp(1.0, -ex)
                m_prev *= scale
                m_cur *= scale
                E += ex
        out[k + 1] = (np.log(abs(m_cur)) + E * np.log(2.0)) if m_cur != 0 else -np.inf
    return out


def _poisson(lam, n_max):
    n = np.arange(n_max + 1)
    if lam == 0:
        return (n == 0).astype(float)
    return np.exp(n * np.log(lam) - lam - gammaln(n + 1.0))


def _pn_squeezed_raw(p, n_max):
    if p.s < 1e-12:
        # below double-precision relevance the state is a coherent state
        return _poisson(p.beta_mag**2, n_max)
    t = np.tanh(p.s)
    z = (p.beta + np.conj(p.beta) * np.exp(1j * p.theta) * t) / np.sqrt(
        2.0 * np.exp(1j * p.theta) * t
    )
    lh = hermite_logabs(z, n_max)
    n = np.arange(n_max + 1)
    log_cosh = p.s + np.log1p(np.exp(-2.0 * p.s)) - np.log(2.0)
    logp = (
        n * np.log(t / 2.0)
        - gammaln(n + 1.0)
        - log_cosh
        - p.beta_mag**2 * (1.0 + np.cos(2.0 * p.varphi - p.theta) * t)
        + 2.0 * lh
    )
    return np.exp(logp)


def pn_squeezed_coherent(p, n_max=None, tail_tol=1e-9):
    """Exact P_n of the squeezed coherent state (Poisson limit at s = 0).

    With n_max unset, the cutoff starts at mean + 12*std + 50 and grows until
    the retained mass is within tail_tol of 1 (the oscillatory tails decay
    slower than a Gaussian in n).
    """
    if n_max is not None:
        probs = _pn_squeezed_raw(p, n_max)
    else:
        n_max = int(np.ceil(p.mean_occupation + 12.0 * np.sqrt(p.occupation_variance) + 50.0))
        for _ in range(12):
            probs = _pn_squeezed_raw(p, n_max)
            if 1.0 - probs.sum() < tail_tol:
                break
            n_max = int(1.5 * n_max) + 50
    return NumberDistribution(
        probs=np.clip(probs, 0.0, 1.0),
        method=Method.ANALYTIC,
        n_max=n_max,
        meta={
            "state": {
                "kind": "squeezed_coherent",
                "beta_mag": p.beta_mag,
                "varphi": p.varphi,
                "s": p.s,
                "theta": p.theta,
            }
        },
    )


def pn_gaussian_approximation(p, n_max):
    """Large-displacement Gaussian stand-in for the squeezed-coherent P_n,
    centered at |beta|^2 with variance given by variance_formula."""
    var = variance_formula(p)
    n = np.arange(n_max + 1)
    vals = np.exp(-((n - p.beta_mag**2) ** 2) / (2.0 * var)) / np.sqrt(2.0 * np.pi * var)
    return vals
