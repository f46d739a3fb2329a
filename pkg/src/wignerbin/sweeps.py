"""Scaling sweeps of the statistical distance between binned and exact
number distributions.

Each sweep returns (x, D_B, stderr) rows plus the fitted log-log exponent.
Stochastic points use the half-sample debiased distance estimator: at desk-
scale sample counts the plug-in Bhattacharyya estimate carries an O(K/8N)
multinomial bias comparable to the smallest distances in the sweeps, and the
Richardson extrapolation removes it.  The stderr column is the half-spread
of the two half-sample estimates, a same-order noise proxy.
"""

import numpy as np

from .analytic import (
    SqueezedCoherentParams,
    _poisson,
    dB_thermal,
    pn_squeezed_coherent,
)
from .binning import BinSpec, bin_counts_split, bin_ensemble
from .diagnostics import bhattacharyya, bhattacharyya_debiased, fit_scaling_exponent
from .distributions import Method, NumberDistribution
from .fock import auto_n_max
from .states import GaussianWignerState, sample

DEFAULT_THERMAL_NBARS = (10.0, 20.0, 50.0, 100.0, 200.0)
DEFAULT_COHERENT_BETA_SQ = (25.0, 50.0, 100.0, 200.0)
DEFAULT_SIGMA_EFF = (0.25, 0.29, 0.34, 0.40, 0.47, 0.55, 0.64, 0.75, 0.88, 1.1)


def _stochastic_distance(state, exact, n_samples, seed, threads=1, debias=True):
    ens = sample(state, n_samples, seed, threads=threads)
    spec = BinSpec(exact.n_max)
    c1, c2 = bin_counts_split(ens, 0, spec)
    if debias:
        d = bhattacharyya_debiased(exact, c1, c2)
    else:
        d = bhattacharyya(bin_ensemble(ens, 0, spec), exact).distance
    n_half = ens.count // 2

    def half_dist(c, tot):
        b = np.sum(np.sqrt(exact.probs[: len(c)] * c / tot))
        return -np.log(b) if b > 0 else np.inf

    dh1, dh2 = half_dist(c1, n_half), half_dist(c2, ens.count - n_half)
    return d, abs(dh1 - dh2) / 2.0


def sweep_thermal(nbars=DEFAULT_THERMAL_NBARS):
    """Closed-form D_B(nbar); exact, so stderr is zero."""
    rows = [(float(nb), float(dB_thermal(nb)), 0.0) for nb in nbars]
    fit = fit_scaling_exponent([(x, y) for x, y, _ in rows])
    return rows, fit


def sweep_coherent(
    beta_sqs=DEFAULT_COHERENT_BETA_SQ, n_samples=10**7, seed=20250809, threads=1, debias=True
):
    """D_B between binned samples of coherent states and the Poisson law,
    against x = |beta|^2."""
    rows = []
    for i, bsq in enumerate(beta_sqs):
        state = GaussianWignerState.coherent(np.sqrt(bsq))
        n_max = auto_n_max(state)
        exact = NumberDistribution(
            probs=_poisson(bsq, n_max),
            method=Method.ANALYTIC,
            n_max=n_max,
            meta={"state": {"kind": "coherent", "beta_sq": bsq}},
        )
        d, se = _stochastic_distance(state, exact, n_samples, seed + i, threads, debias)
        rows.append((float(bsq), float(d), float(se)))
    # the standard displacement grid spans a factor 8, not a full decade
    fit = fit_scaling_exponent([(x, y) for x, y, _ in rows], min_span=8.0)
    return rows, fit


def sigma_eff_state(beta_sq, sig_eff):
    """Fixed-displacement squeezed-coherent state of given effective radial
    width: amplitude squeezing (theta=0) below 1/2, phase squeezing
    (theta=pi) above."""
    if sig_eff <= 0:
        raise ValueError("sigma_eff must be positive")
    if sig_eff <= 0.5:
        s, theta = -np.log(2.0 * sig_eff), 0.0
    else:
        s, theta = np.log(2.0 * sig_eff), np.pi
    return SqueezedCoherentParams(beta_mag=np.sqrt(beta_sq), varphi=0.0, s=s, theta=theta)


def sweep_sigma_eff(
    sig_effs=DEFAULT_SIGMA_EFF, beta_sq=50.0, n_samples=10**7, seed=20250810, threads=1, debias=True
):
    """D_B between binned samples and the exact squeezed-coherent P_n,
    against x = sigma_eff at fixed displacement."""
    rows = []
    for i, se_x in enumerate(sig_effs):
        p = sigma_eff_state(beta_sq, se_x)
        exact = pn_squeezed_coherent(p)
        d, se = _stochastic_distance(p.to_state(), exact, n_samples, seed + i, threads, debias)
        rows.append((float(se_x), float(d), float(se)))
    # the width protocol pins the grid to [0.25, 1.1], a factor 4.4
    fit = fit_scaling_exponent([(x, y) for x, y, _ in rows], min_span=4.0)
    return rows, fit
