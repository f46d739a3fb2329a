"""The heuristic binned number distribution and its boxcar Wigner kernel.

Binning sorts per-sample occupations n_i = |alpha_i|^2 - 1/2 into unit
intervals n - 1/2 <= n_i < n + 1/2, i.e. |alpha|^2 into [n, n+1).  That is
exactly the overlap of the state's Wigner function with a boxcar annulus of
radii sqrt(n), sqrt(n+1) (the Planck-Bohr-Sommerfeld band), which is what
makes the procedure an approximation to the true P_n.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import map_ordered
from .distributions import Method, NumberDistribution


@dataclass(frozen=True)
class BinSpec:
    """Half-open unit bins [n, n+1) in |alpha|^2 for n = 0..n_max.

    Samples with |alpha|^2 >= n_max + 1 are counted as overflow, never
    dropped, so mass accounting stays exact.
    """

    n_max: int

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")


def bin_ensemble(ensemble, mode, spec):
    """Histogram of per-sample |alpha|^2 over unit bins, with multinomial
    standard errors and the overflow fraction in the metadata."""
    if ensemble.count < 1:
        raise ValueError("empty ensemble")
    a = ensemble.mode(mode)
    u = a.real**2 + a.imag**2
    idx = np.floor(u).astype(np.int64)
    in_range = idx <= spec.n_max
    counts = np.bincount(idx[in_range], minlength=spec.n_max + 1)
    N = ensemble.count
    probs = counts / N
    stderr = np.sqrt(probs * (1.0 - probs) / N)
    overflow = float(np.count_nonzero(~in_range)) / N
    return NumberDistribution(
        probs=probs,
        method=Method.BINNED,
        n_max=spec.n_max,
        stderr=stderr,
        meta={
            "overflow_fraction": overflow,
            "n_samples": N,
            "seed": ensemble.seed,
            "mode": mode,
            **({"state": ensemble.meta["state"]} if "state" in ensemble.meta else {}),
        },
    )


def bin_counts_split(ensemble, mode, spec):
    """(first-half, second-half) bin counts plus overflow counts.

    The split follows the fixed sample layout, so it is deterministic; used
    by the debiased statistical-distance estimator.
    """
    a = ensemble.mode(mode)
    u = a.real**2 + a.imag**2
    idx = np.floor(u).astype(np.int64)
    half = ensemble.count // 2
    out = []
    for sl in (slice(0, half), slice(half, ensemble.count)):
        part = idx[sl]
        keep = part <= spec.n_max
        out.append(np.bincount(part[keep], minlength=spec.n_max + 1))
    return out[0], out[1]


def boxcar_wigner(n, alpha):
    """1/pi inside the annulus sqrt(n) <= |alpha| < sqrt(n+1), else 0."""
    if n < 0:
        raise ValueError("Fock order must be >= 0")
    a = np.asarray(alpha, dtype=np.complex128)
    u = a.real**2 + a.imag**2
    w = np.where((u >= n) & (u < n + 1.0), 1.0 / np.pi, 0.0)
    return w if w.ndim else float(w)


def pn_binned_analytic(state, n_max):
    """Closed-form binned distribution for isotropic centered Gaussians.

    For a centered isotropic Gaussian of rms width sigma per axis the
    |alpha|^2 density is exponential, so the unit-bin masses form the
    geometric law q^n (1-q) with q = e^{-1/(2 sigma^2)} (thermal states:
    2 sigma^2 = nbar + 1/2; vacuum: q = e^{-2}).
    """
    if state.beta != 0 or abs(state.sigma_s - state.sigma_a) > 1e-12:
        raise ValueError("closed-form binning requires an isotropic centered state")
    scale = 2.0 * state.sigma_s**2
    q = np.exp(-1.0 / scale)
    n = np.arange(n_max + 1)
    probs = np.exp(-n / scale) * (1.0 - q)
    return NumberDistribution(
        probs=probs,
        method=Method.ANALYTIC,
        n_max=n_max,
        meta={"state": state.params_dict(), "overflow_fraction": float(q ** (n_max + 1))},
    )


def binned_mean_analytic(state):
    """Mean of the closed-form binned distribution, 1/(e^{1/(2 sigma^2)} - 1)."""
    if state.beta != 0 or abs(state.sigma_s - state.sigma_a) > 1e-12:
        raise ValueError("closed-form binning requires an isotropic centered state")
    scale = 2.0 * state.sigma_s**2
    return 1.0 / np.expm1(1.0 / scale)


def pn_boxcar_quadrature(state, n_max, gl_order=32, n_phi=None, threads=1):
    """Exact binned distribution pi * integral of boxcar_n * W for a Gaussian
    state: per-bin Gauss-Legendre in u = |alpha|^2 of the angular profile.

    This is the deterministic dual of bin_ensemble (no sampling noise).
    """
    from .fock import _angular_profile  # shared angular machinery

    if n_phi is None:
        r_top = np.sqrt(n_max + 1.0)
        n_phi = 1 << int(
            np.ceil(np.log2(max(256.0, 16.0 * r_top / min(state.sigma_s, state.sigma_a))))
        )
        n_phi = min(n_phi, 1 << 15)
    xg, wg = np.polynomial.legendre.leggauss(gl_order)

    def one_bin(n):
        u = (xg + 1.0) / 2.0 + n
        ph = _angular_profile(state, u, n_phi)
        return 0.5 * np.dot(wg / 2.0, ph)

    vals = map_ordered(one_bin, list(range(n_max + 1)), threads)
    probs = np.clip(np.asarray(vals), 0.0, 1.0)
    return NumberDistribution(
        probs=probs,
        method=Method.QUADRATURE,
        n_max=n_max,
        meta={
            "state": state.params_dict(),
            "kernel": "boxcar",
            "overflow_fraction": float(max(0.0, 1.0 - probs.sum())),
        },
    )


__all__ = [
    "BinSpec",
    "bin_ensemble",
    "bin_counts_split",
    "boxcar_wigner",
    "pn_binned_analytic",
    "binned_mean_analytic",
    "pn_boxcar_quadrature",
]
