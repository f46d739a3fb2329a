"""Validity diagnostics for binned number distributions.

A binned distribution is trustworthy where the state's radial profile is
smooth on the oscillation scale 1/sqrt(n) of the order-n Fock Wigner
function.  The working quantity is the inhomogeneity length of the angular
profile, l_inh(r) = what(r)/|d what/dr| with what(r) the plain angular
integral of W (no radial Jacobian; that convention is what reproduces the
thermal closed form (nbar + 1/2)/(2r)).  The stored profile w(r) = r*what(r)
is the radial probability density and integrates to 1.
"""

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .distributions import NumberDistribution
from .states import GaussianWignerState, TrajectoryEnsemble, density_radial_gradient


class ProfileSource(enum.Enum):
    ANALYTIC = "analytic"
    HISTOGRAM = "histogram"


@dataclass(frozen=True)
class RadialProfile:
    r_grid: np.ndarray
    w: np.ndarray
    l_inh: np.ndarray
    source: ProfileSource
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(self.w < -1e-12):
            raise ValueError("negative radial density")


def _boxcar_smooth(y, window):
    if window <= 1:
        return y
    kernel = np.ones(window) / window
    pad = window // 2
    ext = np.concatenate([y[pad:0:-1], y, y[-2 : -pad - 2 : -1]])
    return np.convolve(ext, kernel, mode="valid")


def radial_profile(source, r_max=None, n_points=512, mode=0, n_phi=2048, smooth_window=3):
    """Radial density w(r) and inhomogeneity length on a uniform grid.

    Analytic sources evaluate the angular integral of W and of its exact
    radial gradient.  Ensembles are histogrammed over the grid (nodes are
    bin centers), boxcar-smoothed, and differentiated centrally.
    """
    if n_points < 200:
        raise ValueError("grid must have at least 200 points")
    if isinstance(source, GaussianWignerState):
        if r_max is None:
            r_max = abs(source.beta) + 8.0 * max(source.sigma_s, source.sigma_a)
        r = np.linspace(0.0, r_max, n_points)
        what, dwhat = density_radial_gradient(source, r, n_phi=n_phi)
        w = r * what
        with np.errstate(divide="ignore", invalid="ignore"):
            l_inh = np.where(np.abs(dwhat) > 0.0, what / np.abs(dwhat), np.inf)
        return RadialProfile(r, w, l_inh, ProfileSource.ANALYTIC, {"state": source.params_dict()})
    if isinstance(source, TrajectoryEnsemble):
        if source.count < 1:
            raise ValueError("empty ensemble")
        radii = np.abs(source.mode(mode))
        return radial_profile_from_radii(radii, r_max, n_points, smooth_window)
    raise TypeError("source must be a GaussianWignerState or TrajectoryEnsemble")


def radial_profile_from_radii(radii, r_max=None, n_points=512, smooth_window=3):
    """Histogram path shared by ensembles and 2-D Wigner reconstructions.

    Derivative estimates that are not statistically significant (below 3
    standard errors of the count noise) are treated as unresolved-flat and
    yield the infinite l_inh sentinel, like an exactly vanishing slope;
    otherwise count noise in near-flat regions would masquerade as strong
    inhomogeneity.
    """
    if r_max is None:
        r_max = float(radii.max()) * 1.001 + 1e-9
    n = len(radii)
    r = np.linspace(0.0, r_max, n_points)
    dr = r[1] - r[0]
    edges = np.concatenate([[0.0], r[:-1] + dr / 2.0, [r[-1] + dr / 2.0]])
    counts, _ = np.histogram(radii, bins=edges)
    widths = np.diff(edges)
    w_raw = counts / (n * widths)
    w = _boxcar_smooth(w_raw, smooth_window)
    r_safe = np.maximum(r, dr)
    what = w / r_safe
    dwhat = np.gradient(what, r)
    # count-noise floor of the central difference of the smoothed profile:
    # a +-1 shift of an m-bin boxcar swaps 2 bins, so sigma_d = sigma_bin/(m dr)
    se_bin = np.sqrt(np.maximum(counts, 1.0)) / (n * widths) / r_safe
    se_d = _boxcar_smooth(se_bin, smooth_window) / (max(smooth_window, 1) * dr)
    resolved = np.abs(dwhat) > 3.0 * se_d
    # the innermost nodes mix the half-width r=0 bin into the w/r division;
    # no angular profile is measurable below a few bin widths
    resolved[: smooth_window // 2 + 2] = False
    with np.errstate(divide="ignore", invalid="ignore"):
        l_inh = np.where(resolved & (np.abs(dwhat) > 0.0), what / np.abs(dwhat), np.inf)
    return RadialProfile(
        r, w, l_inh, ProfileSource.HISTOGRAM, {"n_samples": int(n), "dr": dr}
    )


@dataclass(frozen=True)
class SmoothnessVerdict:
    n: int
    passed: bool
    min_value: float
    threshold: float


def smoothness_check(profile, n, threshold=10.0, support_eps=1e-3):
    """Minimum of sqrt(n) * l_inh over the overlap region.

    The region is r <= sqrt(n+1) restricted to where the radial density is
    appreciable (w >= support_eps * max(w)).  An empty region means the state
    has no support inside the Fock band at all, which the band picture cannot
    certify either, so it counts as a failure.
    """
    r = profile.r_grid
    if r[-1] < np.sqrt(n + 1.0):
        raise ValueError("profile grid does not cover the Fock band radius sqrt(n+1)")
    region = (r <= np.sqrt(n + 1.0)) & (profile.w >= support_eps * profile.w.max())
    if not region.any() or n == 0:
        # no overlap support (or the n=0 band, whose oscillation scale is
        # unbounded): the band picture cannot be certified
        return SmoothnessVerdict(n=n, passed=False, min_value=0.0, threshold=threshold)
    finite = np.isfinite(profile.l_inh[region])
    if not finite.any():
        return SmoothnessVerdict(n=n, passed=True, min_value=np.inf, threshold=threshold)
    min_value = float(np.sqrt(n) * np.min(profile.l_inh[region][finite]))
    return SmoothnessVerdict(n=n, passed=min_value >= threshold, min_value=min_value, threshold=threshold)


@dataclass(frozen=True)
class BhattacharyyaResult:
    coefficient: float
    distance: float


def _aligned_probs(p, q):
    pa = p.probs if isinstance(p, NumberDistribution) else np.asarray(p, dtype=float)
    qa = q.probs if isinstance(q, NumberDistribution) else np.asarray(q, dtype=float)
    n = max(len(pa), len(qa))
    pa = np.pad(pa, (0, n - len(pa)))
    qa = np.pad(qa, (0, n - len(qa)))
    return pa, qa


def _check_normalized(dist, arr, tag):
    total = arr.sum()
    if isinstance(dist, NumberDistribution):
        total += dist.overflow_fraction()
    if abs(total - 1.0) > 0.01:
        warnings.warn(f"{tag} distribution mass {total:.4f} deviates from 1", stacklevel=3)


def bhattacharyya(p, q):
    """Bhattacharyya coefficient B = sum sqrt(p_n q_n) and distance -ln B.

    Shorter distributions are zero-padded; disjoint supports give B = 0 and
    an infinite distance.  Unnormalized inputs (after overflow accounting)
    trigger a warning.
    """
    pa, qa = _aligned_probs(p, q)
    _check_normalized(p, pa, "first")
    _check_normalized(q, qa, "second")
    coeff = float(np.sum(np.sqrt(np.clip(pa, 0.0, None) * np.clip(qa, 0.0, None))))
    distance = -np.log(coeff) if coeff > 0.0 else np.inf
    return BhattacharyyaResult(coefficient=coeff, distance=float(distance))


def bhattacharyya_debiased(exact, counts_half1, counts_half2):
    """Half-sample (Richardson) debiased distance of binned counts against an
    exact reference.

    The plain plug-in estimator overshoots by O(K / 8N) from the multinomial
    noise of the counts; extrapolating the full-sample and half-sample
    estimates in 1/N removes that leading term.  Needed when the true
    distance is comparable to the bias (desk-scale sample counts).
    """
    pa = exact.probs if isinstance(exact, NumberDistribution) else np.asarray(exact, dtype=float)
    c1 = np.asarray(counts_half1, dtype=float)
    c2 = np.asarray(counts_half2, dtype=float)
    n1, n2 = c1.sum(), c2.sum()

    def dist(counts, total):
        m = min(len(pa), len(counts))
        b = np.sum(np.sqrt(pa[:m] * counts[:m] / total))
        return -np.log(b) if b > 0 else np.inf

    d_full = dist(c1 + c2, n1 + n2)
    d_half = 0.5 * (dist(c1, n1) + dist(c2, n2))
    return 2.0 * d_full - d_half


def deficit_profile(p, q):
    """Per-n contribution (sqrt(p_n) - sqrt(q_n))^2 / 2 to 1 - B; localizes
    where two distributions disagree."""
    pa, qa = _aligned_probs(p, q)
    return 0.5 * (np.sqrt(np.clip(pa, 0.0, None)) - np.sqrt(np.clip(qa, 0.0, None))) ** 2


def count_local_maxima(probs, floor_frac=0.0, min_prominence=0.0):
    """Interior local maxima above floor_frac * max and the given prominence.

    Prominence is measured against the neighboring values; a small multiple
    of the statistical error suppresses noise-induced wiggles when counting
    structure in sampled distributions.
    """
    p = probs.probs if isinstance(probs, NumberDistribution) else np.asarray(probs, dtype=float)
    floor = floor_frac * p.max()
    count = 0
    for i in range(1, len(p) - 1):
        if p[i] > p[i - 1] and p[i] >= p[i + 1] and p[i] > floor:
            if min(p[i] - p[i - 1], p[i] - p[i + 1]) >= min_prominence:
                count += 1
    return count


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    stderr: float
    points: list


def fit_scaling_exponent(points, min_span=10.0):
    """Least-squares slope of ln D_B against ln x with its standard error.

    Requires at least 4 points spanning a decade in x by default; min_span
    loosens that for grids fixed by protocol (e.g. a factor-8 sweep).
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 4:
        raise ValueError("need at least 4 points")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("scaling fit requires positive values")
    if xs.max() / xs.min() < min_span:
        raise ValueError(f"points must span a factor {min_span} in x")
    lx, ly = np.log(xs), np.log(ys)
    A = np.vstack([lx, np.ones_like(lx)]).T
    coef, *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = ly - A @ coef
    dof = len(pts) - 2
    se = float(np.sqrt((resid @ resid) / dof / np.sum((lx - lx.mean()) ** 2)))
    return ScalingFit(exponent=float(coef[0]), stderr=se, points=pts)
