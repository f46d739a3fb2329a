"""Gaussian-class Wigner states: densities and reproducible sampling.

Phase-space amplitudes are plain complex numbers (arrays of complex128 in
ensembles).  A Gaussian Wigner state is parametrized by its coherent
displacement beta, rms widths (sigma_s, sigma_a) along the principal axes,
and the squeezing angle theta; the principal frame is rotated by theta/2
relative to the lab frame.  The same container covers vacuum, coherent,
thermal and squeezed-coherent states.
"""

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from ._backend import map_ordered


class StateKind(enum.Enum):
    VACUUM = "vacuum"
    COHERENT = "coherent"
    THERMAL = "thermal"
    SQUEEZED_COHERENT = "squeezed_coherent"


def _require_finite(alpha):
    if not np.all(np.isfinite(alpha)):
        raise ValueError("non-finite phase-space amplitude")


@dataclass(frozen=True)
class GaussianWignerState:
    """Gaussian Wigner function W(alpha) with unit total mass.

    sigma_s and sigma_a are the rms widths along the squeezed and
    anti-squeezed principal axes; for minimum-uncertainty states
    sigma_s * sigma_a = 1/4.  theta is the squeezing angle: the principal
    frame is the lab frame rotated by +theta/2.
    """

    beta: complex
    sigma_s: float
    sigma_a: float
    theta: float
    kind: StateKind

    def __post_init__(self):
        if not (self.sigma_s > 0 and self.sigma_a > 0):
            raise ValueError("widths must be positive")
        if not np.isfinite([self.beta.real, self.beta.imag, self.theta]).all():
            raise ValueError("non-finite state parameters")
        tol = 1e-12
        if self.kind is StateKind.VACUUM:
            if self.beta != 0 or abs(self.sigma_s - 0.5) > tol or abs(self.sigma_a - 0.5) > tol:
                raise ValueError("vacuum requires beta=0 and widths 1/2")
        elif self.kind is StateKind.COHERENT:
            if abs(self.sigma_s - 0.5) > tol or abs(self.sigma_a - 0.5) > tol:
                raise ValueError("coherent state requires widths 1/2")
        elif self.kind is StateKind.THERMAL:
            if self.beta != 0 or abs(self.sigma_s - self.sigma_a) > tol:
                raise ValueError("thermal state is isotropic and centered")
        elif self.kind is StateKind.SQUEEZED_COHERENT:
            if abs(self.sigma_s * self.sigma_a - 0.25) > 1e-9:
                raise ValueError("squeezed coherent state requires sigma_s*sigma_a = 1/4")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def vacuum():
        return GaussianWignerState(0j, 0.5, 0.5, 0.0, StateKind.VACUUM)

    @staticmethod
    def coherent(beta):
        beta = complex(beta)
        _require_finite(beta)
        return GaussianWignerState(beta, 0.5, 0.5, 0.0, StateKind.COHERENT)

    @staticmethod
    def thermal(nbar):
        if not nbar > 0:
            raise ValueError("thermal occupation must be positive")
        sig = np.sqrt((nbar + 0.5) / 2.0)
        return GaussianWignerState(0j, sig, sig, 0.0, StateKind.THERMAL)

    @staticmethod
    def squeezed_coherent(beta, s, theta):
        beta = complex(beta)
        _require_finite(beta)
        if s < 0:
            raise ValueError("squeezing magnitude must be >= 0")
        return GaussianWignerState(
            beta, np.exp(-s) / 2.0, np.exp(s) / 2.0, float(theta), StateKind.SQUEEZED_COHERENT
        )

    # -- derived quantities ------------------------------------------------

    @property
    def nbar(self):
        """Mean occupation <a+ a> = <|alpha|^2>_W - 1/2."""
        return abs(self.beta) ** 2 + self.sigma_s**2 + self.sigma_a**2 - 0.5

    def moment_u_mean(self):
        """<|alpha|^2> under W."""
        return abs(self.beta) ** 2 + self.sigma_s**2 + self.sigma_a**2

    def moment_u_var(self):
        """Var(|alpha|^2) under W, from the rotated-frame decomposition."""
        c, s = np.cos(self.theta / 2.0), np.sin(self.theta / 2.0)
        bx, by = self.beta.real, self.beta.imag
        # displacement components in the principal frame
        b1 = bx * c + by * s
        b2 = -bx * s + by * c
        return (
            4.0 * b1**2 * self.sigma_s**2
            + 4.0 * b2**2 * self.sigma_a**2
            + 2.0 * self.sigma_s**4
            + 2.0 * self.sigma_a**4
        )

    def params_dict(self):
        return {
            "kind": self.kind.value,
            "beta_re": self.beta.real,
            "beta_im": self.beta.imag,
            "sigma_s": self.sigma_s,
            "sigma_a": self.sigma_a,
            "theta": self.theta,
        }


def density(state, alpha):
    """W(alpha) for a Gaussian state; accepts scalars or arrays."""
    a = np.asarray(alpha, dtype=np.complex128)
    _require_finite(a)
    c, s = np.cos(state.theta / 2.0), np.sin(state.theta / 2.0)
    dx = a.real - state.beta.real
    dy = a.imag - state.beta.imag
    gx = dx * c + dy * s
    gy = -dx * s + dy * c
    w = np.exp(
        -(gx**2) / (2.0 * state.sigma_s**2) - (gy**2) / (2.0 * state.sigma_a**2)
    ) / (2.0 * np.pi * state.sigma_s * state.sigma_a)
    return w if w.ndim else float(w)


def density_radial_gradient(state, r, n_phi=2048):
    """Angular integral of W and of its radial derivative at radii r.

    Returns (what, dwhat_dr) with what(r) = integral dphi W(r, phi); the
    derivative is exact (the Gaussian gradient is integrated, not finite
    differenced).  Evaluation is chunked over r to bound the temporaries.
    """
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    cphi, sphi = np.cos(phi), np.sin(phi)
    c, s = np.cos(state.theta / 2.0), np.sin(state.theta / 2.0)
    dphi = 2.0 * np.pi / n_phi
    what = np.empty(len(r))
    dwhat = np.empty(len(r))
    for lo in range(0, len(r), 512):
        sl = slice(lo, min(lo + 512, len(r)))
        dx = r[sl, None] * cphi[None, :] - state.beta.real
        dy = r[sl, None] * sphi[None, :] - state.beta.imag
        gx = dx * c + dy * s
        gy = -dx * s + dy * c
        w = np.exp(
            -(gx**2) / (2.0 * state.sigma_s**2) - (gy**2) / (2.0 * state.sigma_a**2)
        ) / (2.0 * np.pi * state.sigma_s * state.sigma_a)
        # dW/dr = (dW/dx) cos(phi) + (dW/dy) sin(phi)
        wx = -w * (gx * c / state.sigma_s**2 - gy * s / state.sigma_a**2)
        wy = -w * (gx * s / state.sigma_s**2 + gy * c / state.sigma_a**2)
        what[sl] = w.sum(axis=1) * dphi
        dwhat[sl] = (wx * cphi + wy * sphi).sum(axis=1) * dphi
    return what, dwhat


@dataclass(frozen=True)
class TrajectoryEnsemble:
    """Sampled phase-space amplitudes, (n_modes, count) complex128.

    Regeneration from (seed, stream_count, count) and the generating state is
    deterministic and independent of how the streams were scheduled.
    """

    samples: np.ndarray
    seed: int
    stream_count: int
    count: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.samples.ndim != 2 or self.samples.shape[1] != self.count:
            raise ValueError("samples must have shape (n_modes, count)")
        if self.count < 1:
            raise ValueError("ensemble must contain at least one sample")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("non-finite samples in ensemble")

    @property
    def n_modes(self):
        return self.samples.shape[0]

    def mode(self, i):
        return self.samples[i]


def stream_draws(seed, count, stream_count, threads=1, uniform=False, rows=2):
    """(rows, count) deviates from counter-based Philox streams.

    Stream j covers a fixed index range, so the assembled array depends only
    on (seed, count, stream_count), never on worker scheduling.
    """
    per = -(-count // stream_count)  # ceil

    def gen(j):
        lo = j * per
        hi = min(lo + per, count)
        if hi <= lo:
            return np.empty((rows, 0))
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(j))
        if uniform:
            return rng.random((rows, hi - lo))
        return rng.standard_normal((rows, hi - lo))

    parts = map_ordered(gen, list(range(stream_count)), threads)
    return np.concatenate(parts, axis=1)


def default_stream_count(count):
    return max(1, -(-count // (1 << 16)))


def sample(state, count, seed, stream_count=None, threads=1):
    """Draw count samples of W(state): scale standard normals by the
    principal widths, rotate by theta/2, translate by beta."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if stream_count is None:
        stream_count = default_stream_count(count)
    z1, z2 = stream_draws(seed, count, stream_count, threads)
    g1 = state.sigma_s * z1
    g2 = state.sigma_a * z2
    c, s = np.cos(state.theta / 2.0), np.sin(state.theta / 2.0)
    ax = state.beta.real + g1 * c - g2 * s
    ay = state.beta.imag + g1 * s + g2 * c
    samples = (ax + 1j * ay)[None, :]
    return TrajectoryEnsemble(
        samples=samples,
        seed=seed,
        stream_count=stream_count,
        count=count,
        meta={"state": state.params_dict()},
    )


def to_polar(ensemble):
    """(r, phi) per mode with phi in [0, 2*pi)."""
    r = np.abs(ensemble.samples)
    phi = np.mod(np.angle(ensemble.samples), 2.0 * np.pi)
    # mod of a tiny negative angle rounds to exactly 2*pi
    phi[phi >= 2.0 * np.pi] = 0.0
    return r, phi


# -- ensemble file format -------------------------------------------------


def save_ensemble_csv(ensemble, path):
    """CSV with columns (mode, re, im); '#' header carries seed/count/state."""
    header = dict(ensemble.meta)
    header.update(seed=ensemble.seed, count=ensemble.count, stream_count=ensemble.stream_count)
    with open(path, "w") as f:
        f.write("# " + json.dumps(header) + "\n")
        f.write("mode,re,im\n")
        for m in range(ensemble.n_modes):
            col = ensemble.samples[m]
            for z in col:
                f.write(f"{m},{float(z.real)!r},{float(z.imag)!r}\n")


def load_ensemble_csv(path):
    with open(path) as f:
        first = f.readline()
        meta = json.loads(first[1:].strip()) if first.startswith("#") else {}
        data = np.loadtxt(f, delimiter=",", skiprows=1, ndmin=2)
    modes = data[:, 0].astype(int)
    n_modes = modes.max() + 1
    count = int(meta.get("count", np.sum(modes == 0)))
    samples = np.empty((n_modes, count), dtype=np.complex128)
    for m in range(n_modes):
        rows = data[modes == m]
        samples[m] = rows[:, 1] + 1j * rows[:, 2]
    return TrajectoryEnsemble(
        samples=samples,
        seed=int(meta.get("seed", -1)),
        stream_count=int(meta.get("stream_count", 1)),
        count=count,
        meta={k: v for k, v in meta.items() if k not in ("seed", "count", "stream_count")},
    )
