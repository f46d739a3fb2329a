"""Discrete occupation-number distributions and their CSV serialization."""

import enum
import json
from dataclasses import dataclass, field

import numpy as np


class Method(enum.Enum):
    BINNED = "binned"
    ANALYTIC = "analytic"
    QUADRATURE = "quadrature"
    WIGNER_AVERAGE = "wigner_average"


_STOCHASTIC = {Method.BINNED, Method.WIGNER_AVERAGE}


@dataclass(frozen=True)
class NumberDistribution:
    """Probability mass over n = 0..n_max with a provenance tag.

    Deterministic methods must produce entries in [0, 1] summing to at most
    1 (+1e-9).  Stochastic estimates carry per-entry standard errors; the
    Wigner-average estimator is unbiased but not sign-constrained, so its
    entries are only required to lie within a few standard errors of [0, 1]
    and its total may exceed 1 by noise.
    """

    probs: np.ndarray
    method: Method
    n_max: int
    stderr: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", p)
        if p.shape != (self.n_max + 1,):
            raise ValueError("probs must have length n_max + 1")
        if not np.all(np.isfinite(p)):
            raise ValueError("non-finite probabilities")
        if (self.stderr is not None) != (self.method in _STOCHASTIC):
            raise ValueError("stderr must be present exactly for stochastic methods")
        if self.method is Method.WIGNER_AVERAGE:
            slack = np.maximum(1e-9, 6.0 * self.stderr)
            if np.any(p < -slack) or np.any(p > 1.0 + slack):
                raise ValueError("entries outside [0,1] beyond noise allowance")
            total_slack = max(1e-9, 6.0 * float(self.meta.get("sum_stderr", np.sqrt(np.sum(self.stderr**2)))))
            if p.sum() > 1.0 + total_slack:
                raise ValueError("total mass exceeds 1 beyond noise allowance")
        else:
            if np.any(p < -1e-12) or np.any(p > 1.0 + 1e-12):
                raise ValueError("entries outside [0,1]")
            if p.sum() > 1.0 + 1e-9:
                raise ValueError("total mass exceeds 1")

    @property
    def n(self):
        return np.arange(self.n_max + 1)

    def mean(self):
        return float(np.dot(self.n, self.probs))

    def total(self):
        return float(self.probs.sum())

    def overflow_fraction(self):
        return float(self.meta.get("overflow_fraction", 0.0))


def save_distribution_csv(dist, path):
    """Columns (n, p, stderr, method); '#' metadata row with parameters."""
    with open(path, "w") as f:
        f.write("# " + json.dumps(dist.meta) + "\n")
        f.write("n,p,stderr,method\n")
        se = dist.stderr if dist.stderr is not None else np.full(dist.n_max + 1, np.nan)
        for n in range(dist.n_max + 1):
            f.write(f"{n},{float(dist.probs[n])!r},{float(se[n])!r},{dist.method.value}\n")


def load_distribution_csv(path):
    with open(path) as f:
        first = f.readline()
        meta = json.loads(first[1:].strip()) if first.startswith("#") else {}
        rows = f.read().strip().split("\n")[1:]
    n_max = len(rows) - 1
    probs = np.empty(n_max + 1)
    stderr = np.empty(n_max + 1)
    method = None
    for row in rows:
        n_s, p_s, se_s, m_s = row.split(",")
        n = int(n_s)
        probs[n] = float(p_s)
        stderr[n] = float(se_s)
        method = Method(m_s)
    has_se = np.all(np.isfinite(stderr))
    return NumberDistribution(
        probs=probs,
        method=method,
        n_max=n_max,
        stderr=stderr if has_se else None,
        meta=meta,
    )
