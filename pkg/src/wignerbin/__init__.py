"""wignerbin: particle-number distributions from binned Wigner-function samples.

Estimate P_n by sorting stochastic phase-space samples of |alpha|^2 into unit
bins, quantify when that heuristic is trustworthy (smoothness of the radial
profile against the Fock-Wigner oscillation scale), and validate it against
exact routes: closed forms, overlap quadrature, and stochastic Wigner
averages of stably-evaluated Laguerre kernels.
"""

__version__ = "0.1.0"

from ._backend import BACKEND, HAVE_COMPILED
from .analytic import (
    SqueezedCoherentParams,
    dB_thermal,
    pn_gaussian_approximation,
    pn_squeezed_coherent,
    pn_thermal,
    sigma_eff,
    variance_formula,
)
from .binning import (
    BinSpec,
    bin_ensemble,
    binned_mean_analytic,
    boxcar_wigner,
    pn_binned_analytic,
    pn_boxcar_quadrature,
)
from .bose_hubbard import (
    BHParams,
    FockStateVector,
    compare_distributions,
    exact_evolve,
    twa_evolve,
)
from .diagnostics import (
    BhattacharyyaResult,
    RadialProfile,
    ScalingFit,
    SmoothnessVerdict,
    bhattacharyya,
    bhattacharyya_debiased,
    count_local_maxima,
    deficit_profile,
    fit_scaling_exponent,
    radial_profile,
    smoothness_check,
)
from .distributions import (
    Method,
    NumberDistribution,
    load_distribution_csv,
    save_distribution_csv,
)
from .fock import (
    LaguerreScaledValue,
    fock_gaussian_ring_density,
    fock_wigner,
    laguerre_scaled,
    pn_quadrature,
    pn_wigner_average,
    sample_fock_gaussian_ring,
)
from .states import (
    GaussianWignerState,
    StateKind,
    TrajectoryEnsemble,
    density,
    load_ensemble_csv,
    sample,
    save_ensemble_csv,
    to_polar,
)

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "BHParams",
    "BhattacharyyaResult",
    "BinSpec",
    "FockStateVector",
    "GaussianWignerState",
    "LaguerreScaledValue",
    "Method",
    "NumberDistribution",
    "RadialProfile",
    "ScalingFit",
    "SmoothnessVerdict",
    "SqueezedCoherentParams",
    "StateKind",
    "TrajectoryEnsemble",
    "bhattacharyya",
    "bhattacharyya_debiased",
    "bin_ensemble",
    "binned_mean_analytic",
    "boxcar_wigner",
    "compare_distributions",
    "count_local_maxima",
    "dB_thermal",
    "deficit_profile",
    "density",
    "exact_evolve",
    "fit_scaling_exponent",
    "fock_gaussian_ring_density",
    "fock_wigner",
    "laguerre_scaled",
    "load_distribution_csv",
    "load_ensemble_csv",
    "pn_binned_analytic",
    "pn_boxcar_quadrature",
    "pn_gaussian_approximation",
    "pn_quadrature",
    "pn_squeezed_coherent",
    "pn_thermal",
    "pn_wigner_average",
    "radial_profile",
    "sample",
    "sample_fock_gaussian_ring",
    "save_distribution_csv",
    "save_ensemble_csv",
    "sigma_eff",
    "smoothness_check",
    "to_polar",
    "twa_evolve",
    "variance_formula",
]
