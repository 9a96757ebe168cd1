"""Point-cloud topology toolkit.

Persistence diagrams of Vietoris-Rips filtrations (radius scale), Wasserstein
and bottleneck diagram distances, simulated-annealing linear reduction that
preserves diagrams, subspace geometry (principal angles, geodesic maps,
medians) and interval-wise projection similarity measures.
"""

from ._core import (
    AnnealingSettings,
    ConfigError,
    IoError,
    NumericError,
    __version__,
    anneal,
    bottleneck,
    cylinder,
    diameter,
    distributed_reduce,
    eta_bounds,
    exp_map,
    extrinsic_mean,
    iris,
    log_map,
    mu_quasi_iso,
    pairwise_distances,
    pca,
    principal_angles,
    project,
    random_frame,
    rips_diagrams,
    similarity_report,
    subspace_distance,
    wasserstein,
    weiszfeld_median,
)

__all__ = [
    "AnnealingSettings",
    "ConfigError",
    "IoError",
    "NumericError",
    "__version__",
    "anneal",
    "bottleneck",
    "cylinder",
    "diameter",
    "distributed_reduce",
    "eta_bounds",
    "exp_map",
    "extrinsic_mean",
    "iris",
    "log_map",
    "mu_quasi_iso",
    "pairwise_distances",
    "pca",
    "principal_angles",
    "project",
    "random_frame",
    "rips_diagrams",
    "similarity_report",
    "subspace_distance",
    "wasserstein",
    "weiszfeld_median",
]
