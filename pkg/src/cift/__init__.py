"""cift: dataset-composition tuning via feature-space signal-to-noise.

Compute the per-ratio feature-space SNR of real/synthetic mixtures, locate
the decoherence point (the first strict local minimum of the SNR curve),
select the mixing ratio that maximizes SNR inside the coherent regime,
score open-loop robustness from ID/OOD MSE tables, and verify the
supporting closed forms against brute-force oracles.
"""

from cift.composition import (
    MixRatio,
    MixturePlan,
    Mixture,
    SnrPoint,
    SubsampleSeeded,
    SweepReport,
    TakeAll,
    compose,
    detect_decoherence,
    run_sweep,
    select_lambda_star,
    snr_of_mixture,
    sweep_features,
)
from cift.feature_store import (
    FeatureMatrix,
    FileFormat,
    Manifest,
    ManifestEntry,
    SourceTag,
    load_features,
    load_manifest,
    write_features,
    write_manifest,
)
from cift.numstats import (
    GaussianFit,
    GaussianMoments,
    PcaResult,
    first_principal_component,
    fit_gaussian,
    frechet_distance_sq,
    power_iteration,
    project,
)
from cift.robustness import (
    Condition,
    MseTable,
    RsPoint,
    read_mse_csv,
    robustness_score,
    rs_curve,
)

__version__ = "0.1.0"

__all__ = [
    "Condition",
    "FeatureMatrix",
    "FileFormat",
    "GaussianFit",
    "GaussianMoments",
    "Manifest",
    "ManifestEntry",
    "MixRatio",
    "Mixture",
    "MixturePlan",
    "MseTable",
    "PcaResult",
    "RsPoint",
    "SnrPoint",
    "SourceTag",
    "SubsampleSeeded",
    "SweepReport",
    "TakeAll",
    "compose",
    "detect_decoherence",
    "first_principal_component",
    "fit_gaussian",
    "frechet_distance_sq",
    "load_features",
    "load_manifest",
    "power_iteration",
    "project",
    "read_mse_csv",
    "robustness_score",
    "rs_curve",
    "run_sweep",
    "select_lambda_star",
    "snr_of_mixture",
    "sweep_features",
    "write_features",
    "write_manifest",
]
