"""Composed-dataset assembly, per-ratio feature-space SNR, decoherence
detection, and mixing-ratio selection.

The per-mixture pipeline refits PCA on each composed dataset, projects the
raw (uncentered) rows onto the first principal component, orients the
component so the real-subset projections have non-negative mean, and fits a
univariate Gaussian. SNR is |mu| / sigma of that fit. The sweep then finds
the first strict interior local minimum of SNR (the decoherence point) and
selects the ratio maximizing SNR strictly before it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from cift.errors import (
    ConfigError,
    DegenerateCovariance,
    DimensionMismatch,
    EmptyPool,
    MissingBaseline,
    TooFewPoints,
    ZeroSigma,
)
from cift.feature_store import FeatureMatrix, Manifest, SourceTag
from cift.numstats import first_principal_component, fit_gaussian, project

LAMBDA_TOL = 1e-12


@dataclass(frozen=True, order=True)
class MixRatio:
    """A real:synthetic parts ratio, e.g. 100:300.

    ``lam`` is the synthetic fraction synth / (real + synth); "100:0" is the
    lambda = 0 baseline. Parts are kept as written (100:100 and 1:1 have the
    same lambda but request different block granularities when subsampling).
    """

    real_parts: int
    synth_parts: int

    def __post_init__(self) -> None:
        if self.real_parts <= 0:
            raise ConfigError(f"real parts must be positive, got {self.real_parts}")
        if self.synth_parts < 0:
            raise ConfigError(f"synthetic parts must be >= 0, got {self.synth_parts}")

    @property
    def lam(self) -> float:
        return self.synth_parts / (self.real_parts + self.synth_parts)

    @classmethod
    def parse(cls, text: str) -> "MixRatio":
        parts = text.strip().split(":")
        if len(parts) != 2:
            raise ConfigError(f"ratio {text!r} is not of the form R:S")
        try:
            r, s = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(f"ratio {text!r} is not of the form R:S") from None
        return cls(r, s)

    def __str__(self) -> str:
        return f"{self.real_parts}:{self.synth_parts}"


@dataclass(frozen=True)
class TakeAll:
    """Use every real row; take synthetic rows in pool order to match the
    ratio, truncating with a note when the pool is short."""


@dataclass(frozen=True)
class SubsampleSeeded:
    """Draw the largest exact-ratio blocks from both pools without
    replacement, deterministically from ``seed``."""

    seed: int


SamplingPolicy = Union[TakeAll, SubsampleSeeded]


@dataclass(frozen=True)
class MixturePlan:
    """An increasing grid of mixing ratios plus the sampling policy.

    The lambda = 0 baseline must come first: it anchors sign alignment and
    robustness-score normalization downstream.
    """

    ratios: tuple[MixRatio, ...]
    sampling: SamplingPolicy = field(default_factory=TakeAll)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ratios", tuple(self.ratios))
        if not self.ratios:
            raise ConfigError("plan has no ratios")
        if self.ratios[0].lam != 0.0:
            raise MissingBaseline(
                f"first ratio must have lambda = 0, got {self.ratios[0]}"
            )
        lams = [r.lam for r in self.ratios]
        for a, b in zip(lams, lams[1:]):
            if b <= a + LAMBDA_TOL:
                raise ConfigError(
                    f"ratios must be strictly increasing in lambda, got {a} then {b}"
                )


@dataclass(frozen=True)
class Mixture:
    """A composed dataset: a real block followed by a synthetic block."""

    matrix: FeatureMatrix
    ratio: MixRatio
    n_real_rows: int
    n_synth_rows: int
    notes: tuple[str, ...] = ()

    @property
    def real_mask(self) -> np.ndarray:
        mask = np.zeros(self.matrix.rows, dtype=bool)
        mask[: self.n_real_rows] = True
        return mask


@dataclass(frozen=True)
class SnrPoint:
    ratio: MixRatio
    mu: float
    sigma: float
    snr: float
    n_real_rows: int
    n_synth_rows: int

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")
        if self.sigma > 0 and abs(self.snr - abs(self.mu) / self.sigma) > 1e-12:
            raise ConfigError(
                f"snr {self.snr} inconsistent with |mu|/sigma = {abs(self.mu) / self.sigma}"
            )

    @classmethod
    def make(
        cls,
        ratio: MixRatio,
        mu: float,
        sigma: float,
        n_real_rows: int = 0,
        n_synth_rows: int = 0,
    ) -> "SnrPoint":
        if sigma == 0.0:
            raise ZeroSigma(f"sigma = 0 at {ratio}: SNR undefined")
        return cls(ratio, mu, sigma, abs(mu) / sigma, n_real_rows, n_synth_rows)


@dataclass(frozen=True)
class SweepReport:
    points: tuple[SnrPoint, ...]
    decoherence_index: int | None
    lambda_star: MixRatio
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "points": [
                {
                    "ratio": str(p.ratio),
                    "real_parts": p.ratio.real_parts,
                    "synth_parts": p.ratio.synth_parts,
                    "lambda": p.ratio.lam,
                    "mu": p.mu,
                    "sigma": p.sigma,
                    "snr": p.snr,
                    "n_real_rows": p.n_real_rows,
                    "n_synth_rows": p.n_synth_rows,
                }
                for p in self.points
            ],
            "decoherence_index": self.decoherence_index,
            "lambda_star": {
                "ratio": str(self.lambda_star),
                "real_parts": self.lambda_star.real_parts,
                "synth_parts": self.lambda_star.synth_parts,
                "lambda": self.lambda_star.lam,
            },
            "notes": list(self.notes),
        }

    def to_json_bytes(self) -> bytes:
        # sort_keys plus repr-based float encoding keeps the bytes stable.
        return (json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n").encode()

    def to_csv_text(self) -> str:
        lines = ["real_parts,synth_parts,ratio,lambda,mu,sigma,snr,n_real_rows,n_synth_rows"]
        for p in self.points:
            lines.append(
                f"{p.ratio.real_parts},{p.ratio.synth_parts},{p.ratio},"
                f"{p.ratio.lam!r},{p.mu!r},{p.sigma!r},{p.snr!r},"
                f"{p.n_real_rows},{p.n_synth_rows}"
            )
        return "\n".join(lines) + "\n"


def _subsample_counts(ratio: MixRatio, n_real: int, n_synth: int) -> tuple[int, int]:
    r, s = ratio.real_parts, ratio.synth_parts
    scale = n_real // r if s == 0 else min(n_real // r, n_synth // s)
    if scale == 0:
        raise EmptyPool(
            f"cannot realize {ratio} from pools of {n_real} real / {n_synth} synthetic rows"
        )
    return scale * r, scale * s


def compose(
    real: FeatureMatrix,
    synth: FeatureMatrix,
    ratio: MixRatio,
    sampling: SamplingPolicy = TakeAll(),
) -> Mixture:
    """Assemble the composed dataset for one ratio.

    TakeAll keeps every real row and takes floor(n_real * S / R) synthetic
    rows in pool order, truncating with a note if the pool is short.
    SubsampleSeeded draws exact-ratio blocks (the largest multiple of R:S
    fitting both pools) without replacement; indices are sorted so the
    lambda = 0 draw with a full-pool fit reproduces the real pool exactly.
    """
    if real.dims != synth.dims:
        raise DimensionMismatch(
            f"real has {real.dims} dims, synthetic has {synth.dims}"
        )
    notes: list[str] = []
    if isinstance(sampling, SubsampleSeeded):
        n_real, n_synth = _subsample_counts(ratio, real.rows, synth.rows)
        rng = np.random.default_rng([sampling.seed, ratio.real_parts, ratio.synth_parts])
        real_idx = np.sort(rng.choice(real.rows, size=n_real, replace=False))
        synth_idx = np.sort(rng.choice(synth.rows, size=n_synth, replace=False))
        real_block = real.data[real_idx]
        synth_block = synth.data[synth_idx]
    else:
        n_real = real.rows
        target = (n_real * ratio.synth_parts) // ratio.real_parts
        if target == 0 and 0.0 < ratio.lam < 1.0:
            raise EmptyPool(
                f"{ratio} requests under one synthetic row for {n_real} real rows"
            )
        n_synth = min(target, synth.rows)
        if n_synth < target:
            notes.append(
                f"synthetic pool short at {ratio}: wanted {target} rows, pool has {synth.rows}"
            )
        real_block = real.data
        synth_block = synth.data[:n_synth]
    data = real_block if n_synth == 0 else np.vstack([real_block, synth_block])
    matrix = FeatureMatrix(
        data=data,
        source_tag=SourceTag.MIXED,
        dataset_id=f"{real.dataset_id}+{synth.dataset_id}@{ratio}",
    )
    return Mixture(matrix, ratio, n_real, n_synth, tuple(notes))


def snr_of_mixture(
    matrix: FeatureMatrix,
    real_mask: np.ndarray,
    ratio: MixRatio,
) -> SnrPoint:
    """Feature-space SNR of one composed dataset.

    Refits PCA on the mixture, projects raw rows (center=False: centering
    would force mu to zero and make the ratio meaningless), flips the
    component so the real-subset projection mean is >= 0, and fits the
    Gaussian. Raises DegenerateCovariance (propagated) or ZeroSigma when the
    SNR is undefined rather than returning an infinity.
    """
    real_mask = np.asarray(real_mask, dtype=bool).reshape(-1)
    if real_mask.size != matrix.rows:
        raise DimensionMismatch(
            f"mask length {real_mask.size} for {matrix.rows} rows"
        )
    pca = first_principal_component(matrix)
    proj = project(matrix, pca.w1, center=False)
    if real_mask.any() and proj[real_mask].mean() < 0.0:
        proj = -proj
    fit = fit_gaussian(proj)
    n_real = int(real_mask.sum())
    return SnrPoint.make(ratio, fit.mu, fit.sigma, n_real, matrix.rows - n_real)


def _interior_minima(snrs: Sequence[float]) -> list[int]:
    return [
        i
        for i in range(1, len(snrs) - 1)
        if snrs[i] < snrs[i - 1] and snrs[i] < snrs[i + 1]
    ]


def detect_decoherence(points: Sequence[SnrPoint]) -> int | None:
    """Index of the first strict interior local minimum of SNR, or None.

    Strict on both sides: plateaus are not decoherence points.
    """
    if len(points) < 3:
        raise TooFewPoints(f"need >= 3 points, got {len(points)}")
    lams = [p.ratio.lam for p in points]
    for a, b in zip(lams, lams[1:]):
        if b <= a:
            raise ConfigError("points must be strictly increasing in lambda")
    minima = _interior_minima([p.snr for p in points])
    return minima[0] if minima else None


def select_lambda_star(
    points: Sequence[SnrPoint],
    decoherence_index: int | None,
) -> MixRatio:
    """Argmax of SNR over points strictly before the decoherence index
    (over all points when there is none); ties go to the smaller lambda."""
    if not points:
        raise ConfigError("no points to select from")
    candidates = points if decoherence_index is None else points[:decoherence_index]
    best = candidates[0]
    for p in candidates[1:]:
        if p.snr > best.snr:
            best = p
    return best.ratio


def sweep_features(
    real: FeatureMatrix,
    synth: FeatureMatrix,
    plan: MixturePlan,
) -> SweepReport:
    """Compose, score, detect, and select over the whole ratio grid.

    Ratios whose SNR is undefined (degenerate covariance or zero sigma) are
    recorded in the notes and excluded from both the curve and the argmax.
    Deterministic given the pools and the plan, including its seed.
    """
    points: list[SnrPoint] = []
    notes: list[str] = []
    for ratio in plan.ratios:
        mixture = compose(real, synth, ratio, plan.sampling)
        notes.extend(mixture.notes)
        try:
            points.append(snr_of_mixture(mixture.matrix, mixture.real_mask, ratio))
        except (DegenerateCovariance, ZeroSigma) as exc:
            notes.append(f"snr undefined at {ratio}: {exc}")
    if not points:
        raise DegenerateCovariance("snr undefined at every ratio in the plan")
    dc = None
    if len(points) >= 3:
        minima = _interior_minima([p.snr for p in points])
        dc = minima[0] if minima else None
        if len(minima) > 1:
            extra = ", ".join(str(points[i].ratio) for i in minima[1:])
            notes.append(f"additional interior snr minima at {extra}")
    lam_star = select_lambda_star(points, dc)
    return SweepReport(tuple(points), dc, lam_star, tuple(notes))


def run_sweep(manifest: Manifest, plan: MixturePlan) -> SweepReport:
    """Load the real and synthetic pools named by the manifest and sweep."""
    manifest.validate_for_sweep()
    real = manifest.load_pool(SourceTag.REAL)
    synth = manifest.load_pool(SourceTag.SYNTHETIC)
    return sweep_features(real, synth, plan)
