"""Core numerical routines: covariance, first principal component,
projections, univariate Gaussian fits, and the Gaussian Frechet distance.

All operations are pure functions over immutable inputs; inputs are promoted
to float64 before any accumulation. Covariance uses the unbiased n-1
denominator throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cift.errors import (
    DegenerateCovariance,
    DimensionMismatch,
    InsufficientData,
    NonPsdInput,
)
from cift.feature_store import FeatureMatrix

# Above this width the dense symmetric eigensolver is replaced by power
# iteration (only the top component is ever needed).
DENSE_EIG_MAX_DIM = 4096

POWER_MAX_ITER = 10_000
POWER_TOL = 1e-12


@dataclass(frozen=True)
class PcaResult:
    """First principal component of a sample covariance.

    ``w1`` is unit-norm with its largest-magnitude coordinate positive;
    ``iterations`` is 0 when the dense eigensolver was used.
    """

    mean: np.ndarray
    w1: np.ndarray
    eigenvalue: float
    iterations: int


@dataclass(frozen=True)
class GaussianFit:
    mu: float
    sigma: float
    n: int


@dataclass(frozen=True)
class GaussianMoments:
    """Mean vector and covariance matrix of a feature distribution."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=np.float64).reshape(-1)
        cov = np.asarray(self.cov, dtype=np.float64)
        if cov.shape != (mean.size, mean.size):
            raise DimensionMismatch(
                f"cov shape {cov.shape} does not match mean of length {mean.size}"
            )
        asym = np.max(np.abs(cov - cov.T)) if cov.size else 0.0
        if asym > 1e-10:
            raise NonPsdInput(f"covariance asymmetric by {asym:.3e}")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", (cov + cov.T) / 2.0)

    @classmethod
    def from_rows(cls, rows: np.ndarray | FeatureMatrix) -> "GaussianMoments":
        data = rows.as_float64() if isinstance(rows, FeatureMatrix) else np.asarray(rows, dtype=np.float64)
        if data.shape[0] < 2:
            raise InsufficientData(f"need >= 2 rows, got {data.shape[0]}")
        return cls(mean=data.mean(axis=0), cov=np.cov(data, rowvar=False, ddof=1).reshape(data.shape[1], data.shape[1]))


def sample_covariance(data: np.ndarray) -> np.ndarray:
    """Centered covariance with the n-1 denominator, in float64."""
    data = np.asarray(data, dtype=np.float64)
    centered = data - data.mean(axis=0)
    return centered.T @ centered / (data.shape[0] - 1)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    # Deterministic orientation: largest-magnitude coordinate positive.
    i = int(np.argmax(np.abs(v)))
    return v if v[i] >= 0 else -v


def power_iteration(
    a: np.ndarray,
    max_iter: int = POWER_MAX_ITER,
    tol: float = POWER_TOL,
) -> tuple[float, np.ndarray, int]:
    """Dominant eigenpair of a symmetric PSD matrix by power iteration.

    Deterministic start vector; stops when the residual ||A v - lam v||
    drops below ``tol * max(lam, 1)``. Returns (eigenvalue, vector,
    iterations). Serves both as the large-d fallback and as an independent
    check on the dense eigensolver.
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    # Fixed ramped start avoids accidental orthogonality to the top vector.
    v = np.ones(n) + np.linspace(0.0, 0.5, n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for it in range(1, max_iter + 1):
        av = a @ v
        norm = np.linalg.norm(av)
        if norm == 0.0:
            return 0.0, v, it
        v_new = av / norm
        lam = float(v_new @ (a @ v_new))
        if np.linalg.norm(a @ v_new - lam * v_new) <= tol * max(abs(lam), 1.0):
            return lam, v_new, it
        v = v_new
    return lam, v, max_iter


def first_principal_component(matrix: FeatureMatrix) -> PcaResult:
    """Unit top eigenvector of the sample covariance (n-1 denominator).

    Raises DegenerateCovariance when all rows are identical, which signals
    that downstream SNR values are undefined.
    """
    if matrix.rows < 2:
        raise InsufficientData(f"need >= 2 rows for a covariance, got {matrix.rows}")
    data = matrix.as_float64()
    centered = data - data.mean(axis=0)
    if not centered.any():
        raise DegenerateCovariance(
            f"{matrix.dataset_id}: all {matrix.rows} rows identical"
        )
    cov = centered.T @ centered / (matrix.rows - 1)
    if matrix.dims <= DENSE_EIG_MAX_DIM:
        vals, vecs = np.linalg.eigh(cov)
        lam, w1, iters = float(vals[-1]), vecs[:, -1], 0
    else:
        lam, w1, iters = power_iteration(cov)
    return PcaResult(
        mean=data.mean(axis=0),
        w1=_fix_sign(w1),
        eigenvalue=max(lam, 0.0),
        iterations=iters,
    )


def project(matrix: FeatureMatrix, w1: np.ndarray, center: bool = False) -> np.ndarray:
    """Per-row projections f.w1 (or (f - mean).w1 when ``center``)."""
    w1 = np.asarray(w1, dtype=np.float64).reshape(-1)
    if w1.size != matrix.dims:
        raise DimensionMismatch(
            f"direction has {w1.size} dims, matrix has {matrix.dims}"
        )
    data = matrix.as_float64()
    if center:
        data = data - data.mean(axis=0)
    return data @ w1


def fit_gaussian(xs: np.ndarray) -> GaussianFit:
    """Sample mean and standard deviation (n-1 denominator).

    ``sigma`` is 0 only when all values are identical; that case is
    represented, not perturbed.
    """
    xs = np.asarray(xs, dtype=np.float64).reshape(-1)
    if xs.size < 2:
        raise InsufficientData(f"need >= 2 values, got {xs.size}")
    return GaussianFit(mu=float(xs.mean()), sigma=float(xs.std(ddof=1)), n=int(xs.size))


def _psd_eigvals(cov: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    vals, vecs = np.linalg.eigh(cov)
    if vals[0] < -1e-6:
        raise NonPsdInput(f"{name}: eigenvalue {vals[0]:.3e} < -1e-6")
    return np.clip(vals, 0.0, None), vecs


def frechet_distance_sq(a: GaussianMoments, b: GaussianMoments) -> float:
    """Squared Frechet distance between two Gaussians:

        ||mu_a - mu_b||^2 + Tr(S_a + S_b - 2 (S_a S_b)^(1/2))

    The matrix square root is taken via the symmetric eigendecomposition of
    sqrt(S_a) S_b sqrt(S_a), which has the same spectrum as S_a S_b; tiny
    negative eigenvalues from roundoff are clamped to zero.
    """
    if a.mean.size != b.mean.size:
        raise DimensionMismatch(
            f"moment dims disagree: {a.mean.size} vs {b.mean.size}"
        )
    vals_a, vecs_a = _psd_eigvals(a.cov, "first covariance")
    vals_b, _ = _psd_eigvals(b.cov, "second covariance")
    sqrt_a = (vecs_a * np.sqrt(vals_a)) @ vecs_a.T
    inner = sqrt_a @ b.cov @ sqrt_a
    inner = (inner + inner.T) / 2.0
    cross_vals = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    diff = a.mean - b.mean
    d2 = float(diff @ diff + vals_a.sum() + vals_b.sum() - 2.0 * np.sqrt(cross_vals).sum())
    return max(d2, 0.0)
