"""Exception taxonomy shared by all cift modules.

Every error raised on a caller-visible contract boundary derives from
``CiftError``. The CLI maps ``ConfigError`` subclasses to exit code 2 and
``DataError`` subclasses to exit code 3.
"""

from __future__ import annotations


class CiftError(Exception):
    """Base class for all cift errors."""


class ConfigError(CiftError):
    """Invalid configuration or arguments (CLI exit code 2)."""


class DataError(CiftError):
    """Invalid or unusable input data (CLI exit code 3)."""


# --- feature store ---------------------------------------------------------

class MalformedHeader(DataError):
    """File structure cannot be parsed (bad magic, version, or token)."""


class DimensionMismatch(DataError):
    """Shapes disagree: ragged rows, payload/header disagreement, or
    vector/matrix width mismatch."""


class NonFiniteValue(DataError):
    """A NaN or infinity was found; the message names row and column."""


class InvalidShape(DataError):
    """Empty or otherwise unusable matrix shape (n = 0 or d = 0)."""


class MalformedManifest(DataError):
    """Manifest file is structurally invalid or violates its invariants."""


# --- numerics --------------------------------------------------------------

class DegenerateCovariance(DataError):
    """All rows identical: the covariance is zero and the principal
    component (hence the SNR) is undefined."""


class InsufficientData(DataError):
    """Too few samples for the requested statistic."""


class NonPsdInput(DataError):
    """A covariance input is not symmetric positive semidefinite within
    tolerance."""


# --- composition -----------------------------------------------------------

class ZeroSigma(DataError):
    """Projection standard deviation is exactly zero; SNR is undefined."""


class EmptyPool(DataError):
    """A ratio with lambda in (0, 1) would receive an empty block."""


class MissingBaseline(DataError):
    """The lambda = 0 baseline ratio is absent from a plan or table."""


class TooFewPoints(DataError):
    """Decoherence detection needs at least three sweep points."""


# --- robustness ------------------------------------------------------------

class MissingRatio(DataError):
    """A requested ratio is absent from one or more conditions."""


# --- theory oracle ---------------------------------------------------------

class OverlappingSupports(DataError):
    """Sub-dataset supports overlap where disjointness is required."""


class ShapeMismatch(DataError):
    """Feature/target array shapes are inconsistent."""


class ZeroGradient(DataError):
    """Fidelity of a zero gradient vector is undefined."""


class SignViolation(DataError):
    """Opposed-mean precondition violated (needs mu_real > 0 > mu_synth)."""
