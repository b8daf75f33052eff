"""Feature-matrix ingestion, validation, and persistence.

Matrices are stored as float32 (matching typical backbone output, and the
on-disk FVEC payload) and promoted to float64 inside the statistics layer.
Loaded matrices are immutable and safe for concurrent reads.

FVEC layout (little-endian):
    bytes 0..7   magic ASCII "CIFTFVEC"
    bytes 8..11  version u32 = 1
    bytes 12..19 n u64
    bytes 20..27 d u64
    byte  28     dtype code u8 = 1 (float32)
    bytes 29..31 zero padding
    payload      n*d float32, row-major

CSV: one feature row per line, comma-separated decimal floats; lines
starting with '#' are ignored.
"""

from __future__ import annotations

import enum
import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from cift.errors import (
    DimensionMismatch,
    InvalidShape,
    MalformedHeader,
    MalformedManifest,
    NonFiniteValue,
)

FVEC_MAGIC = b"CIFTFVEC"
FVEC_VERSION = 1
FVEC_DTYPE_FLOAT32 = 1
_FVEC_HEADER = struct.Struct("<8sIQQB3x")  # 32 bytes


class SourceTag(enum.Enum):
    REAL = "real"
    SYNTHETIC = "synthetic"
    MIXED = "mixed"  # produced by composition, never read from a manifest


class FileFormat(enum.Enum):
    FVEC = "fvec"
    CSV = "csv"


def _check_finite(data: np.ndarray) -> None:
    finite = np.isfinite(data)
    if not finite.all():
        row, col = np.argwhere(~finite)[0]
        raise NonFiniteValue(
            f"non-finite value {data[row, col]!r} at row {row}, column {col}"
        )


@dataclass(frozen=True)
class FeatureMatrix:
    """An n x d block of feature rows with dataset provenance.

    ``data`` is coerced to a read-only float32 array. Construction fails on
    empty shapes, non-finite values, or an empty dataset id.
    """

    data: np.ndarray
    source_tag: SourceTag
    dataset_id: str
    frame_ids: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise InvalidShape(f"expected a 2-d array, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidShape(f"empty matrix shape {arr.shape}")
        with np.errstate(over="ignore"):  # overflow surfaces as NonFiniteValue
            arr = np.ascontiguousarray(arr, dtype=np.float32)
        _check_finite(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        if not self.dataset_id:
            raise MalformedManifest("dataset_id must be non-empty")
        if self.frame_ids is not None:
            ids = tuple(self.frame_ids)
            if len(ids) != arr.shape[0]:
                raise DimensionMismatch(
                    f"{len(ids)} frame ids for {arr.shape[0]} rows"
                )
            object.__setattr__(self, "frame_ids", ids)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def dims(self) -> int:
        return self.data.shape[1]

    def as_float64(self) -> np.ndarray:
        """Promoted copy for statistics (covariance accumulation in float32
        loses precision at n*d ~ 1e6)."""
        return self.data.astype(np.float64)


# --- FVEC ------------------------------------------------------------------

def _read_fvec(path: Path) -> np.ndarray:
    raw = path.read_bytes()
    if len(raw) < _FVEC_HEADER.size:
        raise MalformedHeader(f"{path}: {len(raw)} bytes, shorter than the 32-byte header")
    magic, version, n, d, dtype = _FVEC_HEADER.unpack_from(raw)
    if magic != FVEC_MAGIC:
        raise MalformedHeader(f"{path}: bad magic {magic!r}")
    if version != FVEC_VERSION:
        raise MalformedHeader(f"{path}: unsupported version {version}")
    if dtype != FVEC_DTYPE_FLOAT32:
        raise MalformedHeader(f"{path}: unsupported dtype code {dtype}")
    if raw[29:32] != b"\x00\x00\x00":
        raise MalformedHeader(f"{path}: nonzero header padding")
    if n < 1 or d < 1:
        raise InvalidShape(f"{path}: header declares empty shape {n}x{d}")
    expected = n * d * 4
    payload = raw[_FVEC_HEADER.size:]
    if len(payload) != expected:
        raise DimensionMismatch(
            f"{path}: header declares {n}x{d} ({expected} payload bytes), "
            f"found {len(payload)}"
        )
    return np.frombuffer(payload, dtype="<f4").reshape(n, d)


def _write_fvec(path: Path, data: np.ndarray) -> None:
    n, d = data.shape
    header = _FVEC_HEADER.pack(FVEC_MAGIC, FVEC_VERSION, n, d, FVEC_DTYPE_FLOAT32)
    payload = np.ascontiguousarray(data, dtype="<f4").tobytes()
    path.write_bytes(header + payload)


# --- CSV -------------------------------------------------------------------

def _read_csv(path: Path) -> np.ndarray:
    rows: list[list[float]] = []
    width: int | None = None
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split(",")
            values = []
            for col, tok in enumerate(tokens):
                try:
                    values.append(float(tok))
                except ValueError:
                    raise MalformedHeader(
                        f"{path}: line {lineno}, column {col}: "
                        f"cannot parse {tok.strip()!r} as a float"
                    ) from None
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise DimensionMismatch(
                    f"{path}: line {lineno} has {len(values)} values, expected {width}"
                )
            rows.append(values)
    if not rows:
        raise InvalidShape(f"{path}: no feature rows")
    return np.asarray(rows, dtype=np.float64)


def _write_csv(path: Path, data: np.ndarray) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for row in data:
            fh.write(",".join(repr(float(x)) for x in row))
            fh.write("\n")


# --- public IO -------------------------------------------------------------

def load_features(
    path: str | Path,
    fmt: FileFormat,
    source_tag: SourceTag = SourceTag.REAL,
    dataset_id: str | None = None,
) -> FeatureMatrix:
    """Load and validate a feature matrix.

    Raises:
        MalformedHeader: the file structure cannot be parsed.
        DimensionMismatch: payload length disagrees with the header, or
            rows are ragged; the message names the offender.
        NonFiniteValue: a NaN/Inf element; the message names row/column.
        InvalidShape: the file holds an empty matrix.
    """
    path = Path(path)
    if fmt is FileFormat.FVEC:
        data = _read_fvec(path)
    else:
        data = _read_csv(path)
    return FeatureMatrix(
        data=data,
        source_tag=source_tag,
        dataset_id=dataset_id if dataset_id is not None else path.stem,
    )


def write_features(matrix: FeatureMatrix, path: str | Path, fmt: FileFormat) -> None:
    """Persist a matrix. FVEC round-trips bit-exactly; CSV round-trips
    within 1e-6 per element (repr of the float32 value is written, so in
    practice CSV is exact too)."""
    path = Path(path)
    if fmt is FileFormat.FVEC:
        _write_fvec(path, matrix.data)
    else:
        _write_csv(path, matrix.data)


# --- manifest --------------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    path: str
    tag: SourceTag
    dataset_id: str
    format: FileFormat


@dataclass(frozen=True)
class Manifest:
    """A list of feature files to pool into real and synthetic sides.

    ``root`` anchors relative entry paths (set to the manifest's parent
    directory by ``load_manifest``).
    """

    entries: tuple[ManifestEntry, ...]
    root: Path = field(default_factory=Path)

    def __post_init__(self) -> None:
        ids = [e.dataset_id for e in self.entries]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise MalformedManifest(f"duplicate dataset_id {dup!r}")
        for e in self.entries:
            if e.tag is SourceTag.MIXED:
                raise MalformedManifest(
                    f"{e.dataset_id}: manifest entries must be real or synthetic"
                )

    def validate_for_sweep(self) -> None:
        tags = {e.tag for e in self.entries}
        if SourceTag.REAL not in tags or SourceTag.SYNTHETIC not in tags:
            raise MalformedManifest(
                "a sweep manifest needs at least one real and one synthetic entry"
            )

    def load_pool(self, tag: SourceTag) -> FeatureMatrix:
        """Concatenate all entries with the given tag, in manifest order."""
        parts = [e for e in self.entries if e.tag is tag]
        if not parts:
            raise MalformedManifest(f"no {tag.value} entries in manifest")
        blocks = []
        for e in parts:
            m = load_features(self.root / e.path, e.format, e.tag, e.dataset_id)
            blocks.append(m)
        dims = blocks[0].dims
        for m in blocks[1:]:
            if m.dims != dims:
                raise DimensionMismatch(
                    f"{m.dataset_id}: {m.dims} dims, expected {dims}"
                )
        data = np.vstack([m.data for m in blocks])
        joined = "+".join(e.dataset_id for e in parts)
        return FeatureMatrix(data=data, source_tag=tag, dataset_id=joined)


def load_manifest(path: str | Path) -> Manifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedManifest(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or "entries" not in doc:
        raise MalformedManifest(f"{path}: expected an object with an 'entries' list")
    entries = []
    for i, raw in enumerate(doc["entries"]):
        try:
            entries.append(
                ManifestEntry(
                    path=raw["path"],
                    tag=SourceTag(raw["tag"]),
                    dataset_id=raw["dataset_id"],
                    format=FileFormat(raw["format"]),
                )
            )
        except (KeyError, ValueError) as exc:
            raise MalformedManifest(f"{path}: entry {i}: {exc}") from None
    return Manifest(entries=tuple(entries), root=path.parent)


def write_manifest(manifest: Manifest, path: str | Path) -> None:
    doc = {
        "entries": [
            {
                "path": e.path,
                "tag": e.tag.value,
                "dataset_id": e.dataset_id,
                "format": e.format.value,
            }
            for e in manifest.entries
        ]
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
