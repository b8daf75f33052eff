"""Robustness Score from ID/OOD open-loop trajectory-MSE tables.

    RS(lambda) = max(0, 1 - OOD(lambda)/OOD(0)) * 100 * (ID(0)/ID(lambda))

where OOD(.) and ID(.) are unweighted arithmetic means over the OOD and ID
conditions. The score only uses within-group ratios, so the MSE unit (raw,
or a published x1e6 scaling) cancels out.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import math

from cift.errors import ConfigError, DataError, MissingBaseline, MissingRatio
from cift.composition import MixRatio

MSE_CSV_HEADER = ("condition", "kind", "ratio", "mse")


@dataclass(frozen=True)
class Condition:
    name: str
    kind: str  # "ID" or "OOD"
    mse_by_ratio: dict[MixRatio, float]

    def __post_init__(self) -> None:
        if self.kind not in ("ID", "OOD"):
            raise DataError(f"condition {self.name!r}: kind must be ID or OOD, got {self.kind!r}")
        for ratio, mse in self.mse_by_ratio.items():
            if not (math.isfinite(mse) and mse > 0):
                raise DataError(
                    f"condition {self.name!r} at {ratio}: mse must be finite and > 0, got {mse}"
                )
        if not any(r.lam == 0.0 for r in self.mse_by_ratio):
            raise MissingBaseline(f"condition {self.name!r} has no lambda = 0 entry")


@dataclass(frozen=True)
class MseTable:
    conditions: tuple[Condition, ...]

    def __post_init__(self) -> None:
        kinds = {c.kind for c in self.conditions}
        if "ID" not in kinds or "OOD" not in kinds:
            raise DataError("table needs at least one ID and one OOD condition")

    def _group_mean(self, kind: str, ratio: MixRatio) -> float:
        values = []
        for c in self.conditions:
            if c.kind != kind:
                continue
            if ratio not in c.mse_by_ratio:
                raise MissingRatio(f"condition {c.name!r} has no entry for {ratio}")
            values.append(c.mse_by_ratio[ratio])
        return sum(values) / len(values)

    def baseline_ratio(self) -> MixRatio:
        for c in self.conditions:
            for r in c.mse_by_ratio:
                if r.lam == 0.0:
                    return r
        raise MissingBaseline("no lambda = 0 ratio in table")

    def common_ratios(self) -> list[MixRatio]:
        """Ratios present in every condition, ordered by lambda."""
        common: set[MixRatio] | None = None
        for c in self.conditions:
            keys = set(c.mse_by_ratio)
            common = keys if common is None else common & keys
        return sorted(common or (), key=lambda r: (r.lam, r.real_parts))


@dataclass(frozen=True)
class RsPoint:
    ratio: MixRatio
    rs: float
    ood_mean: float
    id_mean: float


def robustness_score(table: MseTable, ratio: MixRatio) -> RsPoint:
    """RS at one ratio. Exactly 0 at the baseline (x/x is exactly 1 in
    IEEE arithmetic) and clamped at 0 when OOD worsens."""
    baseline = table.baseline_ratio()
    ood = table._group_mean("OOD", ratio)
    idm = table._group_mean("ID", ratio)
    ood0 = table._group_mean("OOD", baseline)
    id0 = table._group_mean("ID", baseline)
    rs = max(0.0, 1.0 - ood / ood0) * 100.0 * (id0 / idm)
    return RsPoint(ratio=ratio, rs=rs, ood_mean=ood, id_mean=idm)


def rs_curve(table: MseTable) -> list[RsPoint]:
    """One RsPoint per ratio present in all conditions, ordered by lambda."""
    return [robustness_score(table, r) for r in table.common_ratios()]


def _parse_mse_rows(rows: list[dict[str, str]], origin: str) -> MseTable:
    by_condition: dict[str, tuple[str, dict[MixRatio, float]]] = {}
    for i, row in enumerate(rows, start=2):  # header is line 1
        try:
            name = row["condition"].strip()
            kind = row["kind"].strip()
            ratio = MixRatio.parse(row["ratio"])
            mse = float(row["mse"])
        except (KeyError, TypeError, AttributeError, ValueError, ConfigError) as exc:
            raise DataError(f"{origin}: line {i}: {exc}") from None
        kind_seen, table = by_condition.setdefault(name, (kind, {}))
        if kind_seen != kind:
            raise DataError(f"{origin}: condition {name!r} listed as both {kind_seen} and {kind}")
        if ratio in table:
            raise DataError(f"{origin}: duplicate entry for {name!r} at {ratio}")
        table[ratio] = mse
    if not by_condition:
        raise DataError(f"{origin}: no data rows")
    conditions = tuple(
        Condition(name, kind, table) for name, (kind, table) in by_condition.items()
    )
    return MseTable(conditions)


def read_mse_csv(path: str | Path) -> MseTable:
    """Read an MSE table from CSV with header ``condition,kind,ratio,mse``;
    ratios are formatted ``R:S``."""
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(f.strip() for f in reader.fieldnames) != MSE_CSV_HEADER:
        raise DataError(
            f"{path}: expected header {','.join(MSE_CSV_HEADER)!r}, got {reader.fieldnames}"
        )
    return _parse_mse_rows(list(reader), str(path))


def rs_curve_csv_text(table: MseTable) -> str:
    lines = ["ratio,lambda,ood_mean,id_mean,rs"]
    for p in rs_curve(table):
        lines.append(f"{p.ratio},{p.ratio.lam!r},{p.ood_mean!r},{p.id_mean!r},{p.rs:.2f}")
    return "\n".join(lines) + "\n"
