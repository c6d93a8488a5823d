# ============================================================
# leakage_service.py – Expected leakage of (non-)inclusion proofs
#
# E[L_i]: additional components known to be used after one inclusion proof.
# E[L_e]: additional components known NOT to be used after one
#         non-inclusion proof.
# Inputs are per-ecosystem averages of transitive (descendant) and peer
# component counts plus P[AC], the probability of a unique ancestor.
# ============================================================

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Mapping, Optional

import pandas as pd

from services.config_service import DEFAULT_P_AC
from services.core_model import EmptyInputError, Ecosystem, MalformedFixtureError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["ecosystem", "component", "transitive_count", "peer_count"]
TABLE_COLUMNS = ["ecosystem", "e_dc", "e_pc", "inclusion", "exclusion"]
NO_PEER_DATA = "–"

DISPLAY_NAMES = {
    Ecosystem.CARGO: "Cargo",
    Ecosystem.GOLANG: "Go",
    Ecosystem.MAVEN: "Maven",
    Ecosystem.NPM: "npm",
}


@dataclass(frozen=True)
class EcosystemStats:
    e_dc: float
    e_pc: float
    p_ac: float
    peers_known: bool = True

    def __post_init__(self) -> None:
        for name in ("e_dc", "e_pc", "p_ac"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value}")
        if self.p_ac > 1:
            raise ValueError(f"p_ac must lie in [0, 1], got {self.p_ac}")


@dataclass(frozen=True)
class DependencyCountRecord:
    ecosystem: Ecosystem
    component: str
    transitive_count: int
    peer_count: Optional[int] = None

    def __post_init__(self) -> None:
        if self.transitive_count < 0 or (self.peer_count is not None and self.peer_count < 0):
            raise ValueError(f"negative dependency count for {self.component}")


# ============================================================
# FORMULAS
# ============================================================
def unique_descendants(stats: EcosystemStats) -> float:
    return stats.p_ac * stats.e_dc


def inclusion_leakage(stats: EcosystemStats) -> float:
    p, dc, pc = stats.p_ac, stats.e_dc, stats.e_pc
    return (1 - p) * (dc + pc * (1 + dc)) + p * dc


def exclusion_leakage(stats: EcosystemStats) -> float:
    p, pc = stats.p_ac, stats.e_pc
    dc_u = unique_descendants(stats)
    return (1 - p) * (dc_u + pc * (1 + dc_u)) + p * (1 + dc_u)


# ============================================================
# AGGREGATION
# ============================================================
def records_frame(records: Iterable[DependencyCountRecord]) -> pd.DataFrame:
    rows = [
        {
            "ecosystem": r.ecosystem.value,
            "component": r.component,
            "transitive_count": r.transitive_count,
            "peer_count": r.peer_count,
        }
        for r in records
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def aggregate_stats(records: Iterable[DependencyCountRecord], p_ac: float = DEFAULT_P_AC) -> dict[Ecosystem, EcosystemStats]:
    """Per-ecosystem means of transitive and peer counts; p_ac is supplied, not estimated."""
    df = records_frame(records)
    if df.empty:
        raise EmptyInputError("no dependency count records to aggregate")

    df["peer_count"] = pd.to_numeric(df["peer_count"], errors="coerce")
    stats: dict[Ecosystem, EcosystemStats] = {}
    for token, group in df.groupby("ecosystem", sort=False):
        peers = group["peer_count"].dropna()
        stats[Ecosystem(token)] = EcosystemStats(
            e_dc=float(group["transitive_count"].mean()),
            e_pc=float(peers.mean()) if not peers.empty else 0.0,
            p_ac=p_ac,
            peers_known=not peers.empty,
        )
    return {eco: stats[eco] for eco in Ecosystem if eco in stats}


def load_dependency_counts(path: str | Path) -> list[DependencyCountRecord]:
    """CSV with header `ecosystem,component,transitive_count,peer_count`; empty peer_count = unknown."""
    try:
        df = pd.read_csv(path, dtype={"ecosystem": str, "component": str})
    except (OSError, ValueError) as exc:
        raise MalformedFixtureError(f"cannot read dependency counts {path}: {exc}") from exc
    missing = [c for c in CSV_COLUMNS if c not in df.columns]
    if missing:
        raise MalformedFixtureError(f"dependency count CSV is missing columns {missing}")

    records: list[DependencyCountRecord] = []
    try:
        for row in df.itertuples(index=False):
            peer = None if pd.isna(row.peer_count) else int(row.peer_count)
            records.append(
                DependencyCountRecord(
                    ecosystem=Ecosystem(str(row.ecosystem).strip().upper()),
                    component=str(row.component),
                    transitive_count=int(row.transitive_count),
                    peer_count=peer,
                )
            )
    except ValueError as exc:
        raise MalformedFixtureError(f"bad dependency count row: {exc}") from exc
    logger.info("Loaded %d dependency count records from %s", len(records), path)
    return records


# ============================================================
# TABLE
# ============================================================
def round_half_up(value: float, places: int = 2) -> str:
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def leakage_frame(stats_by_ecosystem: Mapping[Ecosystem, EcosystemStats]) -> pd.DataFrame:
    rows = []
    for ecosystem, stats in stats_by_ecosystem.items():
        rows.append(
            {
                "ecosystem": DISPLAY_NAMES[ecosystem],
                "e_dc": round_half_up(stats.e_dc),
                "e_pc": round_half_up(stats.e_pc) if stats.peers_known else NO_PEER_DATA,
                "inclusion": round_half_up(inclusion_leakage(stats)),
                "exclusion": round_half_up(exclusion_leakage(stats)),
            }
        )
    return pd.DataFrame(rows, columns=TABLE_COLUMNS)


def emit_table(stats_by_ecosystem: Mapping[Ecosystem, EcosystemStats], fmt: str = "table") -> str:
    """Render the leakage table as CSV (`fmt="csv"`) or aligned text."""
    frame = leakage_frame(stats_by_ecosystem)
    if fmt == "csv":
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()
    if frame.empty:
        return "  ".join(TABLE_COLUMNS) + "\n"
    return frame.to_string(index=False) + "\n"
