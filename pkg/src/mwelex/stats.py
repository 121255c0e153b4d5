"""Reproducibility and redundancy statistics over feature tables.

Feature columns are binary judgments with holes: Plus and Minus map to
1 and 0, everything else (unknown, unrecorded, valued) drops out of a
pairwise computation.  That keeps the arithmetic honest about what the
tables actually assert, at the cost of every statistic being partial:
results carry an explicit Undefined marker instead of a number whenever
the data cannot support one.

Correlation between feature columns flags near-duplicate criteria.
Agreement between independently produced copies of the same table
(Cohen's kappa, chance-corrected) measures whether a feature's
definition is reproducible; per-feature verdicts bucket the mean
pairwise kappa against two thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .model import Table, effective_features
from .values import FeatureValue


@dataclass(frozen=True)
class Undefined:
    """A statistic the data cannot support, and why."""

    reason: str

    def __bool__(self) -> bool:
        return False


def _binary(value: FeatureValue | None) -> int | None:
    if value is None:
        return None
    if value.is_plus:
        return 1
    if value.is_minus:
        return 0
    return None


def binary_column(table: Table, feature_id: str) -> list[int | None]:
    """The feature's judgments over the table's rows, defining merged."""
    return [
        _binary(effective_features(table, e).get(feature_id)) for e in table.entries
    ]


def pearson_pair(
    xs: Sequence[int | None], ys: Sequence[int | None]
) -> float | Undefined:
    """Pearson correlation over positions where both columns judge.

    Population (biased) variance; at least two complete pairs required,
    and a constant column has no correlation to speak of.
    """
    if len(xs) != len(ys):
        raise ValueError(f"column lengths differ: {len(xs)} vs {len(ys)}")
    pairs = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
    n = len(pairs)
    if n < 2:
        return Undefined("too-few-pairs")
    mx = math.fsum(p[0] for p in pairs) / n
    my = math.fsum(p[1] for p in pairs) / n
    cov = math.fsum((x - mx) * (y - my) for x, y in pairs) / n
    vx = math.fsum((x - mx) ** 2 for x, _ in pairs) / n
    vy = math.fsum((y - my) ** 2 for _, y in pairs) / n
    if vx == 0.0 or vy == 0.0:
        return Undefined("zero-variance")
    r = cov / math.sqrt(vx * vy)
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class CorrelationMatrix:
    feature_ids: tuple[str, ...]
    cells: tuple[tuple[float | Undefined, ...], ...]

    def at(self, a: str, b: str) -> float | Undefined:
        i = self.feature_ids.index(a)
        j = self.feature_ids.index(b)
        return self.cells[i][j]

    def defined_offdiagonal(self) -> list[tuple[str, str, float]]:
        out = []
        for i, a in enumerate(self.feature_ids):
            for j in range(i + 1, len(self.feature_ids)):
                v = self.cells[i][j]
                if isinstance(v, float):
                    out.append((a, self.feature_ids[j], v))
        return out


def correlation_matrix(
    table: Table, feature_ids: Sequence[str]
) -> CorrelationMatrix:
    cols = {fid: binary_column(table, fid) for fid in feature_ids}
    ids = tuple(feature_ids)
    cells: list[list[float | Undefined]] = [
        [Undefined("unset")] * len(ids) for _ in ids
    ]
    for i, a in enumerate(ids):
        for j in range(i, len(ids)):
            if i == j:
                # a column correlates perfectly with itself wherever it
                # is defined at all; degenerate columns stay undefined
                v = pearson_pair(cols[a], cols[a])
                cells[i][i] = 1.0 if isinstance(v, float) else v
            else:
                v = pearson_pair(cols[a], cols[ids[j]])
                cells[i][j] = v
                cells[j][i] = v
    return CorrelationMatrix(ids, tuple(tuple(row) for row in cells))


# ---------------------------------------------------------------------------
# Agreement between table copies

@dataclass(frozen=True)
class KappaResult:
    n_joint: int
    raw_agreement: float
    kappa: float


def cohen_kappa(
    a: Mapping[str, int], b: Mapping[str, int]
) -> KappaResult | Undefined:
    """Chance-corrected agreement between two judges of the same items.

    Judgments are 1/0 keyed by item id; both judges must cover exactly
    the same ids (filter holes out before calling).
    """
    if set(a) != set(b):
        missing = set(a) ^ set(b)
        raise ValueError(f"judges cover different items: {sorted(missing)[:5]}")
    n = len(a)
    if n == 0:
        return Undefined("no-joint-judgments")
    po = sum(1 for k in a if a[k] == b[k]) / n
    pa1 = sum(a.values()) / n
    pb1 = sum(b.values()) / n
    pe = pa1 * pb1 + (1 - pa1) * (1 - pb1)
    if pe == 1.0:
        # both judges constant and identical: agreement carries no
        # information beyond the marginals
        return Undefined("degenerate-marginals")
    return KappaResult(n, po, (po - pe) / (1 - pe))


def joint_judgments(
    first: Table, second: Table, feature_id: str
) -> tuple[dict[str, int], dict[str, int]]:
    """Binary judgments both copies make, keyed by shared entry id."""
    a: dict[str, int] = {}
    b: dict[str, int] = {}
    rows_a = {e.entry_id: e for e in first.entries}
    rows_b = {e.entry_id: e for e in second.entries}
    for entry_id in rows_a.keys() & rows_b.keys():
        va = _binary(effective_features(first, rows_a[entry_id]).get(feature_id))
        vb = _binary(effective_features(second, rows_b[entry_id]).get(feature_id))
        if va is not None and vb is not None:
            a[entry_id] = va
            b[entry_id] = vb
    return a, b


@dataclass(frozen=True)
class FeatureAgreement:
    feature_id: str
    pair_kappas: tuple[tuple[str, str, KappaResult | Undefined], ...]
    mean_kappa: float | Undefined
    verdict: str  # Keep | Review | Abandon


@dataclass(frozen=True)
class ReproReport:
    feature_ids: tuple[str, ...]
    copy_ids: tuple[str, ...]
    agreements: tuple[FeatureAgreement, ...]
    abandon_below: float
    review_below: float

    def agreement(self, feature_id: str) -> FeatureAgreement:
        for fa in self.agreements:
            if fa.feature_id == feature_id:
                return fa
        raise KeyError(feature_id)


def _verdict(mean: float | Undefined, abandon_below: float, review_below: float) -> str:
    if isinstance(mean, Undefined):
        # no usable pair: the feature needs another look, not a number
        return "Review"
    if mean < abandon_below:
        return "Abandon"
    if mean < review_below:
        return "Review"
    return "Keep"


def reproducibility_report(
    copies: Sequence[Table],
    feature_ids: Sequence[str],
    *,
    abandon_below: float = 0.4,
    review_below: float = 0.6,
) -> ReproReport:
    """Per-feature agreement across independent copies of one table.

    Every unordered pair of copies contributes a kappa; the verdict
    buckets the mean of the defined ones.
    """
    if len(copies) < 2:
        raise ValueError("need at least two copies to measure agreement")
    if not abandon_below <= review_below:
        raise ValueError("abandon threshold must not exceed review threshold")
    agreements: list[FeatureAgreement] = []
    for fid in feature_ids:
        pair_rows: list[tuple[str, str, KappaResult | Undefined]] = []
        defined: list[float] = []
        for i in range(len(copies)):
            for j in range(i + 1, len(copies)):
                a, b = joint_judgments(copies[i], copies[j], fid)
                res = cohen_kappa(a, b)
                pair_rows.append((copies[i].table_id, copies[j].table_id, res))
                if isinstance(res, KappaResult):
                    defined.append(res.kappa)
        mean: float | Undefined
        if defined:
            mean = math.fsum(defined) / len(defined)
        else:
            mean = Undefined("no-defined-pairs")
        agreements.append(
            FeatureAgreement(
                fid,
                tuple(pair_rows),
                mean,
                _verdict(mean, abandon_below, review_below),
            )
        )
    return ReproReport(
        tuple(feature_ids),
        tuple(t.table_id for t in copies),
        tuple(agreements),
        abandon_below,
        review_below,
    )
