"""Conversion between table files and flat JSON lexicon exchange lists.

Most machine-readable MWE lexicons record only what an expression HAS:
a list of properties that hold.  The table format also records what an
expression lacks (Minus) and what nobody has judged yet (Unknown), and
those two are different assertions.  Flattening a table into a
property-list therefore loses information, and the point of this module
is to lose it out loud: every conversion to the narrow format comes
with a loss report naming each cell that went missing.

Two JSON shapes:

  feature-list   {"entries": [{"id", "lemma", "pos", "pattern",
                   "features": ["svc", "selected-prep-n1=to", ...]}]}
                 membership means Plus (or the given value); absence
                 means nothing at all.

  extended       same envelope plus "table_id" and "defining", and each
                 entry carries a {"feature": "token"} cell map instead
                 of a list, so Minus and Unknown survive the trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .diagnostics import LexiconError
from .model import Entry, PartOfSpeech, Table, effective_features
from .registry import FeatureRegistry
from .values import PLUS, UNKNOWN, FeatureValue, literal, literal_set, parse_value_token


def _present_token(fid: str, value: FeatureValue) -> str | None:
    if value.is_plus:
        return fid
    if value.is_valued:
        return f"{fid}=" + "|".join(value.texts)
    return None


def export_feature_list(table: Table, registry: FeatureRegistry) -> str:
    """Flatten to the narrow format: present features only."""
    entries = []
    for e in table.entries:
        merged = effective_features(table, e)
        present = []
        for fid in registry.sort_features(merged):
            token = _present_token(fid, merged[fid])
            if token is not None:
                present.append(token)
        entries.append(
            {
                "id": e.entry_id,
                "lemma": e.lemma_form,
                "pos": e.pos.value,
                "pattern": e.pattern,
                "features": present,
            }
        )
    return json.dumps({"entries": entries}, indent=2, ensure_ascii=False) + "\n"


def _parse_present(token: str) -> tuple[str, FeatureValue]:
    fid, eq, rest = token.partition("=")
    if not eq:
        return fid, PLUS
    if not rest:
        raise LexiconError(f"feature token {token!r} has an empty value")
    texts = rest.split("|")
    return fid, literal(texts[0]) if len(texts) == 1 else literal_set(texts)


def import_feature_list(
    text: str, registry: FeatureRegistry, table_id: str = "imported"
) -> Table:
    """Read the narrow format back into a table.

    Listed features become Plus (or the carried value); every other
    registry feature becomes an explicit Unknown cell, because the
    narrow format cannot distinguish "lacks it" from "nobody looked".
    """
    doc = _load(text)
    entries = []
    for raw in doc.get("entries", []):
        features: dict[str, FeatureValue] = {fid: UNKNOWN for fid in registry.ids()}
        for token in raw.get("features", []):
            fid, value = _parse_present(token)
            if fid not in registry:
                raise LexiconError(f"unknown feature {fid!r} in import")
            features[fid] = value
        entries.append(
            Entry(
                raw["id"],
                raw["lemma"],
                raw["pattern"],
                PartOfSpeech(raw["pos"]),
                features,
            )
        )
    return Table(table_id, {}, tuple(entries))


# ---------------------------------------------------------------------------
# Loss audit

@dataclass(frozen=True)
class LostCell:
    entry_id: str
    feature_id: str
    token: str  # what the table asserted
    kind: str  # "minus" | "unknown"


@dataclass(frozen=True)
class LossReport:
    total_cells: int
    kept_cells: int
    lost: tuple[LostCell, ...]

    @property
    def lossless(self) -> bool:
        return not self.lost

    def lost_by_kind(self, kind: str) -> list[LostCell]:
        return [c for c in self.lost if c.kind == kind]


def loss_report(table: Table, registry: FeatureRegistry) -> LossReport:
    """What flattening this table to the narrow format throws away.

    A Plus or valued cell survives as a listed property.  A Minus cell
    is lost as asserted absence (the narrow format reads it as silence);
    an Unknown cell is lost as a recorded open question.
    """
    total = 0
    kept = 0
    lost: list[LostCell] = []
    for e in table.entries:
        merged = effective_features(table, e)
        for fid in registry.sort_features(merged):
            v = merged[fid]
            total += 1
            if _present_token(fid, v) is not None:
                kept += 1
            elif v.is_minus:
                lost.append(LostCell(e.entry_id, fid, v.token, "minus"))
            else:
                lost.append(LostCell(e.entry_id, fid, v.token, "unknown"))
    return LossReport(total, kept, tuple(lost))


def audit_round_trip(table: Table, registry: FeatureRegistry) -> LossReport:
    """Export to the narrow format, import back, diff the cells.

    The report this computes must equal loss_report(table): the cells
    that fail to round-trip are exactly the Minus and Unknown cells.
    """
    back = import_feature_list(export_feature_list(table, registry), registry)
    rows = {e.entry_id: e for e in back.entries}
    total = 0
    kept = 0
    lost: list[LostCell] = []
    for e in table.entries:
        merged = effective_features(table, e)
        round_tripped = rows[e.entry_id].features
        for fid in registry.sort_features(merged):
            total += 1
            v = merged[fid]
            survived = round_tripped.get(fid, UNKNOWN)
            # after import every unlisted feature reads Unknown, so an
            # Unknown match is the default talking, not the original
            # cell surviving; only informative cells count as kept
            if survived == v and not v.is_unknown:
                kept += 1
            else:
                lost.append(
                    LostCell(e.entry_id, fid, v.token, "minus" if v.is_minus else "unknown")
                )
    return LossReport(total, kept, tuple(lost))


# ---------------------------------------------------------------------------
# Extended format: lossless JSON round-trip

def export_extended(table: Table, registry: FeatureRegistry) -> str:
    """JSON that keeps the tri-state cells and the table structure."""
    entries = []
    for e in table.entries:
        cells = {
            fid: e.features[fid].token for fid in registry.sort_features(e.features)
        }
        entries.append(
            {
                "id": e.entry_id,
                "lemma": e.lemma_form,
                "pos": e.pos.value,
                "pattern": e.pattern,
                "cells": cells,
            }
        )
    doc = {
        "format": "extended",
        "table_id": table.table_id,
        "defining": {
            fid: table.defining_features[fid].token
            for fid in registry.sort_features(table.defining_features)
        },
        "entries": entries,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def import_extended(text: str, registry: FeatureRegistry) -> Table:
    doc = _load(text)
    if doc.get("format") != "extended":
        raise LexiconError("not an extended-format document")
    defining = {
        fid: parse_value_token(tok) for fid, tok in doc.get("defining", {}).items()
    }
    entries = []
    for raw in doc.get("entries", []):
        features = {
            fid: parse_value_token(tok) for fid, tok in raw.get("cells", {}).items()
        }
        entries.append(
            Entry(
                raw["id"],
                raw["lemma"],
                raw["pattern"],
                PartOfSpeech(raw["pos"]),
                features,
            )
        )
    return Table(doc["table_id"], defining, tuple(entries))


def _load(text: str) -> Mapping:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"bad JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise LexiconError("top level must be a JSON object")
    return doc
