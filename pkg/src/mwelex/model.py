"""Tables of lexical entries and their tab-separated file format.

A table groups entries that share defining feature values: the values
hold for every row and are stored once in the table header instead of
once per row.  The file format:

    #table idioms-v-c1
    #def svc -
    ## free-form comment
    id<TAB>lemma<TAB>pattern<TAB>pos<TAB><feature-id>...
    one row per entry

Cells are "+", "-", "?", "=text" (or "=a|b" for a set of alternatives),
or "." for a cell the table simply does not record.  "." and "?" are
different statements: "?" stores an explicit it-is-unknown judgment,
"." stores nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .diagnostics import LexiconError, Severity, TableFormatError, Violation
from .patterns import PatternError, parse_pattern
from .registry import FeatureKind, FeatureRegistry, check_implications, derive_feature_map
from .values import FeatureValue, parse_value_token


class PartOfSpeech(enum.Enum):
    NOUN = "N"
    ADJECTIVE = "A"
    VERB = "V"
    ADVERB = "ADV"
    PREPOSITIONAL = "PP"


_FIXED_COLUMNS = ("id", "lemma", "pattern", "pos")


@dataclass(frozen=True)
class Entry:
    """One lexical entry: a surface pattern plus stored feature values.

    features holds only what the table records for this row; defining
    values and derived values are merged in by materialize_entry.
    """

    entry_id: str
    lemma_form: str
    pattern: str
    pos: PartOfSpeech
    features: Mapping[str, FeatureValue] = field(default_factory=dict)


@dataclass(frozen=True)
class Table:
    table_id: str
    defining_features: Mapping[str, FeatureValue] = field(default_factory=dict)
    entries: tuple[Entry, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for e in self.entries:
            if e.entry_id in seen:
                raise LexiconError(f"duplicate entry id {e.entry_id!r} in table {self.table_id!r}")
            seen.add(e.entry_id)

    def entry(self, entry_id: str) -> Entry:
        for e in self.entries:
            if e.entry_id == entry_id:
                return e
        raise LexiconError(f"no entry {entry_id!r} in table {self.table_id!r}")


@dataclass(frozen=True)
class Lexicon:
    registry_version: str
    tables: tuple[Table, ...] = ()

    def all_entries(self) -> Iterable[tuple[Table, Entry]]:
        for t in self.tables:
            for e in t.entries:
                yield t, e


def effective_features(table: Table, entry: Entry) -> dict[str, FeatureValue]:
    """Defining values overlaid with the row's own cells."""
    merged = dict(table.defining_features)
    merged.update(entry.features)
    return merged


def materialize_entry(table: Table, entry: Entry, registry: FeatureRegistry) -> Entry:
    """The entry as a classifier sees it: defining merged, derived filled."""
    return Entry(
        entry_id=entry.entry_id,
        lemma_form=entry.lemma_form,
        pattern=entry.pattern,
        pos=entry.pos,
        features=derive_feature_map(effective_features(table, entry)),
    )


# ---------------------------------------------------------------------------
# Parsing

def parse_table(text: str, registry: FeatureRegistry, filename: str = "<table>") -> Table:
    lines = text.splitlines()
    table_id: str | None = None
    defining: dict[str, FeatureValue] = {}
    feature_columns: list[str] | None = None
    entries: list[Entry] = []
    pos_by_token = {p.value: p for p in PartOfSpeech}

    def fail(lineno: int, message: str) -> TableFormatError:
        return TableFormatError(f"{filename}: {message}", line=lineno)

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("##"):
            continue
        if line.startswith("#"):
            head, _, rest = line.partition(" ")
            rest = rest.strip()
            if head == "#table":
                if table_id is not None:
                    raise fail(lineno, "second #table line")
                if feature_columns is not None:
                    raise fail(lineno, "#table after the column header")
                if not rest:
                    raise fail(lineno, "#table without an id")
                table_id = rest
            elif head == "#def":
                if feature_columns is not None:
                    raise fail(lineno, "#def after the column header")
                parts = rest.split()
                if len(parts) != 2:
                    raise fail(lineno, "#def takes a feature id and a value")
                fid, cell = parts
                if fid not in registry:
                    raise fail(lineno, f"unknown feature {fid!r} in #def")
                if fid in defining:
                    raise fail(lineno, f"feature {fid!r} defined twice")
                try:
                    value = parse_value_token(cell)
                except LexiconError as exc:
                    raise fail(lineno, str(exc)) from exc
                if value.is_unknown:
                    raise fail(lineno, "a defining value cannot be unknown")
                defining[fid] = value
            else:
                raise fail(lineno, f"unknown directive {head!r}")
            continue

        cells = line.split("\t")
        if feature_columns is None:
            if table_id is None:
                raise fail(lineno, "missing #table line before the column header")
            if tuple(cells[: len(_FIXED_COLUMNS)]) != _FIXED_COLUMNS:
                raise fail(
                    lineno,
                    "column header must start with "
                    + "\\t".join(_FIXED_COLUMNS)
                    + f", got {cells[:len(_FIXED_COLUMNS)]!r}",
                )
            feature_columns = cells[len(_FIXED_COLUMNS) :]
            seen_cols: set[str] = set()
            for fid in feature_columns:
                if fid not in registry:
                    raise fail(lineno, f"unknown feature column {fid!r}")
                if fid in seen_cols:
                    raise fail(lineno, f"feature column {fid!r} repeated")
                seen_cols.add(fid)
            continue

        if len(cells) < len(_FIXED_COLUMNS):
            raise fail(lineno, f"row has {len(cells)} cells, needs at least {len(_FIXED_COLUMNS)}")
        if len(cells) > len(_FIXED_COLUMNS) + len(feature_columns):
            raise fail(lineno, "row has more cells than the header has columns")
        entry_id, lemma, pattern_src, pos_token = cells[: len(_FIXED_COLUMNS)]
        if not entry_id:
            raise fail(lineno, "empty entry id")
        if any(e.entry_id == entry_id for e in entries):
            raise fail(lineno, f"duplicate entry id {entry_id!r}")
        if pos_token not in pos_by_token:
            raise fail(
                lineno,
                f"unknown part of speech {pos_token!r}, expected one of "
                + ", ".join(sorted(pos_by_token)),
            )
        pos = pos_by_token[pos_token]
        try:
            parse_pattern(pattern_src, pos=pos.value)
        except PatternError as exc:
            raise fail(lineno, f"bad pattern for {entry_id!r}: {exc}") from exc

        row_features: dict[str, FeatureValue] = {}
        feature_cells = cells[len(_FIXED_COLUMNS) :]
        # short rows leave trailing cells unrecorded, same as "."
        for col, cell in zip(feature_columns, feature_cells):
            if cell == ".":
                continue
            try:
                value = parse_value_token(cell)
            except LexiconError as exc:
                raise fail(lineno, f"column {col!r}: {exc}") from exc
            if col in defining and value != defining[col]:
                raise fail(
                    lineno,
                    f"column {col!r} contradicts the table's defining value "
                    f"({value.token} vs {defining[col].token})",
                )
            row_features[col] = value
        entries.append(Entry(entry_id, lemma, pattern_src, pos, row_features))

    if table_id is None:
        raise TableFormatError(f"{filename}: missing #table line")
    if feature_columns is None:
        raise TableFormatError(f"{filename}: missing column header")
    return Table(table_id, defining, tuple(entries))


def serialize_table(table: Table, registry: FeatureRegistry) -> str:
    """Canonical text for a table; parse_table round-trips it."""
    stored: set[str] = set(table.defining_features)
    for e in table.entries:
        stored.update(e.features)
    columns = registry.sort_features(stored)

    out: list[str] = [f"#table {table.table_id}"]
    for fid in registry.sort_features(table.defining_features):
        out.append(f"#def {fid} {table.defining_features[fid].token}")
    out.append("\t".join(_FIXED_COLUMNS + tuple(columns)))
    for e in table.entries:
        cells = [e.entry_id, e.lemma_form, e.pattern, e.pos.value]
        for fid in columns:
            v = e.features.get(fid)
            cells.append("." if v is None else v.token)
        out.append("\t".join(cells))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Validation

_KIND_OK = {
    FeatureKind.BINARY: lambda v: not v.is_valued,
    FeatureKind.SLOT_VALUED: lambda v: v.is_unknown or v.is_minus or v.is_literal,
    FeatureKind.VERB_SET_VALUED: lambda v: v.is_unknown or v.is_minus or v.is_valued,
    FeatureKind.LITERAL_VALUED: lambda v: v.is_unknown or v.is_minus or v.is_literal,
}


def _check_cell(
    fid: str,
    value: FeatureValue,
    entry: Entry,
    registry: FeatureRegistry,
    out: list[Violation],
) -> None:
    if fid not in registry:
        out.append(
            Violation(
                Severity.ERROR,
                "unknown-feature",
                f"feature {fid!r} is not in the registry",
                entry_id=entry.entry_id,
                feature=fid,
            )
        )
        return
    fdef = registry[fid]
    if not _KIND_OK[fdef.kind](value):
        out.append(
            Violation(
                Severity.ERROR,
                "kind-mismatch",
                f"value {value.token!r} does not fit a {fdef.kind.value} feature",
                entry_id=entry.entry_id,
                feature=fid,
            )
        )
        return
    if fdef.kind is FeatureKind.LITERAL_VALUED and value.is_valued:
        if not value.is_literal:
            out.append(
                Violation(
                    Severity.ERROR,
                    "kind-mismatch",
                    "literal-set value on a single-literal feature",
                    entry_id=entry.entry_id,
                    feature=fid,
                )
            )
            return
        if fdef.allowed and value.texts[0] not in fdef.allowed:
            out.append(
                Violation(
                    Severity.ERROR,
                    "bad-literal",
                    f"{value.texts[0]!r} is not one of: " + ", ".join(fdef.allowed),
                    entry_id=entry.entry_id,
                    feature=fid,
                )
            )
    if fdef.kind is FeatureKind.SLOT_VALUED and value.is_literal:
        try:
            pattern = parse_pattern(entry.pattern, pos=entry.pos.value)
        except PatternError:
            return  # reported separately as bad-pattern
        # the feature id suffix names the slot the recorded preposition
        # introduces; recording one for a slot the pattern lacks is a
        # judgment about nothing
        slot = "N" + fid.rsplit("-n", 1)[1]
        if slot not in pattern.slot_names():
            out.append(
                Violation(
                    Severity.ERROR,
                    "missing-slot",
                    f"{fid!r} recorded but pattern has no {slot} slot",
                    entry_id=entry.entry_id,
                    feature=fid,
                )
            )


def validate_table(table: Table, registry: FeatureRegistry) -> list[Violation]:
    """Structural and logical checks over one table.

    Severity ERROR marks contradictions and malformed cells; WARNING
    marks consequents left unknown where a rule could have settled them.
    """
    out: list[Violation] = []
    for fid, value in table.defining_features.items():
        if fid not in registry:
            out.append(
                Violation(
                    Severity.ERROR,
                    "unknown-feature",
                    f"defining feature {fid!r} is not in the registry",
                    feature=fid,
                )
            )
        elif not _KIND_OK[registry[fid].kind](value):
            out.append(
                Violation(
                    Severity.ERROR,
                    "kind-mismatch",
                    f"defining value {value.token!r} does not fit a "
                    f"{registry[fid].kind.value} feature",
                    feature=fid,
                )
            )
    for entry in table.entries:
        try:
            parse_pattern(entry.pattern, pos=entry.pos.value)
        except PatternError as exc:
            out.append(
                Violation(
                    Severity.ERROR,
                    "bad-pattern",
                    str(exc),
                    entry_id=entry.entry_id,
                )
            )
        for fid, value in entry.features.items():
            _check_cell(fid, value, entry, registry, out)
            if fid in table.defining_features and value != table.defining_features[fid]:
                out.append(
                    Violation(
                        Severity.ERROR,
                        "defining-contradiction",
                        f"row value {value.token!r} contradicts defining "
                        f"{table.defining_features[fid].token!r}",
                        entry_id=entry.entry_id,
                        feature=fid,
                    )
                )
        known = {
            fid: v
            for fid, v in effective_features(table, entry).items()
            if fid in registry
        }
        out.extend(
            check_implications(
                derive_feature_map(known), registry, entry_id=entry.entry_id
            )
        )
    return out


def validate_lexicon(lexicon: Lexicon, registry: FeatureRegistry) -> list[Violation]:
    out: list[Violation] = []
    if lexicon.registry_version != registry.version:
        out.append(
            Violation(
                Severity.ERROR,
                "registry-mismatch",
                f"lexicon built against {lexicon.registry_version!r}, "
                f"validating against {registry.version!r}",
            )
        )
    for table in lexicon.tables:
        out.extend(validate_table(table, registry))
    return out


def merge_lexicon(registry: FeatureRegistry, tables: Iterable[Table]) -> Lexicon:
    """Combine tables into one lexicon; entry ids must stay unique."""
    tables = tuple(tables)
    owner: dict[str, str] = {}
    for t in tables:
        for e in t.entries:
            if e.entry_id in owner:
                raise LexiconError(
                    f"entry id {e.entry_id!r} appears in both "
                    f"{owner[e.entry_id]!r} and {t.table_id!r}"
                )
            owner[e.entry_id] = t.table_id
    return Lexicon(registry.version, tables)
