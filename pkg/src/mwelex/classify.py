"""Decision trees assigning multiword entries to lexical classes.

Two trees over the same feature vectors.  The first treats support-verb
constructions as one undivided class and keys the remaining classes on
part of speech, with prepositional entries split by whether they accept
the copula.  The second subdivides support-verb constructions by the
support verb's nature (ordinary support verb vs copula) and the
predicative core's category, which folds the copular prepositional
class of the first tree into the predicative branch.

Both trees refuse to guess: a gate that reads Unknown yields an
Unclassifiable outcome naming the blocking feature, never a default
leaf.  An entry may also be unclassifiable because its features combine
in a way the tree rejects outright (reason "rule-conflict" or
"unsupported-combination"), or because the subdivision needs a copula
the target language lacks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .model import Entry, Lexicon, PartOfSpeech, materialize_entry
from .registry import FeatureRegistry
from .values import UNKNOWN, FeatureValue

Step = tuple[str, str]  # (feature id or "pos", value token consumed)


class Fig1Leaf(enum.Enum):
    NON_LEXICALIZED = "NonLexicalized"
    SUPPORT_VERB_CONSTRUCTION = "SupportVerbConstruction"
    MULTIWORD_NOUN = "MultiwordNoun"
    MULTIWORD_ADJECTIVE = "MultiwordAdjective"
    VERBAL_IDIOM = "VerbalIdiom"
    MULTIWORD_ADVERBIAL = "MultiwordAdverbial"
    PP_COMPATIBLE_WITH_BE = "PPCompatibleWithBe"


class Fig2Leaf(enum.Enum):
    NON_LEXICALIZED = "NonLexicalized"
    SVC_NOUN_PREDICATE = "SvcNounPredicate"
    COPULAR_PRED_NOUN = "CopularPredNoun"
    COPULAR_PRED_ADJECTIVE = "CopularPredAdjective"
    COPULAR_PRED_PP = "CopularPredPP"
    MULTIWORD_NOUN = "MultiwordNoun"
    MULTIWORD_ADJECTIVE = "MultiwordAdjective"
    VERBAL_IDIOM = "VerbalIdiom"
    MULTIWORD_ADVERBIAL = "MultiwordAdverbial"


@dataclass(frozen=True)
class ClassLabel:
    tree: str  # "coarse" | "subdivided"
    leaf: Fig1Leaf | Fig2Leaf
    path: tuple[Step, ...] = ()


@dataclass(frozen=True)
class Unclassifiable:
    tree: str
    blocking_feature: str
    reason: str  # unknown-value | rule-conflict | no-copula | unsupported-combination
    path: tuple[Step, ...] = ()


Outcome = ClassLabel | Unclassifiable


def _get(features: Mapping[str, FeatureValue], fid: str) -> FeatureValue:
    return features.get(fid, UNKNOWN)


_POS_LEAF_1 = {
    PartOfSpeech.NOUN: Fig1Leaf.MULTIWORD_NOUN,
    PartOfSpeech.ADJECTIVE: Fig1Leaf.MULTIWORD_ADJECTIVE,
    PartOfSpeech.VERB: Fig1Leaf.VERBAL_IDIOM,
    PartOfSpeech.ADVERB: Fig1Leaf.MULTIWORD_ADVERBIAL,
}


def classify_coarse(entry: Entry) -> Outcome:
    """First tree: SVC undivided, prepositional entries split on be."""
    tree = "coarse"
    path: list[Step] = []
    f = entry.features

    lex = _get(f, "lexicalized")
    if lex.is_unknown:
        return Unclassifiable(tree, "lexicalized", "unknown-value", tuple(path))
    path.append(("lexicalized", lex.token))
    if lex.is_minus:
        return ClassLabel(tree, Fig1Leaf.NON_LEXICALIZED, tuple(path))

    svc = _get(f, "svc")
    if svc.is_unknown:
        return Unclassifiable(tree, "svc", "unknown-value", tuple(path))
    path.append(("svc", svc.token))
    if svc.is_plus:
        return ClassLabel(tree, Fig1Leaf.SUPPORT_VERB_CONSTRUCTION, tuple(path))

    path.append(("pos", entry.pos.value))
    if entry.pos is PartOfSpeech.PREPOSITIONAL:
        be = _get(f, "be-compatible")
        if be.is_unknown:
            return Unclassifiable(tree, "be-compatible", "unknown-value", tuple(path))
        path.append(("be-compatible", be.token))
        if be.is_plus:
            return ClassLabel(tree, Fig1Leaf.PP_COMPATIBLE_WITH_BE, tuple(path))
        return ClassLabel(tree, Fig1Leaf.MULTIWORD_ADVERBIAL, tuple(path))
    return ClassLabel(tree, _POS_LEAF_1[entry.pos], tuple(path))


_POS_LEAF_2 = {
    PartOfSpeech.NOUN: Fig2Leaf.MULTIWORD_NOUN,
    PartOfSpeech.ADJECTIVE: Fig2Leaf.MULTIWORD_ADJECTIVE,
    PartOfSpeech.VERB: Fig2Leaf.VERBAL_IDIOM,
    PartOfSpeech.ADVERB: Fig2Leaf.MULTIWORD_ADVERBIAL,
    PartOfSpeech.PREPOSITIONAL: Fig2Leaf.MULTIWORD_ADVERBIAL,
}

_CORE_LEAF = {
    "noun": Fig2Leaf.COPULAR_PRED_NOUN,
    "adjective": Fig2Leaf.COPULAR_PRED_ADJECTIVE,
    "pp": Fig2Leaf.COPULAR_PRED_PP,
}


def classify_subdivided(entry: Entry, *, language_has_copula: bool = True) -> Outcome:
    """Second tree: support-verb constructions split by verb and core.

    The gate takes either sense of support verb: ordinary or copular.
    It reads the ordinary-svc feature first and the copular one second,
    and a Plus on either opens the branch; when neither is Plus, an
    Unknown on the first consulted feature blocks.
    """
    tree = "subdivided"
    path: list[Step] = []
    f = entry.features

    lex = _get(f, "lexicalized")
    if lex.is_unknown:
        return Unclassifiable(tree, "lexicalized", "unknown-value", tuple(path))
    path.append(("lexicalized", lex.token))
    if lex.is_minus:
        return ClassLabel(tree, Fig2Leaf.NON_LEXICALIZED, tuple(path))

    svc = _get(f, "svc")
    cop = _get(f, "copular-svc")
    in_branch = svc.is_plus or cop.is_plus
    if not in_branch:
        if svc.is_unknown:
            return Unclassifiable(tree, "svc", "unknown-value", tuple(path))
        if cop.is_unknown:
            path.append(("svc", svc.token))
            return Unclassifiable(tree, "copular-svc", "unknown-value", tuple(path))

    if in_branch:
        path.append(("svc", svc.token))
        if cop.is_unknown:
            return Unclassifiable(tree, "copular-svc", "unknown-value", tuple(path))
        path.append(("copular-svc", cop.token))
        core = _get(f, "pred-core-pos")
        if core.is_unknown:
            return Unclassifiable(tree, "pred-core-pos", "unknown-value", tuple(path))
        if core.is_minus or not core.is_literal or core.texts[0] not in _CORE_LEAF:
            # a support-verb construction needs a nominal, adjectival
            # or prepositional core to land in a subdivision
            return Unclassifiable(tree, "pred-core-pos", "unsupported-combination", tuple(path))
        core_token = core.texts[0]
        path.append(("pred-core-pos", core.token))
        if cop.is_plus:
            if core_token == "adjective" and not language_has_copula:
                return Unclassifiable(tree, "copular-svc", "no-copula", tuple(path))
            return ClassLabel(tree, _CORE_LEAF[core_token], tuple(path))
        if core_token == "noun":
            return ClassLabel(tree, Fig2Leaf.SVC_NOUN_PREDICATE, tuple(path))
        if core_token == "adjective":
            # adjectival cores take the copula as their support verb;
            # denying copular-svc while asserting svc contradicts that
            reason = "rule-conflict" if language_has_copula else "no-copula"
            return Unclassifiable(tree, "copular-svc", reason, tuple(path))
        return Unclassifiable(tree, "pred-core-pos", "unsupported-combination", tuple(path))

    path.append(("svc", svc.token))
    path.append(("copular-svc", cop.token))
    path.append(("pos", entry.pos.value))
    return ClassLabel(tree, _POS_LEAF_2[entry.pos], tuple(path))


# Leaves of the second tree each first-tree leaf may legally refine to.
# The copular prepositional class sits under the first tree's
# be-compatible leaf; copular nominal and adjectival predicates sit
# under the first tree's SVC leaf when the ordinary-svc feature is also
# Plus, and under the plain noun/adjective leaves when it is Minus.
CONSISTENT_SUBDIVIDED: dict[Fig1Leaf, frozenset[Fig2Leaf]] = {
    Fig1Leaf.NON_LEXICALIZED: frozenset({Fig2Leaf.NON_LEXICALIZED}),
    Fig1Leaf.SUPPORT_VERB_CONSTRUCTION: frozenset(
        {
            Fig2Leaf.SVC_NOUN_PREDICATE,
            Fig2Leaf.COPULAR_PRED_NOUN,
            Fig2Leaf.COPULAR_PRED_ADJECTIVE,
            Fig2Leaf.COPULAR_PRED_PP,
        }
    ),
    Fig1Leaf.MULTIWORD_NOUN: frozenset(
        {Fig2Leaf.MULTIWORD_NOUN, Fig2Leaf.COPULAR_PRED_NOUN}
    ),
    Fig1Leaf.MULTIWORD_ADJECTIVE: frozenset(
        {Fig2Leaf.MULTIWORD_ADJECTIVE, Fig2Leaf.COPULAR_PRED_ADJECTIVE}
    ),
    Fig1Leaf.VERBAL_IDIOM: frozenset({Fig2Leaf.VERBAL_IDIOM}),
    Fig1Leaf.MULTIWORD_ADVERBIAL: frozenset({Fig2Leaf.MULTIWORD_ADVERBIAL}),
    Fig1Leaf.PP_COMPATIBLE_WITH_BE: frozenset(
        {Fig2Leaf.COPULAR_PRED_PP, Fig2Leaf.MULTIWORD_ADVERBIAL}
    ),
}


def cross_check(first: Outcome, second: Outcome) -> bool | None:
    """Whether the two trees agree on one entry; None when either
    refused to classify."""
    if isinstance(first, Unclassifiable) or isinstance(second, Unclassifiable):
        return None
    assert isinstance(first.leaf, Fig1Leaf) and isinstance(second.leaf, Fig2Leaf)
    return second.leaf in CONSISTENT_SUBDIVIDED[first.leaf]


# ---------------------------------------------------------------------------
# Whole-lexicon reports

@dataclass(frozen=True)
class EntryRow:
    table_id: str
    entry_id: str
    outcome: Outcome


@dataclass(frozen=True)
class ClassReport:
    tree: str
    rows: tuple[EntryRow, ...]
    counts: Mapping[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def classified(self) -> int:
        return sum(1 for r in self.rows if isinstance(r.outcome, ClassLabel))

    def percentage(self, leaf_name: str) -> float:
        if not self.rows:
            return 0.0
        return 100.0 * self.counts.get(leaf_name, 0) / len(self.rows)

    def unclassifiable_rows(self) -> list[EntryRow]:
        return [r for r in self.rows if isinstance(r.outcome, Unclassifiable)]


def classify_lexicon(
    lexicon: Lexicon,
    registry: FeatureRegistry,
    tree: str = "coarse",
    *,
    language_has_copula: bool = True,
) -> ClassReport:
    rows: list[EntryRow] = []
    counts: dict[str, int] = {}
    for table, entry in lexicon.all_entries():
        m = materialize_entry(table, entry, registry)
        if tree == "coarse":
            outcome = classify_coarse(m)
        elif tree == "subdivided":
            outcome = classify_subdivided(m, language_has_copula=language_has_copula)
        else:
            raise ValueError(f"unknown tree {tree!r}")
        rows.append(EntryRow(table.table_id, entry.entry_id, outcome))
        if isinstance(outcome, ClassLabel):
            counts[outcome.leaf.value] = counts.get(outcome.leaf.value, 0) + 1
        else:
            counts["Unclassifiable"] = counts.get("Unclassifiable", 0) + 1
    return ClassReport(tree, tuple(rows), counts)


@dataclass(frozen=True)
class CrossCheckRow:
    table_id: str
    entry_id: str
    first: Outcome
    second: Outcome
    consistent: bool | None


def cross_check_lexicon(
    lexicon: Lexicon,
    registry: FeatureRegistry,
    *,
    language_has_copula: bool = True,
) -> list[CrossCheckRow]:
    out: list[CrossCheckRow] = []
    for table, entry in lexicon.all_entries():
        m = materialize_entry(table, entry, registry)
        first = classify_coarse(m)
        second = classify_subdivided(m, language_has_copula=language_has_copula)
        out.append(
            CrossCheckRow(
                table.table_id, entry.entry_id, first, second, cross_check(first, second)
            )
        )
    return out
