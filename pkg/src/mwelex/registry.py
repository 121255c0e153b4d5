"""Feature catalogue: which criteria a lexicon records, and how they interact.

A FeatureRegistry fixes the set of feature ids a table may use, the kind
of value each one takes, and a small list of implication rules between
them.  The builtin catalogue (standard_registry) covers lexical status,
support-verb constructions in both the narrow and the copular sense, a
battery of syntactic operations on verbal idioms, referential behaviour
of idiom components, and be/causative compatibility of predicative
expressions.

Rules are antecedent => consequent pairs (the antecedent may be a
conjunction).  Checking is monotone: an Unknown never *adds* a
violation, it can only downgrade one to a warning ("the rule would
settle this cell, but nobody judged it").
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

from .diagnostics import LexiconError, Severity, Violation
from .values import (
    PLUS,
    UNKNOWN,
    FeatureValue,
    kleene_and,
    literal,
    parse_value_token,
)


class FeatureKind(Enum):
    BINARY = "binary"
    SLOT_VALUED = "slot-valued"
    VERB_SET_VALUED = "verb-set-valued"
    LITERAL_VALUED = "literal-valued"


_ID_RE = re.compile(r"^[a-z][a-z0-9]*(-[a-z0-9]+)*$")
_SLOT_SUFFIX_RE = re.compile(r"-n[0-9]$")


@dataclass(frozen=True)
class FeatureDef:
    feature_id: str
    kind: FeatureKind
    doc: str
    criterion_ref: str
    # LITERAL_VALUED only: closed set of admissible literals.
    allowed: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not _ID_RE.match(self.feature_id):
            raise LexiconError(f"feature id is not kebab-case: {self.feature_id!r}")
        if self.kind is FeatureKind.SLOT_VALUED and not _SLOT_SUFFIX_RE.search(self.feature_id):
            raise LexiconError(
                f"slot-valued feature id must end with its slot suffix: {self.feature_id!r}"
            )
        if self.allowed and self.kind is not FeatureKind.LITERAL_VALUED:
            raise LexiconError(f"only literal-valued features take an allowed set: {self.feature_id!r}")


@dataclass(frozen=True)
class Condition:
    """One (feature, required value) test inside a rule.

    A Plus requirement is met by an explicit Plus or by any attested
    literal value: a recorded verb set or preposition is positive
    evidence that the criterion applies.
    """

    feature: str
    required: FeatureValue

    def holds(self, actual: FeatureValue) -> bool:
        if self.required.is_plus:
            return actual.is_plus or actual.is_valued
        if self.required.is_minus:
            return actual.is_minus
        if self.required.is_valued:
            return actual.is_valued and set(actual.texts) == set(self.required.texts)
        raise LexiconError(f"rule condition cannot require {self.required!r}")

    def contradicted_by(self, actual: FeatureValue) -> bool:
        if actual.is_unknown:
            return False
        if self.required.is_plus:
            return actual.is_minus
        if self.required.is_minus:
            return actual.is_plus or actual.is_valued
        # literal requirement: an explicit Minus or a different literal both contradict
        return actual.is_minus or (actual.is_valued and set(actual.texts) != set(self.required.texts))


@dataclass(frozen=True)
class ImplicationRule:
    rule_id: str
    antecedent: tuple[Condition, ...]
    consequent: Condition
    doc: str

    def __post_init__(self) -> None:
        if not self.antecedent:
            raise LexiconError(f"rule {self.rule_id}: empty antecedent")
        if any(c.feature == self.consequent.feature for c in self.antecedent):
            raise LexiconError(f"rule {self.rule_id}: consequent feature appears in antecedent")


@dataclass(frozen=True)
class FeatureRegistry:
    version: str
    features: tuple[FeatureDef, ...]
    rules: tuple[ImplicationRule, ...] = ()

    def __post_init__(self) -> None:
        ids = [f.feature_id for f in self.features]
        if len(set(ids)) != len(ids):
            raise LexiconError("duplicate feature ids in registry")
        known = set(ids)
        for r in self.rules:
            for c in r.antecedent + (r.consequent,):
                if c.feature not in known:
                    raise LexiconError(f"rule {r.rule_id} references unknown feature {c.feature!r}")

    @cached_property
    def _by_id(self) -> dict[str, FeatureDef]:
        return {f.feature_id: f for f in self.features}

    @cached_property
    def _order(self) -> dict[str, int]:
        return {f.feature_id: i for i, f in enumerate(self.features)}

    def __contains__(self, feature_id: str) -> bool:
        return feature_id in self._by_id

    def __getitem__(self, feature_id: str) -> FeatureDef:
        try:
            return self._by_id[feature_id]
        except KeyError:
            raise LexiconError(f"unknown feature id: {feature_id!r}") from None

    def ids(self) -> tuple[str, ...]:
        return tuple(f.feature_id for f in self.features)

    def sort_features(self, feature_ids: Iterable[str]) -> list[str]:
        """Catalogue order; unknown ids would be a bug upstream."""
        return sorted(feature_ids, key=lambda f: self._order[f])


# The three sub-criteria behind the referential-component feature.
_REF_PARTS = ("ref-comp-i", "ref-comp-ii", "ref-comp-iii")


def derive_feature_map(features: Mapping[str, FeatureValue]) -> dict[str, FeatureValue]:
    """Fill in derived features from their parts.

    ref-component is the conjunction of the three referential
    sub-criteria.  An explicitly stored value is never overwritten, even
    when it disagrees with the derivation; check_implications reports
    the disagreement instead.
    """
    out = dict(features)
    stored = features.get("ref-component", UNKNOWN)
    if stored.is_unknown:
        out["ref-component"] = kleene_and(features.get(f, UNKNOWN) for f in _REF_PARTS)
    return out


def check_implications(
    features: Mapping[str, FeatureValue], registry: FeatureRegistry, *, entry_id: str | None = None
) -> list[Violation]:
    """Evaluate every registry rule against one feature map.

    A rule whose antecedent holds and whose consequent is explicitly
    contradicted yields an error; an Unknown consequent yields a warning
    only.  Entries missing a feature count as Unknown, so adding
    Unknown cells never introduces findings.
    """
    found: list[Violation] = []
    for rule in registry.rules:
        if not all(c.holds(features.get(c.feature, UNKNOWN)) for c in rule.antecedent):
            continue
        actual = features.get(rule.consequent.feature, UNKNOWN)
        if rule.consequent.contradicted_by(actual):
            found.append(
                Violation(
                    Severity.ERROR,
                    "rule",
                    f"{rule.doc} (expected {rule.consequent.required.token}, found {actual.token})",
                    entry_id=entry_id,
                    feature=rule.consequent.feature,
                    rule_id=rule.rule_id,
                )
            )
        elif actual.is_unknown:
            found.append(
                Violation(
                    Severity.WARNING,
                    "rule-unsettled",
                    f"{rule.doc} (consequent not judged)",
                    entry_id=entry_id,
                    feature=rule.consequent.feature,
                    rule_id=rule.rule_id,
                )
            )
    return found


def _feature(fid: str, kind: FeatureKind, doc: str, ref: str, allowed: tuple[str, ...] = ()) -> FeatureDef:
    return FeatureDef(fid, kind, doc, ref, allowed)


def standard_registry(language_has_copula: bool = True) -> FeatureRegistry:
    """The builtin feature catalogue.

    Deterministic: two calls with the same argument return identical
    ordered catalogues.  The copula flag only gates the rule that ties
    adjectival predicate cores to the copular construction; in a
    language without a copula that construction does not exist.
    """
    b, s, v, l = (
        FeatureKind.BINARY,
        FeatureKind.SLOT_VALUED,
        FeatureKind.VERB_SET_VALUED,
        FeatureKind.LITERAL_VALUED,
    )
    features = (
        _feature("lexicalized", b,
                 "The combination is a lexical unit with a conventional reading, not just a frequent free combination.",
                 "lexical-status"),
        _feature("svc", b,
                 "Support-verb construction in the narrow sense: the noun carries the predicate and the verb little more than tense.",
                 "support-verb"),
        _feature("copular-svc", b,
                 "Support-verb construction whose support verb is the copula: a predicational noun, adjective or prepositional phrase used with be.",
                 "copular-support"),
        _feature("pred-core-pos", l,
                 "Part of speech of the predicate core of a support-verb construction.",
                 "predicate-core", ("noun", "adjective", "pp")),
        _feature("verb-removable", b,
                 "The verb can be removed, leaving a noun phrase that keeps the reading and its arguments.",
                 "verb-removal"),
        _feature("det-coref-constraint", b,
                 "The determiner of the predicative noun is restricted to one coreferent with the subject; free possessives are out.",
                 "determiner-coreference"),
        _feature("compulsory-coref", b,
                 "A possessive inside the fixed material must corefer with one of the arguments.",
                 "compulsory-coreference"),
        _feature("head-autonomous", b,
                 "The head of the expression keeps its independent denotation (a red wine is a wine).",
                 "head-autonomy"),
        _feature("ref-comp-i", b,
                 "The component, inside the idiom, keeps a meaning it also has as an independent lexical entry.",
                 "referential-meaning"),
        _feature("ref-comp-ii", b,
                 "The component can open a chain of coreferring expressions with ordinary marker syntax.",
                 "referential-chain-first"),
        _feature("ref-comp-iii", b,
                 "The component can continue a chain of coreferring expressions with ordinary marker syntax.",
                 "referential-chain-later"),
        _feature("ref-component", b,
                 "The component refers: conjunction of the three referential sub-criteria.",
                 "referential-component"),
        _feature("be-compatible", b,
                 "The expression can stand as the attribute of be.",
                 "be-compatibility"),
        _feature("causative-verbs", v,
                 "Verbs that stack a causer argument on top of the stative reading; recorded as the attested verb set.",
                 "causative-insertion"),
        _feature("selected-prep-n1", s,
                 "Preposition the expression selects for its N1 complement.",
                 "selected-preposition"),
        _feature("selected-prep-n2", s,
                 "Preposition the expression selects for its N2 complement.",
                 "selected-preposition"),
        _feature("fixed-constituent-optional", b,
                 "A fixed constituent can be left out without losing the reading.",
                 "fixed-omission"),
        _feature("free-slot-optional", b,
                 "A free complement (with its preposition) can be left out without losing the reading.",
                 "slot-omission"),
        _feature("adjunct-insertion", b,
                 "A modifier can be inserted at the marked site inside the fixed material.",
                 "adjunct-insertion"),
        _feature("topicalization", b,
                 "The fixed complement can be fronted while keeping the reading.",
                 "topicalization"),
        _feature("dative-shift", b,
                 "The to-complement can shift into the double-object construction.",
                 "dative-shift"),
        _feature("repeated-reduction", b,
                 "A repeated occurrence of the fixed material can reduce in coordination.",
                 "repeated-reduction"),
        _feature("pseudocleft", b,
                 "The fixed complement can be focused by a pseudocleft.",
                 "pseudocleft"),
        _feature("passivization", b,
                 "The fixed object can surface as the subject of a passive.",
                 "passive"),
    )

    rules = [
        ImplicationRule(
            "R1",
            (Condition("causative-verbs", PLUS),),
            Condition("be-compatible", PLUS),
            "causative verbs presuppose the plain be reading",
        ),
        ImplicationRule(
            "R2",
            (Condition("svc", PLUS),),
            Condition("verb-removable", PLUS),
            "support verbs are removable",
        ),
    ]
    if language_has_copula:
        rules.append(
            ImplicationRule(
                "R3",
                (Condition("pred-core-pos", literal("adjective")),),
                Condition("copular-svc", PLUS),
                "an adjectival predicate core entails the copular construction",
            )
        )
    rules.append(
        ImplicationRule(
            "R4",
            tuple(Condition(f, PLUS) for f in _REF_PARTS),
            Condition("ref-component", PLUS),
            "all three referential sub-criteria together entail the referential component",
        )
    )
    # Reverse directions of R4: the referential component entails each
    # sub-criterion. Together with R4 this makes the biconditional checkable
    # with plain implication rules.
    for suffix, part in zip(("i", "ii", "iii"), _REF_PARTS):
        rules.append(
            ImplicationRule(
                f"R4{suffix}",
                (Condition("ref-component", PLUS),),
                Condition(part, PLUS),
                f"the referential component entails sub-criterion {suffix}",
            )
        )
    version = "builtin-1" if language_has_copula else "builtin-1-nocopula"
    return FeatureRegistry(version, features, tuple(rules))


def registry_to_json(registry: FeatureRegistry) -> str:
    """Serialize a registry for documentation tooling and --registry files."""

    def cond(c: Condition) -> dict:
        return {"feature": c.feature, "value": c.required.token}

    doc = {
        "version": registry.version,
        "features": [
            {
                "id": f.feature_id,
                "kind": f.kind.value,
                "doc": f.doc,
                "criterion_ref": f.criterion_ref,
                **({"allowed": list(f.allowed)} if f.allowed else {}),
            }
            for f in registry.features
        ],
        "rules": [
            {
                "id": r.rule_id,
                "antecedent": [cond(c) for c in r.antecedent],
                "consequent": cond(r.consequent),
                "doc": r.doc,
            }
            for r in registry.rules
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def registry_from_json(text: str) -> FeatureRegistry:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"registry file is not valid JSON: {exc}") from exc

    def cond(d: dict) -> Condition:
        return Condition(d["feature"], parse_value_token(d["value"]))

    try:
        features = tuple(
            FeatureDef(
                f["id"],
                FeatureKind(f["kind"]),
                f.get("doc", ""),
                f.get("criterion_ref", ""),
                tuple(f.get("allowed", ())),
            )
            for f in doc["features"]
        )
        rules = tuple(
            ImplicationRule(
                r["id"],
                tuple(cond(c) for c in r["antecedent"]),
                cond(r["consequent"]),
                r.get("doc", ""),
            )
            for r in doc.get("rules", ())
        )
        version = doc.get("version", "custom")
    except (KeyError, TypeError, ValueError) as exc:
        raise LexiconError(f"registry file is malformed: {exc}") from exc
    return FeatureRegistry(version, features, rules)
