"""Surface patterns for multiword expressions and their variant forms.

The pattern DSL is whitespace-separated:

    N0 V:deal <a ~ blow> P:to N1

  N0..N9     free argument slot
  V:lemma    verb head (at most one; required for verbal entries)
  P:word     preposition introducing a complement or a fixed PP
  bare word  fixed lexical material, matched by lemma
  ~          adjunct site: a short gap inside the fixed material
  < ... >    constituent group (a fixed object the transformations move)
  [ ... ]    optional group (droppable when the table licenses it)

compile_variants turns one entry pattern plus its feature vector into
the variant patterns the table licenses: the base form always, then
passive, dative, causative, verbless and the two drop families when the
corresponding feature is Plus.  Minus and Unknown license nothing; a
licensed variant whose structural precondition fails is skipped with a
warning rather than guessed at.

Matching is lemma-level over (surface, lemma) tokens and deliberately
dumb: no parsing, a bounded slot length, a bounded adjunct gap.  The
oracle enumerator generates the exact finite language of a variant set
over finite slot fillers, so tests can compare the matcher against the
definition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .diagnostics import LexiconError, PatternError
from .values import UNKNOWN, FeatureValue

# ---------------------------------------------------------------------------
# Pattern atoms and parsing

_SLOT_RE = re.compile(r"^N[0-9]$")


@dataclass(frozen=True)
class FixedWord:
    lemma: str


@dataclass(frozen=True)
class VerbHead:
    lemma: str


@dataclass(frozen=True)
class SlotRef:
    name: str


@dataclass(frozen=True)
class PrepLiteral:
    word: str


@dataclass(frozen=True)
class AdjunctSite:
    pass


@dataclass(frozen=True)
class ConstituentGroup:
    """Angle-bracket group: the fixed object the transformations move."""

    members: tuple  # FixedWord | AdjunctSite

    def __post_init__(self) -> None:
        if not self.members:
            raise PatternError("empty constituent group")
        for m in self.members:
            if not isinstance(m, (FixedWord, AdjunctSite)):
                raise PatternError("constituent groups hold fixed words and adjunct sites only")


@dataclass(frozen=True)
class OptionalGroup:
    members: tuple  # any atom except OptionalGroup

    def __post_init__(self) -> None:
        if not self.members:
            raise PatternError("empty optional group")
        for m in self.members:
            if isinstance(m, OptionalGroup):
                raise PatternError("nested optional groups")


Atom = FixedWord | VerbHead | SlotRef | PrepLiteral | AdjunctSite | ConstituentGroup | OptionalGroup


@dataclass(frozen=True)
class EntryPattern:
    atoms: tuple[Atom, ...]

    def serialize(self) -> str:
        return " ".join(_render_atom(a) for a in self.atoms)

    def slot_names(self) -> list[str]:
        return [a.name for a in _walk(self.atoms) if isinstance(a, SlotRef)]

    def verb_head(self) -> VerbHead | None:
        for a in _walk(self.atoms):
            if isinstance(a, VerbHead):
                return a
        return None


def _walk(atoms: Iterable[Atom]) -> Iterator[Atom]:
    for a in atoms:
        yield a
        if isinstance(a, (ConstituentGroup, OptionalGroup)):
            yield from _walk(a.members)


def _render_atom(a: Atom) -> str:
    if isinstance(a, FixedWord):
        return a.lemma
    if isinstance(a, VerbHead):
        return f"V:{a.lemma}"
    if isinstance(a, SlotRef):
        return a.name
    if isinstance(a, PrepLiteral):
        return f"P:{a.word}"
    if isinstance(a, AdjunctSite):
        return "~"
    if isinstance(a, ConstituentGroup):
        return "<" + " ".join(_render_atom(m) for m in a.members) + ">"
    if isinstance(a, OptionalGroup):
        return "[" + " ".join(_render_atom(m) for m in a.members) + "]"
    raise TypeError(a)


def _tokenize(src: str) -> list[str]:
    out: list[str] = []
    word = ""
    for ch in src:
        if ch in "<>[]":
            if word:
                out.append(word)
                word = ""
            out.append(ch)
        elif ch.isspace():
            if word:
                out.append(word)
                word = ""
        else:
            word += ch
    if word:
        out.append(word)
    return out


def _leaf_atom(tok: str) -> Atom:
    if tok == "~":
        return AdjunctSite()
    if _SLOT_RE.match(tok):
        return SlotRef(tok)
    if tok.startswith("V:"):
        if len(tok) == 2:
            raise PatternError("verb head with empty lemma")
        return VerbHead(tok[2:])
    if tok.startswith("P:"):
        if len(tok) == 2:
            raise PatternError("preposition with empty word")
        return PrepLiteral(tok[2:])
    return FixedWord(tok)


def parse_pattern(src: str, *, pos: str | None = None) -> EntryPattern:
    """Parse one DSL string.

    pos, when given as "V", enforces the verbal-entry requirement of
    exactly one verb head.  More than one verb head is an error for any
    part of speech.
    """
    tokens = _tokenize(src)
    atoms: list[Atom] = []
    i = 0

    def parse_group(kind: str, upto: str) -> tuple[Atom, int]:
        nonlocal i
        members: list[Atom] = []
        i += 1
        while i < len(tokens) and tokens[i] != upto:
            tok = tokens[i]
            if tok in "<[":
                if kind == "optional" and tok == "[":
                    raise PatternError("nested optional groups")
                if kind == "constituent":
                    raise PatternError("groups cannot nest inside a constituent group")
                sub, i2 = parse_group("constituent", ">")
                members.append(sub)
                i = i2
                continue
            if tok in ">]":
                raise PatternError(f"unbalanced {tok!r}")
            members.append(_leaf_atom(tok))
            i += 1
        if i >= len(tokens):
            raise PatternError(f"unclosed group, expected {upto!r}")
        i += 1
        if kind == "constituent":
            return ConstituentGroup(tuple(members)), i
        return OptionalGroup(tuple(members)), i

    while i < len(tokens):
        tok = tokens[i]
        if tok == "<":
            grp, i = parse_group("constituent", ">")
            atoms.append(grp)
        elif tok == "[":
            grp, i = parse_group("optional", "]")
            atoms.append(grp)
        elif tok in ">]":
            raise PatternError(f"unbalanced {tok!r}")
        else:
            atoms.append(_leaf_atom(tok))
            i += 1

    if not atoms:
        raise PatternError("empty pattern")

    pattern = EntryPattern(tuple(atoms))
    slots = pattern.slot_names()
    if len(set(slots)) != len(slots):
        raise PatternError(f"duplicate slot in pattern: {src!r}")
    heads = [a for a in _walk(pattern.atoms) if isinstance(a, VerbHead)]
    if len(heads) > 1:
        raise PatternError(f"more than one verb head in pattern: {src!r}")
    if pos == "V" and not heads:
        raise PatternError(f"verbal entry without a verb head: {src!r}")
    return pattern


# ---------------------------------------------------------------------------
# Compiled matcher atoms

@dataclass(frozen=True)
class MWord:
    lemma: str
    role: str = "word"  # word | verb | prep
    participle: bool = False


@dataclass(frozen=True)
class MSlot:
    name: str


@dataclass(frozen=True)
class MGap:
    active: bool


@dataclass(frozen=True)
class MChoice:
    options: tuple[str, ...]


@dataclass(frozen=True)
class MOpt:
    members: tuple


MAtom = MWord | MSlot | MGap | MChoice | MOpt


def render_matcher_atoms(atoms: Sequence[MAtom]) -> str:
    parts = []
    for a in atoms:
        if isinstance(a, MWord):
            if a.role == "verb":
                parts.append(f"V:{a.lemma}" + ("[part]" if a.participle else ""))
            elif a.role == "prep":
                parts.append(f"P:{a.lemma}")
            else:
                parts.append(a.lemma)
        elif isinstance(a, MSlot):
            parts.append(a.name)
        elif isinstance(a, MGap):
            parts.append("~" if a.active else "~0")
        elif isinstance(a, MChoice):
            parts.append("(" + "|".join(a.options) + ")")
        elif isinstance(a, MOpt):
            parts.append("[" + render_matcher_atoms(a.members) + "]")
    return " ".join(parts)


@dataclass(frozen=True)
class VariantPattern:
    variant_id: str
    atoms: tuple[MAtom, ...]
    licensed_by: str | None = None


@dataclass(frozen=True)
class CompileWarning:
    variant_id: str
    message: str


@dataclass(frozen=True)
class CompileResult:
    variants: tuple[VariantPattern, ...]
    warnings: tuple[CompileWarning, ...] = ()


# Causer slot of the causative variant. Slot names are a closed set, so
# one of them is reserved by convention; patterns already using it skip
# the causative with a warning.
CAUSER_SLOT = "N9"

# English strands a directional/static alternation on the causative's
# preposition; both surfaces are attested, so the compiled body accepts
# either.
_CAUSATIVE_PREP_ALTERNATION = {"in": ("in", "into")}


def _plus(features: Mapping[str, FeatureValue], fid: str) -> bool:
    return features.get(fid, UNKNOWN).is_plus


def _inline(atoms: Iterable[Atom], gaps_active: bool, *, skip_optional: int | None = None) -> list[MAtom]:
    """Flatten pattern atoms to matcher atoms.

    Optional groups become required content in the base form; the
    drop-optional family removes one group (skip_optional, 1-based,
    counts optional groups in pattern order).
    """
    out: list[MAtom] = []
    opt_index = 0
    for a in atoms:
        if isinstance(a, OptionalGroup):
            opt_index += 1
            if opt_index == skip_optional:
                continue
            out.extend(_inline(a.members, gaps_active))
        elif isinstance(a, ConstituentGroup):
            out.extend(_inline(a.members, gaps_active))
        elif isinstance(a, FixedWord):
            out.append(MWord(a.lemma))
        elif isinstance(a, VerbHead):
            out.append(MWord(a.lemma, role="verb"))
        elif isinstance(a, PrepLiteral):
            out.append(MWord(a.word, role="prep"))
        elif isinstance(a, SlotRef):
            out.append(MSlot(a.name))
        elif isinstance(a, AdjunctSite):
            out.append(MGap(gaps_active))
        else:
            raise TypeError(a)
    return out


def _count_optional(atoms: Sequence[Atom]) -> int:
    return sum(1 for a in atoms if isinstance(a, OptionalGroup))


def _object_shape(atoms: Sequence[Atom]) -> tuple[SlotRef | None, int, int, tuple[Atom, ...]] | None:
    """Recognize the transformation-friendly shape:

        [subject slot] V <object> (P slot)

    Returns (subject, verb index, object index, tail) with tail being
    whatever follows the object group, or None if the pattern does not
    have that shape.
    """
    subject: SlotRef | None = None
    rest = list(atoms)
    if rest and isinstance(rest[0], SlotRef):
        subject = rest[0]
        rest = rest[1:]
    if not rest or not isinstance(rest[0], VerbHead):
        return None
    if len(rest) < 2 or not isinstance(rest[1], ConstituentGroup):
        return None
    tail = tuple(rest[2:])
    verb_index = 1 if subject else 0
    return subject, verb_index, verb_index + 1, tail


def compile_variants(
    pattern: EntryPattern,
    features: Mapping[str, FeatureValue],
    pos: str,
) -> CompileResult:
    """All variant patterns the feature vector licenses for one entry."""
    gaps_active = _plus(features, "adjunct-insertion")
    atoms = pattern.atoms
    variants: list[VariantPattern] = [
        VariantPattern("base", tuple(_inline(atoms, gaps_active)))
    ]
    warnings: list[CompileWarning] = []

    def warn(variant_id: str, message: str) -> None:
        warnings.append(CompileWarning(variant_id, message))

    # drop-optional-k: omit the k-th optional group
    if _plus(features, "fixed-constituent-optional"):
        n_opt = _count_optional(atoms)
        if n_opt == 0:
            warn("drop-optional", "fixed constituent marked optional but pattern has no optional group")
        for k in range(1, n_opt + 1):
            variants.append(
                VariantPattern(
                    f"drop-optional-{k}",
                    tuple(_inline(atoms, gaps_active, skip_optional=k)),
                    licensed_by="fixed-constituent-optional",
                )
            )

    # drop-slot-k: omit a trailing preposition + slot pair
    if _plus(features, "free-slot-optional"):
        if (
            len(atoms) >= 2
            and isinstance(atoms[-1], SlotRef)
            and isinstance(atoms[-2], PrepLiteral)
        ):
            k = atoms[-1].name[1:]
            variants.append(
                VariantPattern(
                    f"drop-slot-{k}",
                    tuple(_inline(atoms[:-2], gaps_active)),
                    licensed_by="free-slot-optional",
                )
            )
        else:
            warn("drop-slot", "free slot marked optional but pattern has no trailing preposition + slot")

    shape = _object_shape(atoms)

    # passive: front the object noun phrase (object group plus an
    # immediately following P+slot complement), auxiliary be, the verb
    # as a participle, then an optional by-phrase demoting the subject.
    if _plus(features, "passivization"):
        if shape is None or shape[0] is None:
            warn("passive", "passive licensed but pattern is not subject + verb + fixed object")
        else:
            subject, _vi, oi, tail = shape
            verb = atoms[oi - 1]
            assert isinstance(verb, VerbHead)
            obj = atoms[oi]
            fronted: list[MAtom] = _inline([obj], gaps_active)
            rest: list[MAtom] = []
            if len(tail) >= 2 and isinstance(tail[0], PrepLiteral) and isinstance(tail[1], SlotRef):
                fronted.extend(_inline(tail[:2], gaps_active))
                rest = _inline(tail[2:], gaps_active)
            else:
                rest = _inline(tail, gaps_active)
            if rest:
                warn("passive", "passive licensed but pattern has extra material after the complement")
            else:
                variants.append(
                    VariantPattern(
                        "passive",
                        tuple(
                            fronted
                            + [MWord("be"), MWord(verb.lemma, role="verb", participle=True)]
                            + [MOpt((MWord("by"), MSlot(subject.name)))]
                        ),
                        licensed_by="passivization",
                    )
                )

    # dative: V N1 object, for verb + object + P:to + N1 patterns
    if _plus(features, "dative-shift"):
        ok = False
        if shape is not None:
            subject, _vi, oi, tail = shape
            if (
                len(tail) == 2
                and isinstance(tail[0], PrepLiteral)
                and tail[0].word == "to"
                and isinstance(tail[1], SlotRef)
            ):
                verb = atoms[oi - 1]
                assert isinstance(verb, VerbHead)
                prefix: list[MAtom] = [MSlot(subject.name)] if subject else []
                variants.append(
                    VariantPattern(
                        "dative",
                        tuple(
                            prefix
                            + [MWord(verb.lemma, role="verb"), MSlot(tail[1].name)]
                            + _inline([atoms[oi]], gaps_active)
                        ),
                        licensed_by="dative-shift",
                    )
                )
                ok = True
        if not ok:
            warn("dative", "dative shift licensed but pattern is not verb + fixed object + to + slot")

    # causative-v: a causer subject, the causative verb, the patient,
    # then the prepositional body. Only meaningful for PP entries.
    caus = features.get("causative-verbs", UNKNOWN)
    if caus.is_valued:
        if pos != "PP":
            warn("causative", "causative verbs recorded but entry is not a prepositional phrase")
        else:
            used = set(pattern.slot_names())
            if CAUSER_SLOT in used or "N0" in used:
                warn("causative", f"pattern already uses {CAUSER_SLOT} or N0; causative skipped")
            else:
                body = _inline(atoms, gaps_active)
                if body and isinstance(body[0], MWord) and body[0].role == "prep":
                    alt = _CAUSATIVE_PREP_ALTERNATION.get(body[0].lemma)
                    if alt:
                        body = [MChoice(alt)] + body[1:]
                for verb in caus.texts:
                    variants.append(
                        VariantPattern(
                            f"causative-{verb}",
                            tuple(
                                [MSlot(CAUSER_SLOT), MWord(verb, role="verb"), MSlot("N0")]
                                + body
                            ),
                            licensed_by="causative-verbs",
                        )
                    )

    # verbless: the noun phrase left behind when the verb goes
    if _plus(features, "verb-removable"):
        if pattern.verb_head() is None:
            warn("verbless", "verb marked removable but pattern has no verb head")
        else:
            rest = list(atoms)
            if rest and isinstance(rest[0], SlotRef):
                rest = rest[1:]
            rest = [a for a in rest if not isinstance(a, VerbHead)]
            if rest:
                variants.append(
                    VariantPattern(
                        "verbless",
                        tuple(_inline(rest, gaps_active)),
                        licensed_by="verb-removable",
                    )
                )
            else:
                warn("verbless", "nothing left after removing the verb")

    return CompileResult(tuple(variants), tuple(warnings))


def compile_entry(entry) -> CompileResult:
    """Convenience wrapper over anything with pattern/features/pos."""
    pattern = parse_pattern(entry.pattern, pos=entry.pos.value)
    return compile_variants(pattern, entry.features, entry.pos.value)


# ---------------------------------------------------------------------------
# Matching

@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str


@dataclass(frozen=True)
class MatchConfig:
    max_slot_len: int = 5
    max_gap: int = 2
    # lemma -> set of surface forms; identity is always implied
    inflections: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def word_matches(self, lemma: str, token: Token) -> bool:
        want = lemma.casefold()
        if token.lemma.casefold() == want or token.surface.casefold() == want:
            return True
        return token.surface.casefold() in self.inflections.get(want, _EMPTY)


_EMPTY: frozenset[str] = frozenset()


def load_inflections(text: str) -> dict[str, frozenset[str]]:
    """Parse an inflection map: JSON object, lemma -> list of forms."""
    import json

    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise LexiconError("inflection file must be a JSON object")
    out: dict[str, frozenset[str]] = {}
    for lemma, forms in doc.items():
        if not isinstance(forms, list) or not all(isinstance(f, str) for f in forms):
            raise LexiconError(f"inflection entry for {lemma!r} must be a list of strings")
        out[lemma.casefold()] = frozenset(f.casefold() for f in forms)
    return out


def parse_corpus(text: str) -> list[list[Token]]:
    """One sentence per line; token is `surface` or `surface/lemma`."""
    docs: list[list[Token]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        toks = []
        for piece in line.split():
            if "/" in piece[1:]:
                surface, _, lemma = piece.rpartition("/")
                toks.append(Token(surface, lemma))
            else:
                toks.append(Token(piece, piece))
        docs.append(toks)
    return docs


@dataclass(frozen=True)
class RawMatch:
    variant_id: str
    start: int
    end: int
    bindings: tuple[tuple[str, tuple[int, int]], ...]


@dataclass(frozen=True)
class MatchSpan:
    doc_index: int
    entry_id: str
    variant_id: str
    start: int
    end: int
    bindings: tuple[tuple[str, tuple[int, int]], ...]


def _atom_matches_token(atom: MWord | MChoice, token: Token, cfg: MatchConfig) -> bool:
    if isinstance(atom, MWord):
        return cfg.word_matches(atom.lemma, token)
    return any(cfg.word_matches(o, token) for o in atom.options)


def _next_required_literal(atoms: Sequence[MAtom], idx: int) -> MWord | MChoice | None:
    for a in atoms[idx:]:
        if isinstance(a, (MWord, MChoice)):
            return a
        if isinstance(a, (MOpt, MGap, MSlot)):
            continue
    return None


def _find_parses(
    atoms: tuple[MAtom, ...],
    doc: Sequence[Token],
    start: int,
    cfg: MatchConfig,
) -> list[tuple[int, tuple[tuple[str, tuple[int, int]], ...]]]:
    """All (end, bindings) for a parse of atoms beginning at start.

    One representative binding per end position, first found in a fixed
    exploration order (slot and gap lengths ascending, optional groups
    absent before present).
    """
    results: dict[int, tuple] = {}

    def go(atoms: tuple[MAtom, ...], i: int, pos: int, bind: tuple) -> None:
        if i == len(atoms):
            if pos not in results:
                results[pos] = bind
            return
        a = atoms[i]
        if isinstance(a, (MWord, MChoice)):
            if pos < len(doc) and _atom_matches_token(a, doc[pos], cfg):
                go(atoms, i + 1, pos + 1, bind)
        elif isinstance(a, MGap):
            limit = cfg.max_gap if a.active else 0
            for n in range(0, min(limit, len(doc) - pos) + 1):
                go(atoms, i + 1, pos + n, bind)
        elif isinstance(a, MSlot):
            stop = _next_required_literal(atoms, i + 1)
            for n in range(1, min(cfg.max_slot_len, len(doc) - pos) + 1):
                if stop is not None and _atom_matches_token(stop, doc[pos + n - 1], cfg):
                    # the slot may not swallow the very literal that
                    # has to follow it
                    break
                go(atoms, i + 1, pos + n, bind + ((a.name, (pos, pos + n)),))
        elif isinstance(a, MOpt):
            go(atoms, i + 1, pos, bind)
            go(a.members + atoms[i + 1 :], 0, pos, bind)
        else:
            raise TypeError(a)

    go(atoms, 0, start, ())
    return sorted(results.items())


def enumerate_matches(
    variants: Sequence[VariantPattern],
    doc: Sequence[Token],
    cfg: MatchConfig,
) -> list[RawMatch]:
    """Every candidate span of every variant, before overlap resolution."""
    out: list[RawMatch] = []
    for variant in variants:
        for start in range(len(doc)):
            for end, bind in _find_parses(variant.atoms, doc, start, cfg):
                if end > start:
                    out.append(RawMatch(variant.variant_id, start, end, bind))
    return out


def _select_spans(candidates: list[RawMatch]) -> list[RawMatch]:
    """Maximal non-crossing subset, leftmost-longest first."""
    chosen: list[RawMatch] = []
    order = {}
    for i, c in enumerate(candidates):
        order.setdefault(c.variant_id, i)
    for cand in sorted(candidates, key=lambda c: (c.start, -(c.end - c.start), order[c.variant_id])):
        if all(cand.end <= c.start or c.end <= cand.start for c in chosen):
            chosen.append(cand)
    return sorted(chosen, key=lambda c: c.start)


def match_corpus(
    compiled: Mapping[str, Sequence[VariantPattern]],
    docs: Sequence[Sequence[Token]],
    cfg: MatchConfig | None = None,
) -> list[MatchSpan]:
    """Match every entry's variants over every document.

    Per entry and document, overlapping candidate spans resolve
    leftmost-longest; different entries may overlap freely.
    """
    cfg = cfg or MatchConfig()
    spans: list[MatchSpan] = []
    for d, doc in enumerate(docs):
        for entry_id, variants in compiled.items():
            cands = enumerate_matches(variants, doc, cfg)
            for m in _select_spans(cands):
                spans.append(MatchSpan(d, entry_id, m.variant_id, m.start, m.end, m.bindings))
    spans.sort(key=lambda s: (s.doc_index, s.start, s.end, s.entry_id, s.variant_id))
    return spans


# ---------------------------------------------------------------------------
# Oracle enumeration (tests and audits only)

ORACLE_CAP = 100_000


def oracle_enumerate(
    variants: Sequence[VariantPattern],
    slot_fillers: Sequence[Sequence[str]],
    gap_fillers: Sequence[Sequence[str]] = ((),),
    cfg: MatchConfig | None = None,
    cap: int = ORACLE_CAP,
) -> set[tuple[str, ...]]:
    """The exact set of token sequences the variants can generate.

    Slots range over slot_fillers (token sequences, bounded by the slot
    length limit and by the no-following-literal restriction the matcher
    applies); adjunct sites over gap_fillers when active, over the empty
    sequence otherwise.  Deliberately brute force; raises once the result
    would exceed cap.
    """
    cfg = cfg or MatchConfig()
    fillers = [tuple(f) for f in slot_fillers]
    gaps = [tuple(g) for g in gap_fillers]
    for f in fillers:
        if not 1 <= len(f) <= cfg.max_slot_len:
            raise LexiconError(f"slot filler length out of range: {f!r}")
    for g in gaps:
        if len(g) > cfg.max_gap:
            raise LexiconError(f"gap filler longer than the gap limit: {g!r}")

    out: set[tuple[str, ...]] = set()

    def grow(atoms: tuple[MAtom, ...], prefix: tuple[str, ...]) -> None:
        if len(out) > cap:
            raise LexiconError(f"oracle enumeration exceeded {cap} sequences")
        if not atoms:
            out.add(prefix)
            return
        a, rest = atoms[0], atoms[1:]
        if isinstance(a, MWord):
            grow(rest, prefix + (a.lemma,))
        elif isinstance(a, MChoice):
            for o in a.options:
                grow(rest, prefix + (o,))
        elif isinstance(a, MGap):
            if a.active:
                for g in gaps:
                    grow(rest, prefix + g)
            else:
                grow(rest, prefix)
        elif isinstance(a, MSlot):
            stop = _next_required_literal(atoms, 1)
            for f in fillers:
                if stop is not None and any(
                    _atom_matches_token(stop, Token(t, t), cfg) for t in f
                ):
                    continue
                grow(rest, prefix + f)
        elif isinstance(a, MOpt):
            grow(rest, prefix)
            grow(a.members + rest, prefix)
        else:
            raise TypeError(a)

    for variant in variants:
        grow(variant.atoms, ())
    return out
