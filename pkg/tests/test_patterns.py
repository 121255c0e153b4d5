import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwelex import (
    MINUS,
    PLUS,
    MatchConfig,
    PatternError,
    Token,
    compile_variants,
    enumerate_matches,
    literal,
    literal_set,
    match_corpus,
    oracle_enumerate,
    parse_corpus,
    parse_pattern,
)
from mwelex.patterns import (
    AdjunctSite,
    ConstituentGroup,
    FixedWord,
    OptionalGroup,
    SlotRef,
    VerbHead,
    load_inflections,
    render_matcher_atoms,
)


def toks(s):
    return [Token(w, w) for w in s.split()]


# --- parsing ----------------------------------------------------------------

def test_parse_atoms():
    p = parse_pattern("N0 V:deal <a ~ blow> P:to N1", pos="V")
    assert p.atoms[0] == SlotRef("N0")
    assert p.atoms[1] == VerbHead("deal")
    assert p.atoms[2] == ConstituentGroup((FixedWord("a"), AdjunctSite(), FixedWord("blow")))
    assert p.slot_names() == ["N0", "N1"]
    assert p.verb_head() == VerbHead("deal")


def test_serialize_is_canonical():
    src = "  N0   V:beard   <the   lion>  [ P:in his den ]  "
    assert parse_pattern(src).serialize() == "N0 V:beard <the lion> [P:in his den]"


def test_brackets_need_no_spaces():
    p = parse_pattern("N0 V:take <a ~ dip>[P:in N1]")
    assert isinstance(p.atoms[-1], OptionalGroup)


@pytest.mark.parametrize(
    "src,fragment",
    [
        ("", "empty pattern"),
        ("N0 <a <b> c>", "nest"),
        ("N0 [a [b] c]", "nested optional"),
        ("N0 <a", "unclosed"),
        ("N0 a>", "unbalanced"),
        ("N0 ]", "unbalanced"),
        ("<>", "empty constituent"),
        ("[]", "empty optional"),
        ("N0 <N1 word>", "fixed words and adjunct sites"),
        ("N0 N0 V:x", "duplicate slot"),
        ("V:a V:b", "more than one verb head"),
        ("V:", "empty lemma"),
        ("P:", "empty word"),
    ],
)
def test_parse_rejects(src, fragment):
    with pytest.raises(PatternError) as err:
        parse_pattern(src)
    assert fragment in str(err.value)


def test_verbal_entries_need_a_verb_head():
    with pytest.raises(PatternError):
        parse_pattern("N0 word", pos="V")
    parse_pattern("N0 word", pos="N")  # fine for other categories


@st.composite
def patterns(draw):
    words = st.sampled_from(["alpha", "beta", "gamma", "delta"])
    parts = [f"N{draw(st.integers(0, 3))}"]
    seen = {parts[0]}
    parts.append(f"V:{draw(words)}")
    for _ in range(draw(st.integers(0, 3))):
        kind = draw(st.sampled_from(["word", "slot", "prep", "gap", "cgroup", "ogroup"]))
        if kind == "word":
            parts.append(draw(words))
        elif kind == "slot":
            name = f"N{draw(st.integers(4, 9))}"
            if name in seen:
                continue
            seen.add(name)
            parts.append(name)
        elif kind == "prep":
            parts.append(f"P:{draw(words)}")
        elif kind == "gap":
            parts.append("~")
        elif kind == "cgroup":
            parts.append(f"<{draw(words)} ~ {draw(words)}>")
        else:
            parts.append(f"[P:{draw(words)} {draw(words)}]")
    return " ".join(parts)


@settings(max_examples=200)
@given(patterns())
def test_parse_serialize_fixpoint(src):
    p = parse_pattern(src, pos="V")
    assert parse_pattern(p.serialize(), pos="V") == p
    assert p.serialize() == parse_pattern(p.serialize()).serialize()


# --- variant compilation ----------------------------------------------------

def render_all(result):
    return {v.variant_id: render_matcher_atoms(v.atoms) for v in result.variants}


def test_base_requires_optional_content():
    p = parse_pattern("N0 V:beard <the lion> [P:in his den]", pos="V")
    r = compile_variants(p, {}, "V")
    assert render_all(r) == {"base": "N0 V:beard the lion P:in his den"}
    assert r.warnings == ()


def test_gap_active_only_when_licensed():
    p = parse_pattern("N0 V:pull <~ strings>", pos="V")
    off = compile_variants(p, {}, "V")
    on = compile_variants(p, {"adjunct-insertion": PLUS}, "V")
    assert render_all(off)["base"] == "N0 V:pull ~0 strings"
    assert render_all(on)["base"] == "N0 V:pull ~ strings"


def test_drop_optional_variants():
    p = parse_pattern("N0 V:beard <the lion> [P:in his den]", pos="V")
    r = compile_variants(p, {"fixed-constituent-optional": PLUS}, "V")
    assert render_all(r)["drop-optional-1"] == "N0 V:beard the lion"


def test_drop_optional_without_group_warns():
    p = parse_pattern("N0 V:pull <~ strings>", pos="V")
    r = compile_variants(p, {"fixed-constituent-optional": PLUS}, "V")
    assert [w.variant_id for w in r.warnings] == ["drop-optional"]
    assert set(render_all(r)) == {"base"}


def test_drop_slot_variant():
    p = parse_pattern("N0 V:bear <~ comparison> P:to N1", pos="V")
    r = compile_variants(p, {"free-slot-optional": PLUS}, "V")
    assert render_all(r)["drop-slot-1"] == "N0 V:bear ~0 comparison"


def test_drop_slot_needs_trailing_complement():
    p = parse_pattern("N0 V:pull <~ strings>", pos="V")
    r = compile_variants(p, {"free-slot-optional": PLUS}, "V")
    assert [w.variant_id for w in r.warnings] == ["drop-slot"]


def test_passive_shape():
    p = parse_pattern("N0 V:deal <a ~ blow> P:to N1", pos="V")
    r = compile_variants(p, {"passivization": PLUS, "adjunct-insertion": PLUS}, "V")
    assert render_all(r)["passive"] == "a ~ blow P:to N1 be V:deal[part] [by N0]"


def test_passive_without_object_group_warns():
    p = parse_pattern("N0 V:think P:on his feet", pos="V")
    r = compile_variants(p, {"passivization": PLUS}, "V")
    assert [w.variant_id for w in r.warnings] == ["passive"]


def test_dative_shape():
    p = parse_pattern("N0 V:deal <a ~ blow> P:to N1", pos="V")
    r = compile_variants(p, {"dative-shift": PLUS}, "V")
    assert render_all(r)["dative"] == "N0 V:deal N1 a ~0 blow"


def test_dative_needs_to_complement():
    p = parse_pattern("N0 V:take <~ advantage> P:of N1", pos="V")
    r = compile_variants(p, {"dative-shift": PLUS}, "V")
    assert [w.variant_id for w in r.warnings] == ["dative"]


def test_causative_variants_and_preposition_alternation():
    p = parse_pattern("P:in <a ~ jam>")
    r = compile_variants(p, {"causative-verbs": literal_set(["get", "throw"])}, "PP")
    rendered = render_all(r)
    assert rendered["causative-get"] == "N9 V:get N0 (in|into) a ~0 jam"
    assert rendered["causative-throw"] == "N9 V:throw N0 (in|into) a ~0 jam"


def test_causative_keeps_other_prepositions():
    p = parse_pattern("P:on time")
    r = compile_variants(p, {"causative-verbs": literal("keep")}, "PP")
    assert render_all(r)["causative-keep"] == "N9 V:keep N0 P:on time"


def test_causative_on_non_pp_warns():
    p = parse_pattern("N0 V:take <a dip>", pos="V")
    r = compile_variants(p, {"causative-verbs": literal("keep")}, "V")
    assert [w.variant_id for w in r.warnings] == ["causative"]


def test_causative_skips_when_slots_collide():
    p = parse_pattern("P:at N9")
    r = compile_variants(p, {"causative-verbs": literal("keep")}, "PP")
    assert [w.variant_id for w in r.warnings] == ["causative"]
    assert set(render_all(r)) == {"base"}


def test_verbless_variant():
    p = parse_pattern("N0 V:take <~ advantage> P:of N1", pos="V")
    r = compile_variants(p, {"verb-removable": PLUS}, "V")
    assert render_all(r)["verbless"] == "~0 advantage P:of N1"


def test_verbless_needs_a_verb():
    p = parse_pattern("red wine")
    r = compile_variants(p, {"verb-removable": PLUS}, "N")
    assert [w.variant_id for w in r.warnings] == ["verbless"]


def test_minus_and_unknown_license_nothing():
    p = parse_pattern("N0 V:deal <a blow> P:to N1", pos="V")
    for feats in ({}, {"passivization": MINUS}):
        r = compile_variants(p, feats, "V")
        assert set(render_all(r)) == {"base"}
        assert r.warnings == ()


# --- matching ---------------------------------------------------------------

CFG = MatchConfig(max_slot_len=3, max_gap=2)


def variants_for(src, feats, pos="V"):
    return compile_variants(parse_pattern(src, pos=pos), feats, pos).variants


def spans(variants, text, cfg=CFG):
    return [
        (m.variant_id, m.start, m.end)
        for m in enumerate_matches(variants, toks(text), cfg)
    ]


def test_simple_match_with_slots():
    vs = variants_for("N0 V:have <~ pity> P:on N1", {})
    assert ("base", 0, 5) in spans(vs, "john have pity on mary")


def test_slot_length_bounds():
    vs = variants_for("N0 V:have <~ pity> P:on N1", {})
    # a full-width N0 would need 4 tokens; only shorter suffixes match
    got = spans(vs, "a b c d have pity on mary")
    assert got and all(start >= 1 for _, start, _ in got)
    assert ("base", 0, 7) in spans(vs, "a b c have pity on mary")


def test_slot_cannot_swallow_following_literal():
    vs = variants_for("N0 V:have <~ pity> P:on N1", {})
    # N0 may not contain a token matching the verb head
    assert all(s[1] == 1 for s in spans(vs, "x have have pity on mary"))


def test_inactive_gap_matches_zero_tokens():
    vs = variants_for("N0 V:have <~ pity> P:on N1", {})
    assert spans(vs, "john have great pity on mary") == []


def test_active_gap_bounded():
    vs = variants_for("N0 V:have <~ pity> P:on N1", {"adjunct-insertion": PLUS})
    assert ("base", 0, 6) in spans(vs, "john have great pity on mary")
    assert ("base", 0, 7) in spans(vs, "john have very great pity on mary")
    assert spans(vs, "john have really very great pity on mary") == []


def test_inflection_lookup():
    cfg = MatchConfig(inflections={"have": frozenset({"had", "has"})})
    vs = variants_for("N0 V:have <~ pity> P:on N1", {})
    assert [
        m.variant_id for m in enumerate_matches(vs, toks("john had pity on mary"), cfg)
    ] == ["base"]


def test_lemma_column_matches():
    vs = variants_for("N0 V:have <~ pity> P:on N1", {})
    doc = [Token("John", "john"), Token("had", "have"), Token("pity", "pity"),
           Token("on", "on"), Token("Mary", "mary")]
    assert [m.variant_id for m in enumerate_matches(vs, doc, CFG)] == ["base"]


def test_match_is_case_insensitive():
    vs = variants_for("red wine", {}, pos="N")
    assert ("base", 0, 2) in spans(vs, "Red Wine")


def test_bindings_report_slot_spans():
    vs = variants_for("N0 V:have <~ pity> P:on N1", {})
    full = [
        m for m in enumerate_matches(vs, toks("the king have pity on all of us"), CFG)
        if m.start == 0 and m.end == 8
    ]
    assert [dict(m.bindings) for m in full] == [{"N0": (0, 2), "N1": (5, 8)}]


def test_match_corpus_resolves_overlaps_leftmost_longest():
    vs = variants_for("N0 V:take <a ~ dip>", {"verb-removable": PLUS})
    sel = match_corpus({"e": vs}, [toks("they take a dip")], CFG)
    assert [(s.variant_id, s.start, s.end) for s in sel] == [("base", 0, 4)]


def test_match_corpus_keeps_disjoint_spans():
    vs = variants_for("red wine", {}, pos="N")
    sel = match_corpus({"e": vs}, [toks("red wine then more red wine")], CFG)
    assert [(s.start, s.end) for s in sel] == [(0, 2), (4, 6)]


def test_match_corpus_entries_do_not_compete():
    va = variants_for("red wine", {}, pos="N")
    vb = variants_for("wine cellar", {}, pos="N")
    sel = match_corpus({"a": va, "b": vb}, [toks("red wine cellar")], CFG)
    assert {(s.entry_id, s.start, s.end) for s in sel} == {("a", 0, 2), ("b", 1, 3)}


def test_parse_corpus_reads_lemma_annotations():
    docs = parse_corpus("the Dogs/dog bark\n\nplain line\n")
    assert docs[0][1] == Token("Dogs", "dog")
    assert len(docs) == 2


def test_load_inflections_rejects_bad_shapes():
    import pytest as _pytest

    from mwelex import LexiconError

    with _pytest.raises(LexiconError):
        load_inflections('["list"]')
    with _pytest.raises(LexiconError):
        load_inflections('{"be": "was"}')


# --- oracle -----------------------------------------------------------------

def test_oracle_tiny_language():
    vs = variants_for("P:on time", {}, pos="PP")
    assert oracle_enumerate(vs, []) == {("on", "time")}


def test_oracle_respects_slot_constraint():
    vs = variants_for("N0 V:have <pity> P:on N1", {})
    lang = oracle_enumerate(vs, [("x",), ("have",)], cfg=CFG)
    # "have" cannot fill N0: the slot would swallow the verb literal
    assert ("x", "have", "pity", "on", "have") in lang
    assert all(seq[0] != "have" for seq in lang)


def test_oracle_cap():
    import pytest as _pytest

    from mwelex import LexiconError

    vs = variants_for("N0 V:x N4 N5 N6", {})
    fillers = [(w,) for w in "abcdefghijklmnopqrst"]
    with _pytest.raises(LexiconError):
        oracle_enumerate(vs, fillers, cap=1000)


def test_oracle_rejects_oversized_fillers():
    import pytest as _pytest

    from mwelex import LexiconError

    vs = variants_for("N0 V:x", {})
    with _pytest.raises(LexiconError):
        oracle_enumerate(vs, [("a", "b", "c", "d")], cfg=MatchConfig(max_slot_len=2))


def test_matcher_agrees_with_oracle_on_closed_universe():
    feats = {"passivization": PLUS, "verb-removable": PLUS, "adjunct-insertion": PLUS}
    vs = variants_for("N0 V:have <~ pity> P:on N1", feats)
    cfg = MatchConfig(max_slot_len=2, max_gap=1)
    vocab = ["have", "pity", "on", "x"]
    slot_fillers = [s for n in (1, 2) for s in itertools.product(vocab, repeat=n)]
    gap_fillers = [s for n in (0, 1) for s in itertools.product(vocab, repeat=n)]
    lang = oracle_enumerate(vs, slot_fillers, gap_fillers, cfg)

    def full_match(seq):
        doc = [Token(w, w) for w in seq]
        return any(
            m.start == 0 and m.end == len(doc)
            for m in enumerate_matches(vs, doc, cfg)
        )

    assert all(full_match(seq) for seq in lang)
    for n in range(1, 6):
        for seq in itertools.product(vocab, repeat=n):
            assert full_match(seq) == (seq in lang), seq
