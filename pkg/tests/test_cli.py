import json

from mwelex import data_path
from mwelex.cli import main

DEMO = str(data_path("demo_lexicon.tsv"))
SVC = str(data_path("svc_verbs.tsv"))
JUDGES = [str(data_path(f"judge_{j}.tsv")) for j in "abc"]
OPS = str(data_path("ops_judgments.tsv"))
CORPUS = str(data_path("corpus.txt"))
INFLECTIONS = str(data_path("inflections.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_clean_tables(capsys):
    code, out, _ = run(capsys, "validate", DEMO, SVC)
    assert code == 0
    assert "0 errors" in out


def test_validate_reports_errors(capsys, tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text(
        "#table broken\n"
        "id\tlemma\tpattern\tpos\tlexicalized\n"
        "x\tx y\tx y\tN\tbanana\n"
    )
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 2  # malformed value is a parse error, not a violation
    bad2 = tmp_path / "bad2.tsv"
    bad2.write_text(
        "#table broken\n"
        "id\tlemma\tpattern\tpos\tpred-core-pos\n"
        "x\tx y\tx y\tN\t=banana\n"
    )
    code, out, _ = run(capsys, "validate", str(bad2))
    assert code == 1
    assert "bad-literal" in out and "1 errors" in out


def test_classify_tsv(capsys):
    code, out, _ = run(capsys, "classify", DEMO, "--tree", "subdivided")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "table\tentry\tleaf\tdetail"
    body = [ln for ln in lines[1:] if not ln.startswith("#")]
    assert len(body) == 24
    assert any("on-time\tCopularPredPP" in ln for ln in body)
    assert "# VerbalIdiom\t9\t37.5%" in lines


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", DEMO, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["tree"] == "coarse"
    assert doc["counts"]["SupportVerbConstruction"] == 3
    rows = {r["entry"]: r for r in doc["rows"]}
    assert rows["in-the-final-analysis"]["leaf"] == "MultiwordAdverbial"


def test_classify_merges_tables(capsys):
    code, out, _ = run(capsys, "classify", DEMO, SVC)
    assert code == 0
    assert "# SupportVerbConstruction\t6" in out


def test_classify_figures(capsys, tmp_path):
    code, _, err = run(capsys, "classify", DEMO, "--figures", str(tmp_path))
    assert code == 0
    assert (tmp_path / "classes-coarse.png").exists()
    assert "wrote" in err


def test_xcheck_clean(capsys):
    code, out, _ = run(capsys, "xcheck", DEMO)
    assert code == 0
    assert "# 0 inconsistent, 0 skipped, 24 entries" in out


def test_stats_corr(capsys):
    code, out, _ = run(capsys, "stats-corr", OPS,
                       "--features", "passivization", "pseudocleft", "svc")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "feature\tpassivization\tpseudocleft\tsvc"
    assert "undefined(too-few-pairs)" in out
    assert "1.000000" in out


def test_stats_agree(capsys):
    code, out, _ = run(capsys, "stats-agree", JUDGES[0], JUDGES[1],
                       "--features", "svc", "verb-removable")
    assert code == 0
    assert any(ln.startswith("svc\t") for ln in out.splitlines())


def test_report_repro(capsys, tmp_path):
    code, out, _ = run(capsys, "report-repro", *JUDGES, "--figures", str(tmp_path))
    assert code == 0
    verdicts = {
        parts[0]: parts[2]
        for ln in out.splitlines()
        if len(parts := ln.split("\t")) == 3 and parts[0] != "feature"
    }
    assert verdicts["svc"] == "Keep"
    assert verdicts["compulsory-coref"] == "Abandon"
    assert (tmp_path / "reproducibility.png").exists()


def test_convert_and_import_round_trip(capsys, tmp_path):
    out_json = tmp_path / "svc.json"
    code, _, _ = run(capsys, "convert", SVC, "--to", "feature-list",
                     "--out", str(out_json))
    assert code == 0
    doc = json.loads(out_json.read_text())
    assert len(doc["entries"]) == 3

    code, out, _ = run(capsys, "import", str(out_json), "--table-id", "svc-copy")
    assert code == 0
    assert out.startswith("#table svc-copy")

    ext = tmp_path / "svc_ext.json"
    code, _, _ = run(capsys, "convert", SVC, "--to", "extended", "--out", str(ext))
    assert code == 0
    code, out, _ = run(capsys, "convert", str(ext), "--to", "table")
    assert code == 0
    assert "#def svc +" in out and "#def copular-svc -" in out


def test_loss_flags_lossy_tables(capsys):
    code, out, _ = run(capsys, "loss", DEMO)
    assert code == 1
    assert "minus" in out and "# " in out


def test_loss_passes_lossless_input(capsys, tmp_path):
    t = tmp_path / "pos.tsv"
    t.write_text(
        "#table pos-only\n"
        "id\tlemma\tpattern\tpos\tlexicalized\n"
        "x\tred wine\tred wine\tN\t+\n"
    )
    code, out, _ = run(capsys, "loss", str(t))
    assert code == 0
    assert "# 1 cells, 1 kept, 0 minus lost, 0 unknown lost" in out


def test_compile_lists_variants(capsys):
    code, out, _ = run(capsys, "compile", DEMO, "--entry", "deal-a-blow-to")
    assert code == 0
    got = {ln.split("\t")[1] for ln in out.splitlines() if ln.startswith("deal-a-blow-to")}
    assert got == {"base", "passive", "dative"}


def test_compile_unknown_entry(capsys):
    code, _, err = run(capsys, "compile", DEMO, "--entry", "no-such-entry")
    assert code == 2
    assert "error:" in err


def test_match_over_packaged_corpus(capsys):
    code, out, _ = run(capsys, "match", DEMO, CORPUS,
                       "--inflections", INFLECTIONS)
    assert code == 0
    assert "# 31 spans over 32 documents" in out
    assert any(ln.startswith("8\t") and "passive" in ln for ln in out.splitlines())


def test_missing_file_is_reported(capsys):
    code, _, err = run(capsys, "validate", "/does/not/exist.tsv")
    assert code == 2
    assert "error:" in err


def test_registry_file_flag(capsys, tmp_path, registry):
    from mwelex.registry import registry_to_json

    reg_file = tmp_path / "reg.json"
    reg_file.write_text(registry_to_json(registry))
    code, _, _ = run(capsys, "--registry", str(reg_file), "validate", DEMO)
    assert code == 0
