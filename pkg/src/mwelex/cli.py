"""Command line front end.

Exit codes: 0 for a clean run, 1 when the command found something (a
validation error, a cross-check inconsistency, a lossy conversion),
2 for unusable input (bad table file, bad pattern, bad flags).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .classify import (
    ClassLabel,
    ClassReport,
    Unclassifiable,
    classify_lexicon,
    cross_check_lexicon,
)
from .diagnostics import LexiconError, Severity
from .interop import (
    audit_round_trip,
    export_extended,
    export_feature_list,
    import_extended,
    import_feature_list,
)
from .model import Table, merge_lexicon, parse_table, serialize_table, validate_table
from .patterns import (
    MatchConfig,
    compile_entry,
    load_inflections,
    match_corpus,
    parse_corpus,
)
from .registry import FeatureKind, FeatureRegistry, registry_from_json, standard_registry
from .stats import (
    KappaResult,
    Undefined,
    cohen_kappa,
    correlation_matrix,
    joint_judgments,
    reproducibility_report,
)


def _load_registry(args) -> FeatureRegistry:
    path = args.registry or os.environ.get("MWELEX_REGISTRY")
    if not path or path == "builtin":
        return standard_registry(language_has_copula=args.language_has_copula)
    with open(path, encoding="utf-8") as fh:
        return registry_from_json(fh.read())


def _load_table(path: str, registry: FeatureRegistry) -> Table:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        return import_extended(text, registry)
    return parse_table(text, registry, filename=os.path.basename(path))


def _load_tables(paths: Sequence[str], registry: FeatureRegistry) -> list[Table]:
    return [_load_table(p, registry) for p in paths]


def _fmt(x: float | Undefined, digits: int = 6) -> str:
    if isinstance(x, Undefined):
        return f"undefined({x.reason})"
    return f"{x:.{digits}f}"


# ---------------------------------------------------------------------------
# Commands

def cmd_validate(args) -> int:
    registry = _load_registry(args)
    violations = []
    for table in _load_tables(args.tables, registry):
        violations.extend(validate_table(table, registry))
    for v in violations:
        print(v.render())
    errors = sum(1 for v in violations if v.severity is Severity.ERROR)
    warnings = len(violations) - errors
    print(f"{errors} errors, {warnings} warnings")
    return 1 if errors else 0


def _outcome_cells(outcome) -> tuple[str, str]:
    if isinstance(outcome, ClassLabel):
        return outcome.leaf.value, " ".join(f"{f}={t}" for f, t in outcome.path)
    return "Unclassifiable", f"{outcome.blocking_feature} {outcome.reason}"


def _print_class_report(report: ClassReport, fmt: str) -> None:
    if fmt == "json":
        doc = {
            "tree": report.tree,
            "total": report.total,
            "classified": report.classified,
            "counts": dict(sorted(report.counts.items())),
            "rows": [
                {
                    "table": r.table_id,
                    "entry": r.entry_id,
                    "leaf": _outcome_cells(r.outcome)[0],
                    "detail": _outcome_cells(r.outcome)[1],
                }
                for r in report.rows
            ],
        }
        print(json.dumps(doc, indent=2, ensure_ascii=False))
        return
    print("table\tentry\tleaf\tdetail")
    for r in report.rows:
        leaf, detail = _outcome_cells(r.outcome)
        print(f"{r.table_id}\t{r.entry_id}\t{leaf}\t{detail}")
    for name in sorted(report.counts):
        print(f"# {name}\t{report.counts[name]}\t{report.percentage(name):.1f}%")


def cmd_classify(args) -> int:
    registry = _load_registry(args)
    lexicon = merge_lexicon(registry, _load_tables(args.tables, registry))
    report = classify_lexicon(
        lexicon, registry, args.tree, language_has_copula=args.language_has_copula
    )
    _print_class_report(report, args.format)
    if args.figures:
        from .figures import save_leaf_distribution

        out = save_leaf_distribution(
            report, os.path.join(args.figures, f"classes-{args.tree}.png")
        )
        print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_xcheck(args) -> int:
    registry = _load_registry(args)
    lexicon = merge_lexicon(registry, _load_tables(args.tables, registry))
    rows = cross_check_lexicon(
        lexicon, registry, language_has_copula=args.language_has_copula
    )
    bad = 0
    print("table\tentry\tcoarse\tsubdivided\tconsistent")
    for r in rows:
        first, _ = _outcome_cells(r.first)
        second, _ = _outcome_cells(r.second)
        status = "-" if r.consistent is None else str(r.consistent).lower()
        print(f"{r.table_id}\t{r.entry_id}\t{first}\t{second}\t{status}")
        if r.consistent is False:
            bad += 1
    skipped = sum(1 for r in rows if r.consistent is None)
    print(f"# {bad} inconsistent, {skipped} skipped, {len(rows)} entries")
    return 1 if bad else 0


def _binary_features(table: Table, registry: FeatureRegistry) -> list[str]:
    stored: set[str] = set(table.defining_features)
    for e in table.entries:
        stored.update(e.features)
    return [
        fid
        for fid in registry.sort_features(stored)
        if registry[fid].kind is FeatureKind.BINARY
    ]


def cmd_stats_corr(args) -> int:
    registry = _load_registry(args)
    table = _load_table(args.table, registry)
    fids = args.features or _binary_features(table, registry)
    for fid in fids:
        if fid not in registry:
            raise LexiconError(f"unknown feature {fid!r}")
    matrix = correlation_matrix(table, fids)
    print("feature\t" + "\t".join(matrix.feature_ids))
    for i, fid in enumerate(matrix.feature_ids):
        cells = "\t".join(_fmt(c) for c in matrix.cells[i])
        print(f"{fid}\t{cells}")
    if args.figures:
        from .figures import save_correlation_heatmap

        out = save_correlation_heatmap(
            matrix, os.path.join(args.figures, "correlation.png")
        )
        print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_stats_agree(args) -> int:
    registry = _load_registry(args)
    a = _load_table(args.table_a, registry)
    b = _load_table(args.table_b, registry)
    fids = args.features or sorted(
        set(_binary_features(a, registry)) & set(_binary_features(b, registry))
    )
    print("feature\tn\traw\tkappa")
    for fid in fids:
        ja, jb = joint_judgments(a, b, fid)
        res = cohen_kappa(ja, jb)
        if isinstance(res, KappaResult):
            print(f"{fid}\t{res.n_joint}\t{res.raw_agreement:.6f}\t{res.kappa:.6f}")
        else:
            print(f"{fid}\t0\t-\t{_fmt(res)}")
    return 0


def cmd_report_repro(args) -> int:
    registry = _load_registry(args)
    copies = _load_tables(args.tables, registry)
    shared = set(_binary_features(copies[0], registry))
    for t in copies[1:]:
        shared &= set(_binary_features(t, registry))
    fids = args.features or registry.sort_features(shared)
    report = reproducibility_report(
        copies,
        fids,
        abandon_below=args.abandon_below,
        review_below=args.review_below,
    )
    print("feature\tmean_kappa\tverdict")
    for fa in report.agreements:
        print(f"{fa.feature_id}\t{_fmt(fa.mean_kappa)}\t{fa.verdict}")
    if args.figures:
        from .figures import save_kappa_bars

        out = save_kappa_bars(report, os.path.join(args.figures, "reproducibility.png"))
        print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_convert(args) -> int:
    registry = _load_registry(args)
    table = _load_table(args.table, registry)
    if args.to == "feature-list":
        text = export_feature_list(table, registry)
    elif args.to == "extended":
        text = export_extended(table, registry)
    else:
        text = serialize_table(table, registry)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_import(args) -> int:
    registry = _load_registry(args)
    with open(args.json_file, encoding="utf-8") as fh:
        text = fh.read()
    table = import_feature_list(text, registry, table_id=args.table_id)
    sys.stdout.write(serialize_table(table, registry))
    return 0


def cmd_loss(args) -> int:
    registry = _load_registry(args)
    table = _load_table(args.table, registry)
    report = audit_round_trip(table, registry)
    for cell in report.lost:
        print(f"{cell.entry_id}\t{cell.feature_id}\t{cell.token}\t{cell.kind}")
    minus = len(report.lost_by_kind("minus"))
    unknown = len(report.lost_by_kind("unknown"))
    print(
        f"# {report.total_cells} cells, {report.kept_cells} kept, "
        f"{minus} minus lost, {unknown} unknown lost"
    )
    return 0 if report.lossless else 1


def cmd_compile(args) -> int:
    registry = _load_registry(args)
    table = _load_table(args.table, registry)
    entries = table.entries
    if args.entry:
        entries = tuple(e for e in entries if e.entry_id in set(args.entry))
        missing = set(args.entry) - {e.entry_id for e in entries}
        if missing:
            raise LexiconError(f"no such entries: {sorted(missing)}")
    from .model import materialize_entry
    from .patterns import render_matcher_atoms

    for e in entries:
        result = compile_entry(materialize_entry(table, e, registry))
        for v in result.variants:
            print(f"{e.entry_id}\t{v.variant_id}\t{render_matcher_atoms(v.atoms)}")
        for w in result.warnings:
            print(f"{e.entry_id}: {w.variant_id}: {w.message}", file=sys.stderr)
    return 0


def cmd_match(args) -> int:
    registry = _load_registry(args)
    table = _load_table(args.table, registry)
    with open(args.corpus, encoding="utf-8") as fh:
        docs = parse_corpus(fh.read())
    inflections = {}
    if args.inflections:
        with open(args.inflections, encoding="utf-8") as fh:
            inflections = load_inflections(fh.read())
    cfg = MatchConfig(
        max_slot_len=args.max_slot_len, max_gap=args.max_gap, inflections=inflections
    )
    from .model import materialize_entry

    compiled = {}
    for e in table.entries:
        result = compile_entry(materialize_entry(table, e, registry))
        compiled[e.entry_id] = result.variants
        for w in result.warnings:
            print(f"{e.entry_id}: {w.variant_id}: {w.message}", file=sys.stderr)
    spans = match_corpus(compiled, docs, cfg)
    print("doc\tstart\tend\tentry\tvariant\ttext")
    for s in spans:
        text = " ".join(t.surface for t in docs[s.doc_index][s.start : s.end])
        print(f"{s.doc_index}\t{s.start}\t{s.end}\t{s.entry_id}\t{s.variant_id}\t{text}")
    print(f"# {len(spans)} spans over {len(docs)} documents")
    return 0


# ---------------------------------------------------------------------------
# Argument wiring

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwelex",
        description="lexicon-grammar tables for multiword expressions",
    )
    parser.add_argument(
        "--registry",
        help="feature registry JSON, or 'builtin' (default; env MWELEX_REGISTRY)",
    )
    parser.add_argument(
        "--language-has-copula",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="whether the described language has a copular verb",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check tables; exit 1 on errors")
    p.add_argument("tables", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="run a decision tree over tables")
    p.add_argument("tables", nargs="+")
    p.add_argument("--tree", choices=("coarse", "subdivided"), default="coarse")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--figures", metavar="DIR", help="also render figure files")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("xcheck", help="compare both trees; exit 1 on disagreement")
    p.add_argument("tables", nargs="+")
    p.set_defaults(func=cmd_xcheck)

    p = sub.add_parser("stats-corr", help="feature correlation matrix for one table")
    p.add_argument("table")
    p.add_argument("--features", nargs="+")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_stats_corr)

    p = sub.add_parser("stats-agree", help="kappa between two copies of a table")
    p.add_argument("table_a")
    p.add_argument("table_b")
    p.add_argument("--features", nargs="+")
    p.set_defaults(func=cmd_stats_agree)

    p = sub.add_parser("report-repro", help="per-feature verdicts across copies")
    p.add_argument("tables", nargs="+")
    p.add_argument("--features", nargs="+")
    p.add_argument("--abandon-below", type=float, default=0.4)
    p.add_argument("--review-below", type=float, default=0.6)
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_report_repro)

    p = sub.add_parser("convert", help="rewrite a table in another format")
    p.add_argument("table")
    p.add_argument("--to", choices=("feature-list", "extended", "table"), default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("import", help="read a feature-list JSON into a table")
    p.add_argument("json_file")
    p.add_argument("--table-id", default="imported")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("loss", help="audit a lossy conversion; exit 1 when lossy")
    p.add_argument("table")
    p.set_defaults(func=cmd_loss)

    p = sub.add_parser("compile", help="print licensed variant patterns")
    p.add_argument("table")
    p.add_argument("--entry", nargs="+")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("match", help="match variants over a corpus")
    p.add_argument("table")
    p.add_argument("corpus")
    p.add_argument("--inflections")
    p.add_argument("--max-slot-len", type=int, default=5)
    p.add_argument("--max-gap", type=int, default=2)
    p.set_defaults(func=cmd_match)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LexiconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
