"""mwelex: lexicon-grammar tables for multiword expressions.

Tri-state feature vectors over MWE entries, tables with defining
features, two classification trees with a consistency cross-check,
reproducibility statistics, conversion to and from flat lexicon
formats with an explicit loss audit, and surface-variant pattern
compilation and matching.
"""

from .classify import (
    CONSISTENT_SUBDIVIDED,
    ClassLabel,
    Fig1Leaf,
    Fig2Leaf,
    Unclassifiable,
    classify_coarse,
    classify_lexicon,
    classify_subdivided,
    cross_check,
    cross_check_lexicon,
)
from .diagnostics import (
    LexiconError,
    PatternError,
    Severity,
    TableFormatError,
    Violation,
)
from .interop import (
    LossReport,
    audit_round_trip,
    export_extended,
    export_feature_list,
    import_extended,
    import_feature_list,
    loss_report,
)
from .model import (
    Entry,
    Lexicon,
    PartOfSpeech,
    Table,
    effective_features,
    materialize_entry,
    merge_lexicon,
    parse_table,
    serialize_table,
    validate_lexicon,
    validate_table,
)
from .patterns import (
    CompileResult,
    EntryPattern,
    MatchConfig,
    Token,
    compile_entry,
    compile_variants,
    enumerate_matches,
    match_corpus,
    oracle_enumerate,
    parse_corpus,
    parse_pattern,
)
from .registry import (
    FeatureDef,
    FeatureKind,
    FeatureRegistry,
    ImplicationRule,
    check_implications,
    derive_feature_map,
    registry_from_json,
    registry_to_json,
    standard_registry,
)
from .stats import (
    KappaResult,
    Undefined,
    binary_column,
    cohen_kappa,
    correlation_matrix,
    joint_judgments,
    pearson_pair,
    reproducibility_report,
)
from .values import (
    MINUS,
    PLUS,
    UNKNOWN,
    FeatureValue,
    kleene_and,
    literal,
    literal_set,
    parse_value_token,
)

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Absolute path of one of the packaged sample data files."""
    from importlib.resources import files

    return str(files("mwelex").joinpath("data", name))

__all__ = [
    "CONSISTENT_SUBDIVIDED",
    "ClassLabel",
    "CompileResult",
    "Entry",
    "EntryPattern",
    "FeatureDef",
    "FeatureKind",
    "FeatureRegistry",
    "FeatureValue",
    "Fig1Leaf",
    "Fig2Leaf",
    "ImplicationRule",
    "KappaResult",
    "Lexicon",
    "LexiconError",
    "LossReport",
    "MatchConfig",
    "MINUS",
    "PartOfSpeech",
    "PatternError",
    "PLUS",
    "Severity",
    "Table",
    "TableFormatError",
    "Token",
    "Unclassifiable",
    "Undefined",
    "UNKNOWN",
    "Violation",
    "audit_round_trip",
    "check_implications",
    "classify_coarse",
    "classify_lexicon",
    "classify_subdivided",
    "binary_column",
    "cohen_kappa",
    "compile_entry",
    "compile_variants",
    "correlation_matrix",
    "cross_check",
    "cross_check_lexicon",
    "data_path",
    "derive_feature_map",
    "effective_features",
    "enumerate_matches",
    "export_extended",
    "export_feature_list",
    "import_extended",
    "import_feature_list",
    "joint_judgments",
    "kleene_and",
    "literal",
    "literal_set",
    "loss_report",
    "match_corpus",
    "materialize_entry",
    "merge_lexicon",
    "oracle_enumerate",
    "parse_corpus",
    "parse_pattern",
    "parse_table",
    "parse_value_token",
    "pearson_pair",
    "registry_from_json",
    "registry_to_json",
    "reproducibility_report",
    "serialize_table",
    "standard_registry",
    "validate_lexicon",
    "validate_table",
]
