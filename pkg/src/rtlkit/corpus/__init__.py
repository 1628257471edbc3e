"""Verilog corpus curation: segmentation, filtering, dedup, syntax checks."""

from .filter import FilterDecision, FilterReason, quality_filter
from .io import (
    find_verilog_files,
    read_modules,
    segment_tree,
    write_dedup_report,
    write_modules,
)
from .minhash import (
    DedupResult,
    ShingleSignature,
    dedup,
    estimated_jaccard,
    exact_jaccard,
    minhash_signature,
    shingle_set,
)
from .scanning import ScanError, scan
from .segment import VerilogModule, content_id, segment_file
from .syntax import (
    BuiltinSyntaxChecker,
    ExternalSyntaxChecker,
    SyntaxVerdict,
    syntax_check,
)
from .tokenize import declared_identifiers, tokenize

__all__ = [
    "BuiltinSyntaxChecker",
    "DedupResult",
    "ExternalSyntaxChecker",
    "FilterDecision",
    "FilterReason",
    "ScanError",
    "ShingleSignature",
    "SyntaxVerdict",
    "VerilogModule",
    "content_id",
    "declared_identifiers",
    "dedup",
    "estimated_jaccard",
    "exact_jaccard",
    "find_verilog_files",
    "minhash_signature",
    "quality_filter",
    "read_modules",
    "scan",
    "segment_file",
    "segment_tree",
    "shingle_set",
    "syntax_check",
    "tokenize",
    "write_dedup_report",
    "write_modules",
]
