"""Extraction of individual Verilog modules from raw source files."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .scanning import KEYWORD_RE, ScanError, comment_line_flags, scan


def content_id(source_text: str) -> str:
    """Stable 128-bit content hash over trailing-whitespace-stripped lines."""
    normalized = "\n".join(line.rstrip() for line in source_text.split("\n"))
    return hashlib.blake2b(normalized.encode("utf-8"), digest_size=16).hexdigest()


@dataclass
class VerilogModule:
    id: str
    source_text: str
    origin_path: str
    line_span: tuple[int, int]
    total_lines: int
    comment_lines: int
    comment_ratio: float
    structurally_complete: bool

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "source_text": self.source_text,
            "origin_path": self.origin_path,
            "line_span": list(self.line_span),
            "total_lines": self.total_lines,
            "comment_lines": self.comment_lines,
            "comment_ratio": self.comment_ratio,
            "structurally_complete": self.structurally_complete,
        }
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerilogModule":
        return cls(
            id=d["id"],
            source_text=d["source_text"],
            origin_path=d["origin_path"],
            line_span=(d["line_span"][0], d["line_span"][1]),
            total_lines=d["total_lines"],
            comment_lines=d["comment_lines"],
            comment_ratio=d["comment_ratio"],
            structurally_complete=d["structurally_complete"],
        )


@dataclass
class _OpenSpan:
    start: int
    module_kw: int = 1
    endmodule_kw: int = 0
    depth: int = 1
    keywords: list[str] = field(default_factory=list)


def segment_file(file_text: str, origin_path: str) -> list[VerilogModule]:
    """Split a Verilog file into its top-level module ... endmodule spans.

    Keywords inside comments or string literals never open or close a
    span. A module left open at end of file is still emitted (marked
    structurally incomplete) so the quality filter can account for it.

    Raises ScanError for unterminated comments/strings and for an
    endmodule with no matching module.
    """
    result = scan(file_text)
    flags = comment_line_flags(result)
    code = result.code_view()

    spans: list[tuple[int, int, bool]] = []  # (start, end, complete)
    open_span: _OpenSpan | None = None
    for match in KEYWORD_RE.finditer(code):
        kw = match.group(1)
        if kw == "module":
            if open_span is None:
                open_span = _OpenSpan(start=match.start())
            else:
                open_span.module_kw += 1
                open_span.depth += 1
        else:
            if open_span is None:
                line = result.line_of(match.start())
                raise ScanError(f"endmodule without open module on line {line}")
            open_span.endmodule_kw += 1
            open_span.depth -= 1
            if open_span.depth == 0:
                complete = open_span.module_kw == 1 and open_span.endmodule_kw == 1
                spans.append((open_span.start, match.end(), complete))
                open_span = None
    if open_span is not None:
        spans.append((open_span.start, len(file_text), False))

    modules: list[VerilogModule] = []
    for start, end, complete in spans:
        first_line = result.line_of(start)
        last_line = result.line_of(max(start, end - 1))
        total = last_line - first_line + 1
        n_comment = sum(1 for ln in range(first_line, last_line + 1) if flags[ln - 1])
        source = file_text[start:end]
        modules.append(
            VerilogModule(
                id=content_id(source),
                source_text=source,
                origin_path=origin_path,
                line_span=(first_line, last_line),
                total_lines=total,
                comment_lines=n_comment,
                comment_ratio=n_comment / total,
                structurally_complete=complete,
            )
        )
    return modules
