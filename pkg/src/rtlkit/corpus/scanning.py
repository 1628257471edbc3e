"""Comment- and string-aware scanning of Verilog source text.

Everything downstream (module extraction, comment statistics, shingle
tokenization, identifier harvesting) needs to know which characters are
code and which sit inside ``//`` comments, ``/* */`` comments, or string
literals. A single linear scan classifies every character once; the
classification is then reused instead of re-lexing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DomainError

CODE = 0
COMMENT = 1
STRING = 2


class ScanError(DomainError):
    """Unterminated comment/string or stray endmodule; names the line."""


# Verilog identifiers may contain $ as well as word characters, so plain \b
# is not a safe keyword boundary.
KEYWORD_RE = re.compile(r"(?<![A-Za-z0-9_$])(endmodule|module)(?![A-Za-z0-9_$])")

IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")


@dataclass
class ScanResult:
    text: str
    kinds: bytes          # per-character CODE / COMMENT / STRING
    line_starts: list[int]

    def line_of(self, pos: int) -> int:
        """1-based line number containing character offset pos."""
        lo, hi = 0, len(self.line_starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.line_starts[mid] <= pos:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1

    def code_view(self) -> str:
        """Text with comment and string characters blanked to spaces."""
        return _blank(self.text, self.kinds, (COMMENT, STRING))

    def comment_stripped(self) -> str:
        """Text with comments blanked to spaces; strings kept."""
        return _blank(self.text, self.kinds, (COMMENT,))


def _blank(text: str, kinds: bytes, drop: tuple[int, ...]) -> str:
    out = list(text)
    for i, k in enumerate(kinds):
        if k in drop and out[i] != "\n":
            out[i] = " "
    return "".join(out)


def scan(text: str) -> ScanResult:
    """Classify every character of text as code, comment, or string.

    Raises ScanError for an unterminated block comment or string literal,
    naming the line where the construct opened.
    """
    n = len(text)
    kinds = bytearray(n)
    line_starts = [0]
    i = 0
    line = 1
    while i < n:
        ch = text[i]
        if ch == "\n":
            kinds[i] = CODE
            i += 1
            line += 1
            line_starts.append(i)
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                kinds[i] = COMMENT
                i += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "*":
            start_line = line
            end = text.find("*/", i + 2)
            if end == -1:
                raise ScanError(f"unterminated block comment opened on line {start_line}")
            for j in range(i, end + 2):
                kinds[j] = COMMENT
                if text[j] == "\n":
                    line += 1
                    line_starts.append(j + 1)
            i = end + 2
            continue
        if ch == '"':
            start_line = line
            kinds[i] = STRING
            j = i + 1
            while j < n:
                if text[j] == "\\" and j + 1 < n and text[j + 1] != "\n":
                    kinds[j] = STRING
                    kinds[j + 1] = STRING
                    j += 2
                    continue
                if text[j] == "\n":
                    raise ScanError(f"unterminated string literal on line {start_line}")
                kinds[j] = STRING
                if text[j] == '"':
                    break
                j += 1
            else:
                raise ScanError(f"unterminated string literal on line {start_line}")
            i = j + 1
            continue
        kinds[i] = CODE
        i += 1
    return ScanResult(text=text, kinds=bytes(kinds), line_starts=line_starts)


def comment_line_flags(result: ScanResult) -> list[bool]:
    """Per-line flag: True when the line starts inside or with a comment.

    A line counts as a comment line when its first non-whitespace character
    is comment text; whitespace-only lines count when they sit inside a
    block comment.
    """
    text = result.text
    kinds = result.kinds
    flags: list[bool] = []
    for start in result.line_starts:
        end = text.find("\n", start)
        if end == -1:
            end = len(text)
        flag = False
        probe = None
        for j in range(start, end):
            if not text[j].isspace():
                probe = j
                break
        if probe is not None:
            flag = kinds[probe] == COMMENT
        elif start < len(kinds):
            # blank line: counts only when it sits inside a block comment
            flag = kinds[start] == COMMENT
        flags.append(flag)
    return flags
