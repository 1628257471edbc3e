"""Syntax validation of extracted modules.

Two interchangeable checkers: a built-in structural validator (balanced
begin/end and bracket pairs, sane module header) and an adapter that
shells out to an external parser via a command template.
"""

from __future__ import annotations

import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path

from ..errors import InfrastructureError
from .scanning import IDENT_RE, scan
from .segment import VerilogModule
from .tokenize import TOKEN_RE


@dataclass
class SyntaxVerdict:
    valid: bool
    diagnostic: str | None = None


_PAIRS = {")": "(", "]": "[", "}": "{"}


class BuiltinSyntaxChecker:
    """Structural validation only: no elaboration, no type checking."""

    def check(self, module: VerilogModule) -> SyntaxVerdict:
        code = scan(module.source_text).code_view()
        tokens = TOKEN_RE.findall(code)

        stack: list[str] = []
        begin_depth = 0
        for tok in tokens:
            if tok in "([{":
                stack.append(tok)
            elif tok in _PAIRS:
                if not stack or stack.pop() != _PAIRS[tok]:
                    return SyntaxVerdict(False, f"unbalanced '{tok}'")
            elif tok == "begin":
                begin_depth += 1
            elif tok == "end":
                begin_depth -= 1
                if begin_depth < 0:
                    return SyntaxVerdict(False, "'end' without matching 'begin'")
        if stack:
            return SyntaxVerdict(False, f"unclosed '{stack[-1]}'")
        if begin_depth != 0:
            return SyntaxVerdict(False, "'begin' without matching 'end'")

        if tokens.count("module") != 1 or tokens.count("endmodule") != 1:
            return SyntaxVerdict(False, "expected exactly one module/endmodule pair")
        header = self._check_header(tokens)
        if header is not None:
            return SyntaxVerdict(False, header)
        return SyntaxVerdict(True)

    @staticmethod
    def _check_header(tokens: list[str]) -> str | None:
        i = tokens.index("module")
        if i + 1 >= len(tokens) or not IDENT_RE.fullmatch(tokens[i + 1]):
            return "module keyword not followed by an identifier"
        i += 2
        if i < len(tokens) and tokens[i] == "#":
            if i + 1 >= len(tokens) or tokens[i + 1] != "(":
                return "'#' in header not followed by '('"
            i = _skip_parens(tokens, i + 1)
            if i is None:
                return "unterminated parameter list"
        if i < len(tokens) and tokens[i] == "(":
            i = _skip_parens(tokens, i)
            if i is None:
                return "unterminated port list"
        if i >= len(tokens) or tokens[i] != ";":
            return "module header missing ';'"
        return None


def _skip_parens(tokens: list[str], start: int) -> int | None:
    depth = 0
    for j in range(start, len(tokens)):
        if tokens[j] == "(":
            depth += 1
        elif tokens[j] == ")":
            depth -= 1
            if depth == 0:
                return j + 1
    return None


@dataclass
class ExternalSyntaxChecker:
    """Runs a parser subprocess; nonzero exit means Invalid.

    The command template must contain a ``{file}`` placeholder. A missing
    binary or a timeout is an infrastructure error, not a syntax verdict.
    """

    command_template: str
    timeout: float = 30.0

    def check(self, module: VerilogModule) -> SyntaxVerdict:
        with tempfile.TemporaryDirectory(prefix="rtlkit-syntax-") as tmp:
            path = Path(tmp) / "module.v"
            path.write_text(module.source_text, encoding="utf-8")
            cmd = self.command_template.format(file=str(path))
            try:
                proc = subprocess.run(
                    cmd,
                    shell=True,
                    capture_output=True,
                    text=True,
                    timeout=self.timeout,
                )
            except subprocess.TimeoutExpired as exc:
                raise InfrastructureError(f"syntax checker timed out: {cmd}") from exc
            except OSError as exc:
                raise InfrastructureError(f"syntax checker failed to start: {exc}") from exc
        if proc.returncode == 127:
            raise InfrastructureError(f"syntax checker not found: {cmd}")
        if proc.returncode != 0:
            diag = (proc.stderr or proc.stdout).strip()
            return SyntaxVerdict(False, diag or f"exit code {proc.returncode}")
        return SyntaxVerdict(True)


def syntax_check(module: VerilogModule, checker=None) -> SyntaxVerdict:
    """Validate a module with the given checker (built-in by default)."""
    return (checker or BuiltinSyntaxChecker()).check(module)
