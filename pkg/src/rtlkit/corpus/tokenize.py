"""Tokenization of Verilog source for shingling and identifier harvesting.

Comments are stripped first; identifiers stay case-sensitive; every
punctuation character is its own token.
"""

from __future__ import annotations

import re

from .scanning import IDENT_RE, scan

TOKEN_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*|\d+|\S")

DECLARATION_KEYWORDS = frozenset(
    {
        "input",
        "output",
        "inout",
        "wire",
        "reg",
        "logic",
        "parameter",
        "localparam",
        "integer",
        "real",
        "genvar",
    }
)

_NON_NAME_KEYWORDS = frozenset(
    {
        "module",
        "endmodule",
        "begin",
        "end",
        "assign",
        "always",
        "initial",
        "posedge",
        "negedge",
        "if",
        "else",
        "case",
        "endcase",
        "signed",
        "unsigned",
    }
) | DECLARATION_KEYWORDS


def tokenize(source_text: str) -> list[str]:
    """Token stream of the comment-stripped source."""
    stripped = scan(source_text).comment_stripped()
    return TOKEN_RE.findall(stripped)


def declared_identifiers(source_text: str) -> set[str]:
    """Names a module declares: its own name, ports, nets, regs, parameters.

    Works from the token stream, so it deliberately over-approximates in
    odd corners (that only makes leak checks stricter, never looser).
    Identifier references inside ranges ``[..]`` and initializer
    expressions after ``=`` are not declarations and are skipped.
    """
    tokens = tokenize(source_text)
    names: set[str] = set()
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if tok == "module" and i + 1 < n and IDENT_RE.fullmatch(tokens[i + 1]):
            names.add(tokens[i + 1])
            i += 2
            # header port list: collect identifiers until the closing ';'
            depth = 0
            skipping = 0
            while i < n and tokens[i] != ";":
                t = tokens[i]
                if t == "[":
                    skipping += 1
                elif t == "]":
                    skipping = max(0, skipping - 1)
                elif t == "(":
                    depth += 1
                elif t == ")":
                    depth -= 1
                elif skipping == 0 and IDENT_RE.fullmatch(t) and t not in _NON_NAME_KEYWORDS:
                    names.add(t)
                i += 1
            continue
        if tok in DECLARATION_KEYWORDS:
            i += 1
            bracket = 0
            in_init = False
            while i < n and tokens[i] not in (";", ")"):
                t = tokens[i]
                if t == "[":
                    bracket += 1
                elif t == "]":
                    bracket = max(0, bracket - 1)
                elif t == "=":
                    in_init = True
                elif t == ",":
                    in_init = False
                elif (
                    bracket == 0
                    and not in_init
                    and IDENT_RE.fullmatch(t)
                    and t not in _NON_NAME_KEYWORDS
                ):
                    names.add(t)
                i += 1
            continue
        i += 1
    return names
