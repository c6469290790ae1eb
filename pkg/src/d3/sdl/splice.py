"""Byte-level block replacement in SDL text.

Replaces exactly one `component "<id>" { ... }` span while leaving every
byte outside the span untouched, so unrelated formatting survives edits.
Failures are atomic: the returned text is the input, byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .parser import parse_block_text, parse_program


@dataclass(frozen=True)
class SpliceResult:
    text: str
    ok: bool
    error: str | None = None
    span: tuple[int, int] | None = None  # replaced byte range in the input


def _in_string(text: str, pos: int) -> bool:
    # SDL strings have no escapes and no embedded quotes, so parity works.
    return text.count('"', 0, pos) % 2 == 1


def find_block_span(text: str, component_id: str) -> tuple[int, int] | None:
    """Byte span [start, end) of the named component block, or None."""
    header = re.compile(r'component\s+"' + re.escape(component_id) + r'"\s*\{')
    for match in header.finditer(text):
        if _in_string(text, match.start()):
            continue
        depth = 1
        pos = match.end()
        in_string = False
        while pos < len(text):
            ch = text[pos]
            if ch == '"':
                in_string = not in_string
            elif not in_string:
                if ch == "{":
                    depth += 1
                elif ch == "}":
                    depth -= 1
                    if depth == 0:
                        return match.start(), pos + 1
            pos += 1
        return None  # unbalanced braces
    return None


def splice_block(text: str, component_id: str, block_text: str) -> SpliceResult:
    """Swap the named block's bytes for `block_text`, validating the result.

    The replacement must itself parse as a single component block and the
    resulting document must parse as a valid program; otherwise the input
    text is returned unchanged with an error message.
    """
    span = find_block_span(text, component_id)
    if span is None:
        return SpliceResult(text, False, f"component '{component_id}' not found")

    block, diags = parse_block_text(block_text)
    if block is None:
        msgs = "; ".join(str(d) for d in diags)
        return SpliceResult(text, False, f"replacement block does not parse: {msgs}")

    candidate = text[: span[0]] + block_text + text[span[1] :]
    result = parse_program(candidate)
    if result.program is None:
        msgs = "; ".join(str(d) for d in result.errors)
        return SpliceResult(text, False, f"splice produces an invalid program: {msgs}")
    return SpliceResult(candidate, True, None, span)
