"""SDL parser: tokenizer, recursive descent, and program validation.

Grammar (whitespace-separated tokens; line breaks are not significant):

    program   := 'scene' STRING '{' component* '}'
    component := 'component' STRING '{' field* '}'
    field     := 'profile:' profile | 'extrude:' NUM | 'color:' COLOR|NAME
               | 'count:' INT | 'scale:' NUM [NUM NUM]
               | 'attach:' STRING 'angle' NUM ('radial'|'fixed')
                 ['offset' NUM NUM NUM]
    profile   := 'rect' NUM NUM | 'ellipse' NUM NUM INT
               | 'polygon' (NUM NUM){3,} | 'bezier' (NUM NUM){3,} 'samples' INT
               | 'ref' STRING

Syntax errors abort with a single diagnostic; semantic validation then
collects as many diagnostics as it can. `parse_program` returns a program
or error diagnostics, never both.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..errors import GeometryError
from ..geometry.outline import profile_outline
from .colors import resolve_color
from .model import (
    AttachConstraint,
    BezierProfile,
    ComponentBlock,
    Diagnostic,
    EllipseProfile,
    ParseResult,
    PolygonProfile,
    Profile2D,
    RectProfile,
    RefProfile,
    SceneProgram,
)

ID_RE = re.compile(r"^[a-z][a-z0-9_]*$")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<color>\#[0-9a-fA-F]{6})
  | (?P<number>-?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<string>"[^"\n]*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<colon>:)
  | (?P<lbrace>\{)
  | (?P<rbrace>\})
    """,
    re.VERBOSE,
)

FIELD_ORDER = ("profile", "extrude", "color", "count", "scale", "attach")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int


class SdlSyntaxError(Exception):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"{line}: {message}")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SdlSyntaxError(line, f"unexpected character {text[pos]!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            continue
        if kind == "ws":
            continue
        tokens.append(Token(kind, m.group(), line))
    tokens.append(Token("eof", "", line))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise SdlSyntaxError(tok.line, f"expected {what or kind}, got {tok.value or 'end of input'!r}")
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "ident" or tok.value != word:
            raise SdlSyntaxError(tok.line, f"expected '{word}', got {tok.value or 'end of input'!r}")
        return self.advance()

    def string(self, what: str) -> tuple[str, int]:
        tok = self.expect("string", what)
        return tok.value[1:-1], tok.line

    def number(self, what: str) -> tuple[float, int]:
        tok = self.expect("number", what)
        return float(tok.value), tok.line

    def integer(self, what: str) -> tuple[int, int]:
        value, line = self.number(what)
        if value != int(value):
            raise SdlSyntaxError(line, f"{what} must be an integer, got {value}")
        return int(value), line

    # -- grammar -----------------------------------------------------------

    def parse_program(self) -> tuple[str, list[tuple[ComponentBlock, int]], list[Diagnostic]]:
        self.expect_keyword("scene")
        name, _ = self.string("scene name")
        self.expect("lbrace", "'{'")
        blocks: list[tuple[ComponentBlock, int]] = []
        diags: list[Diagnostic] = []
        while self.peek().kind != "rbrace":
            if self.peek().kind == "eof":
                raise SdlSyntaxError(self.peek().line, "unclosed scene block")
            blocks.append(self.parse_component(diags))
        self.advance()
        tok = self.peek()
        if tok.kind != "eof":
            raise SdlSyntaxError(tok.line, f"unexpected trailing input {tok.value!r}")
        return name, blocks, diags

    def parse_component(self, diags: list[Diagnostic]) -> tuple[ComponentBlock, int]:
        self.expect_keyword("component")
        cid, header_line = self.string("component id")
        self.expect("lbrace", "'{'")
        fields: dict[str, object] = {}
        field_lines: dict[str, int] = {}
        while self.peek().kind != "rbrace":
            if self.peek().kind == "eof":
                raise SdlSyntaxError(self.peek().line, f"unclosed component block '{cid}'")
            name_tok = self.expect("ident", "field name")
            self.expect("colon", "':'")
            if name_tok.value in fields:
                raise SdlSyntaxError(name_tok.line, f"duplicate field '{name_tok.value}'")
            if name_tok.value not in FIELD_ORDER:
                raise SdlSyntaxError(name_tok.line, f"unknown field '{name_tok.value}'")
            fields[name_tok.value] = self.parse_field_value(name_tok.value)
            field_lines[name_tok.value] = name_tok.line
        self.advance()
        block = _build_block(cid, header_line, fields, field_lines, diags)
        return block, header_line

    def parse_field_value(self, field: str) -> object:
        if field == "profile":
            return self.parse_profile()
        if field == "extrude":
            return self.number("extrude depth")[0]
        if field == "color":
            tok = self.peek()
            if tok.kind == "color":
                self.advance()
                return tok.value
            if tok.kind == "ident":
                self.advance()
                return tok.value
            raise SdlSyntaxError(tok.line, f"expected color, got {tok.value or 'end of input'!r}")
        if field == "count":
            return self.integer("count")[0]
        if field == "scale":
            first = self.number("scale factor")[0]
            if self.peek().kind == "number":
                second = self.number("scale factor")[0]
                third = self.number("scale factor")[0]
                return (first, second, third)
            return (first, first, first)
        if field == "attach":
            parent, _ = self.string("parent id")
            self.expect_keyword("angle")
            angle, _ = self.number("angle")
            mode_tok = self.expect("ident", "'radial' or 'fixed'")
            if mode_tok.value not in ("radial", "fixed"):
                raise SdlSyntaxError(mode_tok.line, f"expected 'radial' or 'fixed', got {mode_tok.value!r}")
            offset = (0.0, 0.0, 0.0)
            if self.peek().kind == "ident" and self.peek().value == "offset":
                self.advance()
                offset = (
                    self.number("offset x")[0],
                    self.number("offset y")[0],
                    self.number("offset z")[0],
                )
            return AttachConstraint(parent, angle, mode_tok.value, offset)
        raise AssertionError(field)

    def parse_profile(self) -> Profile2D:
        kind_tok = self.expect("ident", "profile kind")
        kind = kind_tok.value
        if kind == "rect":
            return RectProfile(self.number("rect width")[0], self.number("rect height")[0])
        if kind == "ellipse":
            rx = self.number("ellipse rx")[0]
            ry = self.number("ellipse ry")[0]
            segments = self.integer("ellipse segments")[0]
            return EllipseProfile(rx, ry, segments)
        if kind == "polygon":
            pairs = self.number_pairs("polygon vertex")
            return PolygonProfile(pairs)
        if kind == "bezier":
            pairs = self.number_pairs("bezier control point")
            self.expect_keyword("samples")
            samples = self.integer("bezier samples")[0]
            return BezierProfile(pairs, samples)
        if kind == "ref":
            name, _ = self.string("library shape name")
            return RefProfile(name)
        raise SdlSyntaxError(kind_tok.line, f"unknown profile kind {kind!r}")

    def number_pairs(self, what: str) -> tuple[tuple[float, float], ...]:
        pairs: list[tuple[float, float]] = []
        while self.peek().kind == "number":
            x, line = self.number(what)
            if self.peek().kind != "number":
                raise SdlSyntaxError(line, f"{what} list has an odd number of coordinates")
            y, _ = self.number(what)
            pairs.append((x, y))
        if not pairs:
            raise SdlSyntaxError(self.peek().line, f"expected {what} coordinates")
        return tuple(pairs)


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def _build_block(
    cid: str,
    line: int,
    fields: dict[str, object],
    field_lines: dict[str, int],
    diags: list[Diagnostic],
) -> ComponentBlock:
    def err(message: str, at: int | None = None) -> None:
        diags.append(Diagnostic("error", at if at is not None else line, message))

    if not ID_RE.match(cid):
        err(f"invalid component id {cid!r} (must match [a-z][a-z0-9_]*)")

    for required in ("profile", "extrude", "color", "count"):
        if required not in fields:
            err(f"component '{cid}' is missing field '{required}'")

    profile = fields.get("profile", RectProfile(1.0, 1.0))
    if isinstance(profile, RectProfile):
        if not (_finite(profile.width, profile.height) and profile.width > 0 and profile.height > 0):
            err(f"rect dimensions must be positive, got {profile.width} x {profile.height}",
                field_lines.get("profile"))
    elif isinstance(profile, EllipseProfile):
        if not (_finite(profile.rx, profile.ry) and profile.rx > 0 and profile.ry > 0):
            err(f"ellipse radii must be positive, got {profile.rx} x {profile.ry}",
                field_lines.get("profile"))
        if profile.segments < 3:
            err("ellipse needs at least 3 segments", field_lines.get("profile"))
    elif isinstance(profile, PolygonProfile):
        if len(profile.vertices) < 3:
            err("polygon needs at least 3 vertices", field_lines.get("profile"))
        elif not _finite(*(c for v in profile.vertices for c in v)):
            err("polygon coordinates must be finite", field_lines.get("profile"))
        else:
            _check_outline(profile, cid, field_lines.get("profile", line), diags)
    elif isinstance(profile, BezierProfile):
        if len(profile.controls) < 3:
            err("bezier chain needs at least 3 control points", field_lines.get("profile"))
        elif profile.samples < 3:
            err("bezier needs at least 3 samples", field_lines.get("profile"))
        elif not _finite(*(c for v in profile.controls for c in v)):
            err("bezier coordinates must be finite", field_lines.get("profile"))
        else:
            _check_outline(profile, cid, field_lines.get("profile", line), diags)
    elif isinstance(profile, RefProfile):
        _check_outline(profile, cid, field_lines.get("profile", line), diags)

    extrude = float(fields.get("extrude", 1.0))  # type: ignore[arg-type]
    if not (_finite(extrude) and extrude > 0):
        err(f"extrude depth must be > 0, got {extrude}", field_lines.get("extrude"))

    color_spec = fields.get("color", "#FFFFFF")
    try:
        color = resolve_color(str(color_spec))
    except ValueError as exc:
        err(str(exc), field_lines.get("color"))
        color = (255, 255, 255)

    count = int(fields.get("count", 1))  # type: ignore[arg-type]
    if count < 1:
        err(f"count must be >= 1, got {count}", field_lines.get("count"))

    scale = fields.get("scale", (1.0, 1.0, 1.0))
    assert isinstance(scale, tuple)
    if not (_finite(*scale) and all(s > 0 for s in scale)):
        err(f"scale factors must be > 0, got {scale}", field_lines.get("scale"))

    attach = fields.get("attach")
    if attach is not None:
        assert isinstance(attach, AttachConstraint)
        if not (_finite(attach.angle_deg) and 0.0 <= attach.angle_deg <= 180.0):
            err(f"attach angle must be in [0, 180], got {attach.angle_deg}",
                field_lines.get("attach"))
        if not _finite(*attach.offset):
            err("attach offset must be finite", field_lines.get("attach"))
        if attach.mode == "fixed" and count > 1:
            diags.append(Diagnostic(
                "warning", field_lines.get("attach", line),
                f"component '{cid}': fixed mode with count {count} places coincident instances",
            ))

    return ComponentBlock(
        id=cid,
        profile=profile,  # type: ignore[arg-type]
        extrude=extrude,
        color=color,
        count=count,
        scale=scale,  # type: ignore[arg-type]
        attach=attach,  # type: ignore[arg-type]
    )


def _check_outline(profile: Profile2D, cid: str, line: int, diags: list[Diagnostic]) -> None:
    try:
        profile_outline(profile)
    except GeometryError as exc:
        diags.append(Diagnostic("error", line, f"component '{cid}': {exc}"))


def _validate_structure(blocks: list[tuple[ComponentBlock, int]], diags: list[Diagnostic]) -> None:
    seen: dict[str, int] = {}
    for block, line in blocks:
        if block.id in seen:
            diags.append(Diagnostic("error", line, f"duplicate component id '{block.id}'"))
        else:
            seen[block.id] = line

    roots = [b for b, _ in blocks if b.attach is None]
    if not blocks:
        diags.append(Diagnostic("error", 1, "scene has no components"))
    elif not roots:
        diags.append(Diagnostic("error", blocks[0][1], "scene has no root component (every block has an attach clause)"))
    elif len(roots) > 1:
        for b, line in blocks:
            if b.attach is None and b is not roots[0]:
                diags.append(Diagnostic("error", line, f"multiple root components ('{roots[0].id}' and '{b.id}')"))

    for block, line in blocks:
        if block.attach and block.attach.parent_id not in seen:
            diags.append(Diagnostic("error", line, f"unknown parent '{block.attach.parent_id}'"))

    # Cycle check over blocks whose parents all resolve.
    parent = {b.id: b.attach.parent_id for b, _ in blocks if b.attach}
    lines = {b.id: line for b, line in blocks}
    for start in parent:
        node = start
        hops = 0
        while node in parent and hops <= len(blocks):
            node = parent[node]
            hops += 1
            if node == start:
                diags.append(Diagnostic("error", lines[start], f"attachment cycle through '{start}'"))
                break


def parse_program(text: str) -> ParseResult:
    """Parse SDL text into a validated SceneProgram or error diagnostics."""
    try:
        tokens = tokenize(text)
        name, blocks, diags = _Parser(tokens).parse_program()
    except SdlSyntaxError as exc:
        return ParseResult(None, (Diagnostic("error", exc.line, exc.message),))
    _validate_structure(blocks, diags)
    if any(d.severity == "error" for d in diags):
        return ParseResult(None, tuple(diags))
    program = SceneProgram(name=name, components=tuple(b for b, _ in blocks))
    return ParseResult(program, tuple(diags))


def parse_block_text(text: str) -> tuple[ComponentBlock | None, tuple[Diagnostic, ...]]:
    """Parse a standalone `component "..." { ... }` block.

    Validates everything local to the block; parent references are only
    checked once the block lands in a program.
    """
    diags: list[Diagnostic] = []
    try:
        tokens = tokenize(text)
        parser = _Parser(tokens)
        block, _ = parser.parse_component(diags)
        tok = parser.peek()
        if tok.kind != "eof":
            raise SdlSyntaxError(tok.line, f"expected a single component block, got trailing {tok.value!r}")
    except SdlSyntaxError as exc:
        return None, (Diagnostic("error", exc.line, exc.message),)
    if any(d.severity == "error" for d in diags):
        return None, tuple(diags)
    return block, tuple(diags)
