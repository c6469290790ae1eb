"""Scene description language: model, parser, printer, splice, intents."""

from .colors import HTML_COLORS, format_hex, parse_hex, resolve_color
from .intents import apply_intent
from .model import (
    SET_PARAM_FIELDS,
    AddComponent,
    AttachConstraint,
    BezierProfile,
    ComponentBlock,
    Diagnostic,
    EllipseProfile,
    IntentOp,
    ParseResult,
    PolygonProfile,
    Profile2D,
    RectProfile,
    RefProfile,
    RemoveComponent,
    ReplaceBlock,
    SceneProgram,
    Segment,
    SetParam,
)
from .parser import parse_block_text, parse_program
from .printer import fmt_num, print_block, print_program
from .splice import SpliceResult, find_block_span, splice_block

__all__ = [
    "HTML_COLORS",
    "format_hex",
    "parse_hex",
    "resolve_color",
    "apply_intent",
    "SET_PARAM_FIELDS",
    "AddComponent",
    "AttachConstraint",
    "BezierProfile",
    "ComponentBlock",
    "Diagnostic",
    "EllipseProfile",
    "IntentOp",
    "ParseResult",
    "PolygonProfile",
    "Profile2D",
    "RectProfile",
    "RefProfile",
    "RemoveComponent",
    "ReplaceBlock",
    "SceneProgram",
    "Segment",
    "SetParam",
    "parse_block_text",
    "parse_program",
    "fmt_num",
    "print_block",
    "print_program",
    "SpliceResult",
    "find_block_span",
    "splice_block",
]
