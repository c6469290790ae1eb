"""Analogy lookup: map everyday terms onto library shapes and colors."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..library import COLOR_ALIASES, shape_outline
from ..sdl.colors import HTML_COLORS, parse_hex
from ..sdl.model import PolygonProfile


@dataclass(frozen=True)
class AnalogyHit:
    kind: str  # "shape" | "color"
    shape: PolygonProfile | None = None
    color: tuple[int, int, int] | None = None


def _normalize(term: str) -> str:
    cleaned = re.sub(r"[^a-z0-9# ]+", " ", term.lower())
    return " ".join(cleaned.split())


def resolve_analogy(term: str) -> AnalogyHit | None:
    """Look a term up in the shape library, color aliases, and HTML color
    table (case-insensitive). None means: let the provider handle it."""
    text = _normalize(term)
    if not text:
        return None
    outline = shape_outline(text.replace(" ", "_"))
    if outline is not None:
        return AnalogyHit(kind="shape", shape=PolygonProfile(vertices=outline))
    if text in COLOR_ALIASES:
        return AnalogyHit(kind="color", color=parse_hex(COLOR_ALIASES[text]))
    compact = text.replace(" ", "")
    if compact in HTML_COLORS:
        return AnalogyHit(kind="color", color=parse_hex(HTML_COLORS[compact]))
    return None


def find_color_mention(text: str) -> tuple[int, int, int] | None:
    """Color fast-path scan: hex literal, alias, or HTML color name as a
    whole word; the longest mention wins, earliest on ties."""
    hex_match = re.search(r"#[0-9a-fA-F]{6}\b", text)
    if hex_match:
        return parse_hex(hex_match.group())
    lowered = _normalize(text)
    candidates = sorted(
        list(COLOR_ALIASES) + list(HTML_COLORS),
        key=lambda name: (-len(name), name),
    )
    for name in candidates:
        if re.search(r"\b" + re.escape(name) + r"\b", lowered):
            spec = COLOR_ALIASES.get(name) or HTML_COLORS[name]
            return parse_hex(spec)
    return None
