"""Prompt construction and code-block extraction for the language loop."""

from __future__ import annotations

import re

from ..errors import IntentError, ProviderError
from ..library import shape_names
from ..sdl.model import SceneProgram
from ..sdl.printer import print_program
from ..sdl.splice import find_block_span

GRAMMAR_SUMMARY = """\
scene "<name>" { component "<id>" { ... } ... }
Component fields, in order:
  profile: rect <w> <h> | ellipse <rx> <ry> <segments> | polygon <x y>{3,}
           | bezier <x y>{3,} samples <n> | ref "<library shape>"
  extrude: <depth>          (required, > 0)
  color: #RRGGBB | <html color name>   (required)
  count: <n>                (required, >= 1)
  scale: <s> | <sx> <sy> <sz>          (optional)
  attach: "<parent id>" angle <0..180> radial|fixed [offset <x> <y> <z>]
          (required on every component except the single root)
Component ids are lowercase [a-z][a-z0-9_]*. Library shapes: {shapes}.
Profiles lie in the XY plane and are extruded along +Z; attached components
tilt about X by the angle (0 = closed against the parent's up axis,
90 = fully open) and radial mode spreads <count> copies evenly around the
parent's up axis."""

_FENCE_RE = re.compile(r"^```[^\n]*\n(.*?)^```\s*$", re.MULTILINE | re.DOTALL)


def _grammar() -> str:
    return GRAMMAR_SUMMARY.replace("{shapes}", ", ".join(shape_names()))


def build_prompt(
    stage: str,
    user_text: str,
    prog: SceneProgram | None,
    selection: str | None,
) -> str:
    """Deterministic prompt: grammar, current program, selection, request."""
    if stage not in ("generation", "segmentation", "modification"):
        raise IntentError(f"unknown stage {stage!r}")
    if stage == "modification" and not selection:
        raise IntentError("modification stage requires a selected component")

    program_text = print_program(prog) if prog is not None else "(empty scene)\n"
    if stage == "generation":
        task = (
            "Create the single component the user asks for. Reply with exactly one "
            "fenced code block containing exactly one component block (no attach "
            "clause: it is the scene root)."
        )
    elif stage == "segmentation":
        task = (
            "Split the selected component into parts. Reply with one fenced code "
            "block containing one component block per part; keep exactly one root "
            "and attach the others to it."
        )
    else:
        task = (
            f'Modify only the component "{selection}". Reply with exactly one '
            "fenced code block containing the full replacement component block "
            f'(keep the id "{selection}").'
        )

    lines = [
        "You edit 3D scenes written in a small scene-description language.",
        "",
        "Language:",
        _grammar(),
        "",
        "Current program:",
        program_text.rstrip("\n"),
        "",
        f"Selection: {selection if selection else '(none)'}",
        f"Stage: {stage}",
        f"User request: {user_text}",
        "",
        task,
        "Output nothing but the fenced code block.",
    ]
    return "\n".join(lines)


def extract_blocks(response: str) -> list[str]:
    """Pull component block texts out of fenced code regions, in order.

    A single fence may hold several blocks; they are split at the top
    level. Raises when no component block is found or a fence is unclosed.
    """
    fence_count = len(re.findall(r"^```", response, re.MULTILINE))
    regions = _FENCE_RE.findall(response)
    if fence_count % 2 != 0:
        raise ProviderError("response has an unclosed code fence")
    blocks: list[str] = []
    for region in regions:
        blocks.extend(_split_components(region))
    if not blocks:
        raise ProviderError("response contains no component block")
    return blocks


def _split_components(region: str) -> list[str]:
    out: list[str] = []
    rest = region
    header = re.compile(r'component\s+"([a-z][a-z0-9_]*)"\s*\{')
    while True:
        m = header.search(rest)
        if m is None:
            return out
        span = find_block_span(rest, m.group(1))
        if span is None:
            # Unbalanced braces: surface the remainder so parsing reports it.
            out.append(rest[m.start() :].strip())
            return out
        out.append(rest[span[0] : span[1]])
        rest = rest[span[1] :]
