"""Utterance -> validated IntentOp pipeline.

Unambiguous utterances take deterministic fast paths (numeric degrees,
color mentions) without any provider round trip; everything else goes
prompt -> provider -> block extraction -> op -> validation gate, with one
retry that feeds the validation errors back to the provider.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import IntentError, ProviderError
from ..sdl.intents import apply_intent
from ..sdl.model import (
    AddComponent,
    IntentOp,
    ReplaceBlock,
    SceneProgram,
    Segment,
    SetParam,
)
from .analogy import find_color_mention
from .config import ProviderConfig
from .prompts import build_prompt, extract_blocks
from .providers import Provider, make_provider

NUMERIC_DEGREES_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*degrees?\b", re.IGNORECASE)


@dataclass(frozen=True)
class IntentResult:
    op: IntentOp
    raw_response: str
    provider_latency_ms: int


def _fast_path_op(user_text: str, selection: str) -> IntentOp | None:
    m = NUMERIC_DEGREES_RE.match(user_text)
    if m:
        return SetParam(selection, "attach.angle", float(m.group(1)))
    color = find_color_mention(user_text)
    if color is not None:
        return SetParam(selection, "color", color)
    return None


def _op_for_stage(
    stage: str,
    prog: SceneProgram | None,
    selection: str | None,
    blocks: list[str],
) -> IntentOp:
    if stage == "segmentation":
        if prog is None:
            raise IntentError("nothing to segment yet")
        target = selection if selection else prog.root.id
        return Segment(component_id=target, block_texts=tuple(blocks))
    if len(blocks) != 1:
        raise IntentError(f"expected exactly one component block, got {len(blocks)}")
    if stage == "generation":
        if prog is None:
            return AddComponent(block_text=blocks[0])
        return ReplaceBlock(component_id=prog.root.id, block_text=blocks[0])
    if stage == "modification":
        assert selection is not None
        return ReplaceBlock(component_id=selection, block_text=blocks[0])
    raise IntentError(f"unknown stage {stage!r}")


def interpret(
    user_text: str,
    prog: SceneProgram | None,
    selection: str | None,
    stage: str,
    cfg: ProviderConfig,
    provider: Provider | None = None,
) -> IntentResult:
    """Turn an utterance into a validated IntentOp (see module docstring).

    The returned op has already been applied to a scratch copy of the
    program, so applying it for real cannot fail validation.
    """
    if stage == "modification" and selection:
        op = _fast_path_op(user_text, selection)
        if op is not None:
            apply_intent(prog, op)  # gate; fast paths never reach the provider
            return IntentResult(op=op, raw_response="", provider_latency_ms=0)

    prompt = build_prompt(stage, user_text, prog, selection)
    if provider is None:
        provider = make_provider(cfg)

    attempt_prompt = prompt
    latency = 0
    last_error = ""
    for _attempt in range(2):
        chat = provider.chat(stage, user_text, attempt_prompt)
        latency += chat.latency_ms
        try:
            blocks = extract_blocks(chat.text)
            op = _op_for_stage(stage, prog, selection, blocks)
            apply_intent(prog, op)
            return IntentResult(op=op, raw_response=chat.text, provider_latency_ms=latency)
        except (ProviderError, IntentError) as exc:
            last_error = str(exc)
            attempt_prompt = (
                prompt
                + "\n\nYour previous reply could not be applied:\n"
                + last_error
                + "\nReply again with only the corrected fenced code block."
            )
    raise IntentError(f"provider output invalid after retry: {last_error}")
