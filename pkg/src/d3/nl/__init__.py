"""Language orchestration: prompts, providers, analogy lookup, interpretation."""

from .analogy import AnalogyHit, find_color_mention, resolve_analogy
from .config import ProviderConfig
from .interpret import NUMERIC_DEGREES_RE, IntentResult, interpret
from .prompts import build_prompt, extract_blocks
from .providers import (
    LiveProvider,
    MockProvider,
    Provider,
    chat_fixture_key,
    make_provider,
    normalize_utterance,
    transcribe,
    transcribe_fixture_key,
    validate_wav,
)

__all__ = [
    "AnalogyHit",
    "find_color_mention",
    "resolve_analogy",
    "ProviderConfig",
    "NUMERIC_DEGREES_RE",
    "IntentResult",
    "interpret",
    "build_prompt",
    "extract_blocks",
    "LiveProvider",
    "MockProvider",
    "Provider",
    "chat_fixture_key",
    "make_provider",
    "normalize_utterance",
    "transcribe",
    "transcribe_fixture_key",
    "validate_wav",
]
