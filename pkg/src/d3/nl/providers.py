"""Transcription and chat-completion providers.

Mock mode is a first-class offline mode, not just a test double: fixtures
map "chat:<stage>:<normalized utterance>" and "transcribe:<sha256 of the
wav bytes>" to canned response text. Live mode speaks the common JSON
chat-completion shape with bearer auth, and multipart upload for audio.
"""

from __future__ import annotations

import hashlib
import io
import json
import time
import wave
from dataclasses import dataclass

import httpx

from ..errors import ProviderError
from .config import ProviderConfig

ALLOWED_SAMPLE_RATES = (16000, 44100)


def normalize_utterance(text: str) -> str:
    """Lowercase and collapse whitespace; punctuation is significant."""
    return " ".join(text.lower().split())


def chat_fixture_key(stage: str, user_text: str) -> str:
    return f"chat:{stage}:{normalize_utterance(user_text)}"


def transcribe_fixture_key(wav: bytes) -> str:
    return f"transcribe:{hashlib.sha256(wav).hexdigest()}"


def validate_wav(wav: bytes) -> None:
    """Accept only mono 16-bit PCM at 16 kHz or 44.1 kHz."""
    if not wav:
        raise ProviderError("malformed audio: empty input")
    try:
        with wave.open(io.BytesIO(wav)) as handle:
            channels = handle.getnchannels()
            width = handle.getsampwidth()
            rate = handle.getframerate()
    except (wave.Error, EOFError) as exc:
        raise ProviderError(f"malformed audio: {exc}") from exc
    if channels != 1:
        raise ProviderError(f"malformed audio: expected mono, got {channels} channels")
    if width != 2:
        raise ProviderError(f"malformed audio: expected 16-bit PCM, got {8 * width}-bit")
    if rate not in ALLOWED_SAMPLE_RATES:
        raise ProviderError(
            f"malformed audio: sample rate {rate} not in {ALLOWED_SAMPLE_RATES}"
        )


@dataclass
class ChatResult:
    text: str
    latency_ms: int


class MockProvider:
    def __init__(self, cfg: ProviderConfig):
        self.cfg = cfg
        try:
            with open(cfg.fixtures_path, encoding="utf-8") as handle:
                fixtures = json.load(handle)
        except OSError as exc:
            raise ProviderError(f"cannot read fixture file {cfg.fixtures_path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ProviderError(f"fixture file is not valid JSON: {exc}") from exc
        if not isinstance(fixtures, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in fixtures.items()
        ):
            raise ProviderError("fixture file must be a flat JSON object of strings")
        self.fixtures: dict[str, str] = fixtures

    def chat(self, stage: str, user_text: str, prompt: str) -> ChatResult:
        key = chat_fixture_key(stage, user_text)
        if key not in self.fixtures:
            raise ProviderError(f"no fixture for {key!r}")
        return ChatResult(self.fixtures[key], 0)

    def transcribe(self, wav: bytes) -> str:
        validate_wav(wav)
        key = transcribe_fixture_key(wav)
        if key not in self.fixtures:
            raise ProviderError(f"no fixture for {key!r}")
        return self.fixtures[key]


class LiveProvider:
    def __init__(self, cfg: ProviderConfig):
        self.cfg = cfg

    def chat(self, stage: str, user_text: str, prompt: str) -> ChatResult:
        started = time.monotonic()
        try:
            response = httpx.post(
                self.cfg.chat_endpoint,
                json={
                    "model": self.cfg.model_name,
                    "messages": [{"role": "user", "content": prompt}],
                    "temperature": 0,
                },
                headers={"Authorization": f"Bearer {self.cfg.api_key}"},
                timeout=self.cfg.timeout_s,
            )
            response.raise_for_status()
            payload = response.json()
            text = payload["choices"][0]["message"]["content"]
        except httpx.TimeoutException as exc:
            elapsed = time.monotonic() - started
            raise ProviderError(f"chat provider timed out after {elapsed:.1f}s") from exc
        except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
            raise ProviderError(f"chat provider failure: {exc}") from exc
        latency = int((time.monotonic() - started) * 1000)
        return ChatResult(str(text), latency)

    def transcribe(self, wav: bytes) -> str:
        validate_wav(wav)
        started = time.monotonic()
        try:
            response = httpx.post(
                self.cfg.transcription_endpoint,
                files={"file": ("audio.wav", wav, "audio/wav")},
                data={"model": self.cfg.model_name},
                headers={"Authorization": f"Bearer {self.cfg.api_key}"},
                timeout=self.cfg.timeout_s,
            )
            response.raise_for_status()
            text = response.json()["text"]
        except httpx.TimeoutException as exc:
            elapsed = time.monotonic() - started
            raise ProviderError(f"transcription timed out after {elapsed:.1f}s") from exc
        except (httpx.HTTPError, KeyError, ValueError) as exc:
            raise ProviderError(f"transcription failure: {exc}") from exc
        return str(text)


Provider = MockProvider | LiveProvider


def make_provider(cfg: ProviderConfig) -> Provider:
    cfg.validate()
    if cfg.mode == "mock":
        return MockProvider(cfg)
    return LiveProvider(cfg)


def transcribe(wav: bytes, cfg: ProviderConfig) -> str:
    return make_provider(cfg).transcribe(wav)
