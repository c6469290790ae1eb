"""Provider configuration (chat + transcription endpoints, mock fixtures)."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..errors import SessionError

ENV_API_KEY = "D3_API_KEY"
ENV_CHAT_URL = "D3_CHAT_URL"
ENV_TRANSCRIBE_URL = "D3_TRANSCRIBE_URL"
ENV_MODE = "D3_MODE"
ENV_FIXTURES = "D3_FIXTURES"
ENV_MODEL = "D3_MODEL"

DEFAULT_MODEL = "gpt-4o-mini"
DEFAULT_TIMEOUT_S = 30.0


@dataclass(frozen=True)
class ProviderConfig:
    mode: str = "mock"  # "live" | "mock"
    chat_endpoint: str = ""
    transcription_endpoint: str = ""
    api_key: str = ""
    model_name: str = DEFAULT_MODEL
    timeout_s: float = DEFAULT_TIMEOUT_S
    fixtures_path: str = ""

    def validate(self) -> None:
        if self.mode not in ("live", "mock"):
            raise SessionError(f"provider mode must be 'live' or 'mock', got {self.mode!r}")
        if self.timeout_s <= 0:
            raise SessionError(f"provider timeout must be > 0, got {self.timeout_s}")
        if self.mode == "live":
            if not self.chat_endpoint:
                raise SessionError("live mode needs a chat endpoint (D3_CHAT_URL)")
            if not self.api_key:
                raise SessionError("live mode needs an API key (D3_API_KEY)")
        else:
            if not self.fixtures_path:
                raise SessionError("mock mode needs a fixture file (D3_FIXTURES)")

    @classmethod
    def from_env(
        cls,
        environ: dict[str, str] | None = None,
        mode: str | None = None,
        fixtures_path: str | None = None,
    ) -> "ProviderConfig":
        env = os.environ if environ is None else environ
        cfg = cls(
            mode=mode or env.get(ENV_MODE, "mock"),
            chat_endpoint=env.get(ENV_CHAT_URL, ""),
            transcription_endpoint=env.get(ENV_TRANSCRIBE_URL, ""),
            api_key=env.get(ENV_API_KEY, ""),
            model_name=env.get(ENV_MODEL, DEFAULT_MODEL),
            timeout_s=DEFAULT_TIMEOUT_S,
            fixtures_path=fixtures_path if fixtures_path is not None else env.get(ENV_FIXTURES, ""),
        )
        cfg.validate()
        return cfg
