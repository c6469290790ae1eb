"""Exception types shared across the engine."""


class D3Error(Exception):
    """Base class for all engine errors."""


class ColorError(D3Error, ValueError):
    """Unknown color name or malformed hex literal."""


class IntentError(D3Error):
    """A structured edit could not be applied to the program."""


class GeometryError(D3Error):
    """Profile sampling, triangulation or compilation failed."""

    def __init__(self, message: str, component_id: str | None = None):
        self.component_id = component_id
        if component_id:
            message = f"component '{component_id}': {message}"
        super().__init__(message)


class GestureError(D3Error):
    """Landmark input violated a gesture operation's preconditions."""


class ProviderError(D3Error):
    """Transcription or chat-completion provider failure."""


class SessionError(D3Error):
    """Session state violation (bad config, corrupt save file, ...)."""
