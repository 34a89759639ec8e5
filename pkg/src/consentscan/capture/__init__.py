"""Live page capture: browser sessions that turn a URL into a PageSnapshot."""

from .session import (
    BrowserSession,
    CaptureConfig,
    CaptureError,
    ErrorKind,
    PostClickCapture,
    open_session,
)

__all__ = [
    "BrowserSession",
    "CaptureConfig",
    "CaptureError",
    "ErrorKind",
    "PostClickCapture",
    "open_session",
]
