"""Capture configuration, failure taxonomy, and the session interface.

Two interchangeable backends implement BrowserSession: a Chromium instance
driven over the DevTools protocol (cdp module), and a built-in
fetch/layout/render engine (builtin module) that needs no browser binary
and keeps the whole pipeline deterministic for fixtures and tests.
"""

from __future__ import annotations

import os
import shutil
from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol, runtime_checkable

import numpy as np

from ..snapshot import CookieRecord, PageSnapshot, RequestRecord, Viewport

DEFAULT_USER_AGENT = (
    "Mozilla/5.0 (X11; Linux x86_64) AppleWebKit/537.36 "
    "(KHTML, like Gecko) Chrome/120.0.0.0 Safari/537.36"
)

BROWSER_ENV_VAR = "CONSENTSCAN_BROWSER"

_CHROME_CANDIDATES = (
    "chromium",
    "chromium-browser",
    "google-chrome",
    "google-chrome-stable",
    "chrome",
)


class ErrorKind(str, Enum):
    DNS_UNRESOLVED = "dns_unresolved"
    UNREACHABLE = "unreachable"
    TIMEOUT = "timeout"
    SCANNER_FAILURE = "scanner_failure"


class CaptureError(Exception):
    def __init__(self, kind: ErrorKind, detail: str = ""):
        super().__init__(f"{kind.value}: {detail}" if detail else kind.value)
        self.kind = kind
        self.detail = detail


@dataclass(frozen=True)
class CaptureConfig:
    settle_wait: float = 5.0
    page_timeout: float = 60.0
    viewport: Viewport = field(default_factory=lambda: Viewport(1920, 1080))
    user_agent: str = DEFAULT_USER_AGENT
    suppress_media: bool = True

    def __post_init__(self) -> None:
        if self.settle_wait >= self.page_timeout:
            raise ValueError(
                f"settle_wait ({self.settle_wait}) must be below "
                f"page_timeout ({self.page_timeout})"
            )


@dataclass
class PostClickCapture:
    """State recorded after clicking a clickable on the current page."""

    screenshot: np.ndarray
    cookies: list[CookieRecord]
    requests: list[RequestRecord]
    page_text: str
    url: str


@runtime_checkable
class BrowserSession(Protocol):
    def capture_page(self, url: str, config: CaptureConfig) -> PageSnapshot:
        """Load the page, wait settle_wait, and snapshot it. Raises
        CaptureError with the matching kind on failure."""
        ...

    def clear_state(self) -> None:
        """Empty cookies, cache, and local/session storage so the next
        capture is a first visit."""
        ...

    def click_and_capture(self, clickable, config: CaptureConfig) -> PostClickCapture:
        """Click the given clickable (from the current page's snapshot) at
        its bbox center, wait settle_wait, and record the post state."""
        ...

    def close(self) -> None:
        ...


def find_browser_binary() -> str | None:
    override = os.environ.get(BROWSER_ENV_VAR)
    if override:
        return override if os.path.exists(override) else shutil.which(override)
    for name in _CHROME_CANDIDATES:
        path = shutil.which(name)
        if path:
            return path
    return None


def open_session(engine: str = "auto", browser_path: str | None = None) -> BrowserSession:
    """engine: "auto" picks cdp when a browser binary is available,
    otherwise the built-in engine; "cdp"/"builtin" force a backend."""
    if engine not in ("auto", "cdp", "builtin"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "builtin":
        from .builtin import BuiltinSession

        return BuiltinSession()
    binary = browser_path or find_browser_binary()
    if engine == "cdp":
        if binary is None:
            raise CaptureError(
                ErrorKind.SCANNER_FAILURE,
                f"no browser binary found; set ${BROWSER_ENV_VAR} or --browser-path",
            )
        from .cdp import CdpSession

        return CdpSession(binary)
    if binary is not None:
        from .cdp import CdpSession

        return CdpSession(binary)
    from .builtin import BuiltinSession

    return BuiltinSession()
