"""Chromium backend over the DevTools protocol.

Launches a headless browser with remote debugging, attaches to a fresh
target over the websocket endpoint, and implements the BrowserSession
interface: navigate + settle, media-suppressing stylesheet injection, DOM
extraction with layout via an evaluated walker script, PNG screenshots,
cookie/request logging, state clearing, and coordinate clicks.
"""

from __future__ import annotations

import base64
import io
import json
import subprocess
import tempfile
import threading
import time
from datetime import datetime, timezone
from urllib.parse import urlsplit

import numpy as np
from PIL import Image

from ..geometry import BBox
from ..snapshot import (
    CookieRecord,
    DomNode,
    PageSnapshot,
    Phase,
    RequestRecord,
    Viewport,
    normalize_text,
)
from .session import CaptureConfig, CaptureError, ErrorKind, PostClickCapture

_LAUNCH_TIMEOUT = 30.0

_MEDIA_CSS = "img, picture, video, canvas, svg, audio { visibility: hidden !important; }"

_DOM_WALKER_JS = """
(() => {
  const out = [];
  const walk = (el, parentIdx) => {
    const idx = out.length;
    const cs = getComputedStyle(el);
    const rect = el.getBoundingClientRect();
    let ownText = "";
    for (const c of el.childNodes) {
      if (c.nodeType === Node.TEXT_NODE) ownText += c.textContent + " ";
    }
    const attrs = {};
    for (const a of el.attributes) attrs[a.name.toLowerCase()] = a.value;
    out.push({
      parent: parentIdx,
      tag: el.tagName.toLowerCase(),
      attrs: attrs,
      ownText: ownText,
      rect: [rect.x, rect.y, rect.width, rect.height],
      zIndex: cs.zIndex,
      cursor: cs.cursor,
      hidden: cs.display === "none" || cs.visibility === "hidden",
    });
    if (el.tagName.toLowerCase() !== "iframe") {
      for (const c of el.children) walk(c, idx);
    }
    return idx;
  };
  walk(document.documentElement, null);
  return JSON.stringify(out);
})()
"""

_BODY_TEXT_JS = "document.body ? document.body.innerText : ''"


def _classify_net_error(error_text: str) -> CaptureError:
    text = error_text.upper()
    if "NAME_NOT_RESOLVED" in text or "NAME_RESOLUTION" in text:
        return CaptureError(ErrorKind.DNS_UNRESOLVED, error_text)
    if "CONNECTION_REFUSED" in text or "CONNECTION_RESET" in text or "ADDRESS_UNREACHABLE" in text:
        return CaptureError(ErrorKind.UNREACHABLE, error_text)
    if "TIMED_OUT" in text:
        return CaptureError(ErrorKind.TIMEOUT, error_text)
    return CaptureError(ErrorKind.SCANNER_FAILURE, error_text)


class CdpSession:
    def __init__(self, binary: str):
        self.binary = binary
        self._proc: subprocess.Popen | None = None
        self._ws = None
        self._session_id: str | None = None
        self._next_id = 1
        self._events: list[dict] = []
        self._profile_dir: tempfile.TemporaryDirectory | None = None
        self._requests: list[RequestRecord] = []
        self._page_host = ""
        self._current_url = ""
        self._lock = threading.Lock()
        self.pages_captured = 0

    # -- lifecycle -----------------------------------------------------------

    def _ensure_started(self, config: CaptureConfig) -> None:
        if self._ws is not None:
            return
        self._profile_dir = tempfile.TemporaryDirectory(prefix="consentscan-chrome-")
        cmd = [
            self.binary,
            "--headless=new",
            "--remote-debugging-port=0",
            f"--user-data-dir={self._profile_dir.name}",
            "--no-first-run",
            "--no-default-browser-check",
            "--no-sandbox",
            "--disable-gpu",
            "--disable-dev-shm-usage",
            "--hide-scrollbars",
            "--mute-audio",
            f"--window-size={config.viewport.width_px},{config.viewport.height_px}",
            "about:blank",
        ]
        try:
            self._proc = subprocess.Popen(
                cmd, stdout=subprocess.DEVNULL, stderr=subprocess.PIPE, text=True
            )
        except OSError as exc:
            raise CaptureError(ErrorKind.SCANNER_FAILURE, f"cannot launch browser: {exc}") from exc

        ws_url = self._read_ws_endpoint()
        from websockets.sync.client import connect

        browser_ws = connect(ws_url, max_size=None, open_timeout=_LAUNCH_TIMEOUT)
        self._ws = browser_ws
        target = self._call("Target.createTarget", {"url": "about:blank"})
        attach = self._call(
            "Target.attachToTarget", {"targetId": target["targetId"], "flatten": True}
        )
        self._session_id = attach["sessionId"]
        for method in ("Page.enable", "Runtime.enable", "Network.enable"):
            self._call(method, {}, session=True)
        self._call(
            "Emulation.setDeviceMetricsOverride",
            {
                "width": config.viewport.width_px,
                "height": config.viewport.height_px,
                "deviceScaleFactor": 1,
                "mobile": False,
            },
            session=True,
        )
        self._call(
            "Network.setUserAgentOverride", {"userAgent": config.user_agent}, session=True
        )

    def _read_ws_endpoint(self) -> str:
        assert self._proc is not None and self._proc.stderr is not None
        result: dict[str, str] = {}

        def reader() -> None:
            for line in self._proc.stderr:  # type: ignore[union-attr]
                if "DevTools listening on " in line:
                    result["url"] = line.split("DevTools listening on ", 1)[1].strip()
                    break

        thread = threading.Thread(target=reader, daemon=True)
        thread.start()
        thread.join(_LAUNCH_TIMEOUT)
        if "url" not in result:
            self.close()
            raise CaptureError(ErrorKind.SCANNER_FAILURE, "browser did not expose a DevTools endpoint")
        return result["url"]

    def close(self) -> None:
        if self._ws is not None:
            try:
                self._ws.close()
            except Exception:
                pass
            self._ws = None
        if self._proc is not None:
            self._proc.terminate()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
            self._proc = None
        if self._profile_dir is not None:
            self._profile_dir.cleanup()
            self._profile_dir = None

    # -- protocol plumbing -----------------------------------------------------

    def _call(self, method: str, params: dict, session: bool = False, timeout: float = 30.0) -> dict:
        assert self._ws is not None
        with self._lock:
            msg_id = self._next_id
            self._next_id += 1
            payload: dict = {"id": msg_id, "method": method, "params": params}
            if session and self._session_id:
                payload["sessionId"] = self._session_id
            self._ws.send(json.dumps(payload))
            deadline = time.monotonic() + timeout
            while True:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    raise CaptureError(ErrorKind.SCANNER_FAILURE, f"{method} timed out")
                raw = self._ws.recv(timeout=remaining)
                msg = json.loads(raw)
                if msg.get("id") == msg_id:
                    if "error" in msg:
                        raise CaptureError(
                            ErrorKind.SCANNER_FAILURE, f"{method}: {msg['error'].get('message')}"
                        )
                    return msg.get("result", {})
                if "method" in msg:
                    self._handle_event(msg)

    def _pump_events(self, duration: float) -> None:
        assert self._ws is not None
        deadline = time.monotonic() + duration
        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                return
            try:
                raw = self._ws.recv(timeout=remaining)
            except TimeoutError:
                return
            msg = json.loads(raw)
            if "method" in msg:
                self._handle_event(msg)

    def _wait_for_event(self, name: str, timeout: float) -> dict | None:
        deadline = time.monotonic() + timeout
        while True:
            for event in self._events:
                if event["method"] == name:
                    self._events.remove(event)
                    return event
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                return None
            assert self._ws is not None
            try:
                raw = self._ws.recv(timeout=remaining)
            except TimeoutError:
                return None
            msg = json.loads(raw)
            if "method" in msg:
                self._handle_event(msg)

    def _handle_event(self, msg: dict) -> None:
        method = msg.get("method", "")
        if method == "Network.requestWillBeSent":
            request = msg["params"]["request"]
            host = urlsplit(request["url"]).hostname or ""
            from ..detectors.filterlist import registrable_domain

            self._requests.append(
                RequestRecord(
                    url=request["url"],
                    method=request.get("method", "GET"),
                    phase=self._phase,
                    is_third_party=bool(self._page_host)
                    and registrable_domain(host) != registrable_domain(self._page_host),
                )
            )
        elif method in ("Page.loadEventFired",):
            self._events.append(msg)

    # -- session interface ------------------------------------------------------

    _phase: Phase = Phase.INITIAL_LOAD

    def capture_page(self, url: str, config: CaptureConfig) -> PageSnapshot:
        self._ensure_started(config)
        self._requests = []
        self._events = []
        self._phase = Phase.INITIAL_LOAD
        self._page_host = urlsplit(url).hostname or ""
        self._current_url = url

        start = time.monotonic()
        result = self._call("Page.navigate", {"url": url}, session=True, timeout=config.page_timeout)
        if result.get("errorText"):
            raise _classify_net_error(result["errorText"])
        loaded = self._wait_for_event(
            "Page.loadEventFired", config.page_timeout - (time.monotonic() - start)
        )
        if loaded is None:
            raise CaptureError(ErrorKind.TIMEOUT, f"no load event within {config.page_timeout}s")
        self._pump_events(config.settle_wait)

        if config.suppress_media:
            self._evaluate(
                "(() => { const s = document.createElement('style');"
                f"s.textContent = {json.dumps(_MEDIA_CSS)};"
                "document.documentElement.appendChild(s); })()"
            )

        nodes = self._extract_dom()
        screenshot = self._screenshot(config.viewport)
        cookies = self._get_cookies(Phase.INITIAL_LOAD)
        snap = PageSnapshot(
            url=url,
            fetched_at=datetime.now(timezone.utc),
            viewport=config.viewport,
            nodes=nodes,
            screenshot=screenshot,
            cookies=cookies,
            requests=list(self._requests),
        )
        self.pages_captured += 1
        return snap

    def clear_state(self) -> None:
        if self._ws is None:
            return
        self._call("Network.clearBrowserCookies", {}, session=True)
        self._call("Network.clearBrowserCache", {}, session=True)
        try:
            self._evaluate(
                "(() => { try { localStorage.clear(); sessionStorage.clear(); } catch (e) {} })()"
            )
        except CaptureError:
            pass

    def click_and_capture(self, clickable, config: CaptureConfig) -> PostClickCapture:
        if self._ws is None:
            raise CaptureError(ErrorKind.SCANNER_FAILURE, "no page loaded")
        cookies_before = {
            (c.domain, c.name) for c in self._get_cookies(Phase.INITIAL_LOAD)
        }
        requests_before = len(self._requests)
        self._phase = Phase.POST_CLICK

        cx = clickable.bbox.x + clickable.bbox.w / 2
        cy = clickable.bbox.y + clickable.bbox.h / 2
        for event_type in ("mousePressed", "mouseReleased"):
            self._call(
                "Input.dispatchMouseEvent",
                {
                    "type": event_type,
                    "x": cx,
                    "y": cy,
                    "button": "left",
                    "clickCount": 1,
                },
                session=True,
            )
        self._pump_events(config.settle_wait)

        screenshot = self._screenshot(config.viewport)
        cookies_after = self._get_cookies(Phase.POST_CLICK)
        new_cookies = [c for c in cookies_after if (c.domain, c.name) not in cookies_before]
        page_text = normalize_text(str(self._evaluate(_BODY_TEXT_JS) or ""))
        url_after = str(self._evaluate("location.href") or self._current_url)
        return PostClickCapture(
            screenshot=screenshot,
            cookies=new_cookies,
            requests=self._requests[requests_before:],
            page_text=page_text,
            url=url_after,
        )

    # -- extraction helpers -------------------------------------------------------

    def _evaluate(self, expression: str):
        result = self._call(
            "Runtime.evaluate",
            {"expression": expression, "returnByValue": True},
            session=True,
            timeout=60.0,
        )
        if "exceptionDetails" in result:
            raise CaptureError(
                ErrorKind.SCANNER_FAILURE,
                f"evaluate failed: {result['exceptionDetails'].get('text')}",
            )
        return result.get("result", {}).get("value")

    def _extract_dom(self) -> list[DomNode]:
        raw = self._evaluate(_DOM_WALKER_JS)
        entries = json.loads(raw)
        nodes: list[DomNode] = []
        eff_z: list[int] = []
        for i, entry in enumerate(entries):
            parent = entry["parent"]
            z_raw = entry.get("zIndex", "auto")
            if z_raw == "auto" or z_raw is None:
                z = eff_z[parent] if parent is not None else 0
            else:
                try:
                    z = int(z_raw)
                except ValueError:
                    z = eff_z[parent] if parent is not None else 0
            eff_z.append(z)
            x, y, w, h = entry["rect"]
            visible = not entry["hidden"] and w > 0 and h > 0
            nodes.append(
                DomNode(
                    node_id=i,
                    parent_id=parent,
                    tag=entry["tag"],
                    attributes=dict(entry["attrs"]),
                    own_text=normalize_text(entry.get("ownText", "")),
                    bbox=BBox(float(x), float(y), float(w), float(h)),
                    z_index=z,
                    visible=visible,
                    cursor_style=entry.get("cursor", "auto"),
                )
            )
        return nodes

    def _screenshot(self, viewport: Viewport) -> np.ndarray:
        result = self._call(
            "Page.captureScreenshot",
            {"format": "png", "fromSurface": True},
            session=True,
            timeout=60.0,
        )
        data = base64.b64decode(result["data"])
        with Image.open(io.BytesIO(data)) as im:
            array = np.asarray(im.convert("RGB"), dtype=np.uint8)
        h, w = array.shape[:2]
        out = np.full((viewport.height_px, viewport.width_px, 3), 255, dtype=np.uint8)
        ch, cw = min(h, viewport.height_px), min(w, viewport.width_px)
        out[:ch, :cw] = array[:ch, :cw]
        return out

    def _get_cookies(self, phase: Phase) -> list[CookieRecord]:
        result = self._call("Network.getCookies", {}, session=True)
        return [
            CookieRecord(
                name=c["name"],
                value=c.get("value", ""),
                domain=c.get("domain", ""),
                path=c.get("path", "/"),
                expires=c.get("expires") if c.get("expires", -1) >= 0 else None,
                set_at_phase=phase,
            )
            for c in result.get("cookies", [])
        ]
