"""Local HTTP server for the fixture corpus.

Serves each fixture at /f/<id> with its behavior quirks: cookie-aware
banner suppression, the once-per-reset banner, the alternating content
block that defeats screenshot comparison, a /slow endpoint for timeout
tests, and a tracking pixel for third-party request tests.
"""

from __future__ import annotations

import json
import re
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .corpus import FIXTURES, TRUTH_VIEWPORT, fixture_by_id

_PIXEL_GIF = (
    b"GIF89a\x01\x00\x01\x00\x80\x00\x00\x00\x00\x00\xff\xff\xff!\xf9\x04"
    b"\x01\x00\x00\x00\x00,\x00\x00\x00\x00\x01\x00\x01\x00\x00\x02\x02D"
    b"\x01\x00;"
)

# fixture id -> cookie name whose presence suppresses the banner
_CONSENT_COOKIES = {
    "F01": "consent",
    "F02": "consent",
    "F03": "choice",
    "F08": "c",
    "F09": "cookieconsent_status",
    "F10": "viewed_cookie_policy",
}

_AD_COLORS = ("#101010", "#f0f0f0")  # alternating high-contrast pair


def _strip_banner(html: str) -> str:
    """Remove the notice container (balanced-div aware) from a page."""
    marker = 'data-truth="notice"'
    start = html.find(marker)
    if start == -1:
        return html
    open_idx = html.rfind("<div", 0, start)
    depth = 0
    i = open_idx
    while i < len(html):
        if html.startswith("<div", i):
            depth += 1
            i += 4
        elif html.startswith("</div>", i):
            depth -= 1
            i += 6
            if depth == 0:
                return html[:open_idx] + html[i:]
        else:
            i += 1
    return html


class _Handler(BaseHTTPRequestHandler):
    server_version = "FixtureServer/1.0"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet
        pass

    # state lives on the server object
    def _state(self):
        return self.server  # type: ignore[return-value]

    def do_GET(self):  # noqa: N802
        parts = urlsplit(self.path)
        path = parts.path
        query = parse_qs(parts.query)

        if path == "/slow":
            seconds = float(query.get("s", ["120"])[0])
            time.sleep(seconds)
            self._send_html("<html><body><p>Finally awake.</p></body></html>")
            return
        if path == "/pixel.gif":
            self._send_bytes(_PIXEL_GIF, "image/gif")
            return
        if path == "/reset":
            self._state().counters.clear()
            self._send_html("<html><body>reset</body></html>")
            return
        if path == "/manifest.json":
            manifest = {
                "truth_viewport": list(TRUTH_VIEWPORT),
                "fixtures": [
                    {
                        "id": f.id,
                        "behavior": f.behavior.value,
                        "path": f"/f/{f.id}",
                        "truth": f.truth.to_dict(),
                    }
                    for f in FIXTURES
                ],
            }
            self._send_bytes(json.dumps(manifest, indent=2).encode("utf-8"), "application/json")
            return
        if path == "/f/F08/declined":
            html = self._render_fixture("F08", strip_banner=True)
            self._send_html(html)
            return
        if path.startswith("/f/"):
            fixture_id = path[3:]
            try:
                fixture_by_id(fixture_id)
            except KeyError:
                self.send_error(404, "no such fixture")
                return
            self._send_fixture(fixture_id)
            return
        self.send_error(404)

    def _send_fixture(self, fixture_id: str) -> None:
        state = self._state()
        with state.lock:
            state.counters[fixture_id] = state.counters.get(fixture_id, 0) + 1
            count = state.counters[fixture_id]

        strip = False
        cookie_name = _CONSENT_COOKIES.get(fixture_id)
        if cookie_name:
            cookie_header = self.headers.get("Cookie", "")
            if re.search(rf"(?:^|;\s*){re.escape(cookie_name)}=", cookie_header):
                strip = True
        fixture = fixture_by_id(fixture_id)
        if fixture.behavior.value == "once_per_session" and count > 1:
            strip = True

        html = self._render_fixture(fixture_id, strip_banner=strip, count=count)
        headers = []
        if fixture_id == "N01":
            headers.append(("Set-Cookie", "session=abc123; Path=/"))
        self._send_html(html, extra_headers=headers)

    def _render_fixture(self, fixture_id: str, strip_banner: bool = False, count: int = 1) -> str:
        fixture = fixture_by_id(fixture_id)
        html = fixture.html
        state = self._state()
        html = html.replace("{{ALT_ORIGIN}}", state.alt_origin)
        if "{{AD_COLOR}}" in html:
            html = html.replace("{{AD_COLOR}}", _AD_COLORS[count % len(_AD_COLORS)])
            html = html.replace("{{AD_TEXT}}", f"sponsored block {count:04d} rotation")
        if strip_banner:
            html = _strip_banner(html)
        return html

    def _send_html(self, html: str, extra_headers: list[tuple[str, str]] | None = None) -> None:
        body = html.encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "text/html; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        for name, value in extra_headers or []:
            self.send_header(name, value)
        self.end_headers()
        self.wfile.write(body)

    def _send_bytes(self, body: bytes, content_type: str) -> None:
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class _QuietServer(ThreadingHTTPServer):
    def handle_error(self, request, client_address):
        # Clients time out on /slow by design; a broken pipe is expected.
        pass


class FixtureServer:
    """Threaded fixture server; use as a context manager in tests."""

    def __init__(self, port: int = 0, host: str = "127.0.0.1"):
        self.httpd = _QuietServer((host, port), _Handler)
        self.httpd.daemon_threads = True
        self.httpd.counters = {}  # type: ignore[attr-defined]
        self.httpd.lock = threading.Lock()  # type: ignore[attr-defined]
        self.host = host
        self.port = self.httpd.server_address[1]
        # Same server reachable under another hostname: requests to it are
        # third-party by registrable-domain comparison.
        alt_host = "localhost" if host == "127.0.0.1" else "127.0.0.1"
        self.httpd.alt_origin = f"{alt_host}:{self.port}"  # type: ignore[attr-defined]
        self._thread: threading.Thread | None = None

    @property
    def base_url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def url_for(self, fixture_id: str) -> str:
        return f"{self.base_url}/f/{fixture_id}"

    def reset(self) -> None:
        self.httpd.counters.clear()  # type: ignore[attr-defined]

    def start(self) -> "FixtureServer":
        self._thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None

    def __enter__(self) -> "FixtureServer":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()
