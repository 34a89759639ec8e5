"""BuiltinSession: a browser-free BrowserSession implementation.

Fetches over plain HTTP with the session cookie jar, parses and lays out
the document, and rasterizes screenshots. Click behavior is declarative:
fixture elements carry data-click-hide / data-click-set-cookie attributes
(pages meant for real browsers carry equivalent inline JS), and anchors
with cross-document hrefs navigate.
"""

from __future__ import annotations

import socket
import time
import urllib.error
import urllib.request
from datetime import datetime, timezone
from http.client import HTTPException
from urllib.parse import urljoin, urlsplit

import numpy as np

from ...geometry import BBox
from ...snapshot import (
    CookieRecord,
    DomNode,
    PageSnapshot,
    Phase,
    RequestRecord,
    normalize_text,
)
from ..session import CaptureConfig, CaptureError, ErrorKind, PostClickCapture
from .htmlparse import Element, parse_html
from .layout import LayoutBox, Layouter, iter_boxes

_SUBRESOURCE_TIMEOUT = 5.0


def _host_of(url: str) -> str:
    return urlsplit(url).hostname or ""


def _registrable(host: str) -> str:
    from ...detectors.filterlist import registrable_domain

    return registrable_domain(host)


class BuiltinSession:
    """One logical browsing session: cookie jar plus the current page."""

    def __init__(self) -> None:
        self.cookies: dict[tuple[str, str], CookieRecord] = {}
        self._page: _LoadedPage | None = None
        self.pages_captured = 0

    # -- session interface --------------------------------------------------

    def capture_page(self, url: str, config: CaptureConfig) -> PageSnapshot:
        deadline = time.monotonic() + config.page_timeout
        page = self._load(url, config, deadline, phase=Phase.INITIAL_LOAD)
        time.sleep(min(config.settle_wait, max(deadline - time.monotonic(), 0.0)))
        self._page = page
        self.pages_captured += 1
        return page.snapshot(config)

    def clear_state(self) -> None:
        self.cookies.clear()
        self._page = None

    def click_and_capture(self, clickable, config: CaptureConfig) -> PostClickCapture:
        if self._page is None:
            raise CaptureError(ErrorKind.SCANNER_FAILURE, "no page loaded")
        page = self._page
        target = page.element_by_node_id(clickable.node_id)
        if target is None:
            raise CaptureError(ErrorKind.SCANNER_FAILURE, f"stale node id {clickable.node_id}")

        cookies_before = set(self.cookies)
        requests: list[RequestRecord] = []

        nav_href = None
        for el in _self_and_ancestors(target):
            href = el.attrs.get("href", "").strip()
            if el.tag == "a" and href and href != "#" and not href.lower().startswith("javascript:"):
                nav_href = urljoin(page.url, href)
                break

        if nav_href is not None:
            deadline = time.monotonic() + config.page_timeout
            page = self._load(nav_href, config, deadline, phase=Phase.POST_CLICK)
            self._page = page
            requests.extend(page.requests)
        else:
            self._apply_click_behaviors(target, page)
            page.relayout(config)

        time.sleep(config.settle_wait)
        new_cookies = [self.cookies[k] for k in self.cookies if k not in cookies_before]
        return PostClickCapture(
            screenshot=page.render(config),
            cookies=new_cookies,
            requests=requests,
            page_text=page.body_text(),
            url=page.url,
        )

    def close(self) -> None:
        self._page = None

    # -- behaviors -----------------------------------------------------------

    def _apply_click_behaviors(self, target: Element, page: "_LoadedPage") -> None:
        carrier = None
        for el in _self_and_ancestors(target):
            if "data-click-hide" in el.attrs or "data-click-set-cookie" in el.attrs:
                carrier = el
                break
        if carrier is None:
            return
        hide = carrier.attrs.get("data-click-hide", "")
        for element_id in filter(None, (s.strip() for s in hide.split(","))):
            for el in page.html.iter_tree():
                if el.attrs.get("id") == element_id:
                    style = el.attrs.get("style", "")
                    el.attrs["style"] = (style.rstrip("; ") + ";display:none").lstrip(";")
        cookie_spec = carrier.attrs.get("data-click-set-cookie", "")
        if cookie_spec and "=" in cookie_spec:
            name, _, value = cookie_spec.partition("=")
            self._store_cookie(page.url, name.strip(), value.strip(), Phase.POST_CLICK)

    def _store_cookie(self, url: str, name: str, value: str, phase: Phase) -> None:
        host = _host_of(url)
        self.cookies[(host, name)] = CookieRecord(
            name=name, value=value, domain=host, path="/", expires=None, set_at_phase=phase
        )

    # -- networking -----------------------------------------------------------

    def _load(
        self, url: str, config: CaptureConfig, deadline: float, phase: Phase
    ) -> "_LoadedPage":
        body, final_url, requests = self._fetch_document(url, config, deadline, phase)
        html = parse_html(body)
        page = _LoadedPage(session=self, url=final_url, html=html, requests=requests)
        self._fetch_subresources(page, config, phase)
        page.relayout(config)
        return page

    def _fetch_document(
        self, url: str, config: CaptureConfig, deadline: float, phase: Phase
    ) -> tuple[str, str, list[RequestRecord]]:
        page_host = _host_of(url)
        requests: list[RequestRecord] = []
        current = url
        for _ in range(6):
            timeout = deadline - time.monotonic()
            if timeout <= 0:
                raise CaptureError(ErrorKind.TIMEOUT, f"page timeout while loading {current}")
            requests.append(
                RequestRecord(
                    url=current,
                    method="GET",
                    phase=phase,
                    is_third_party=_registrable(_host_of(current)) != _registrable(page_host),
                )
            )
            try:
                req = urllib.request.Request(
                    current,
                    headers={
                        "User-Agent": config.user_agent,
                        **self._cookie_header(_host_of(current)),
                    },
                )
                opener = urllib.request.build_opener(_NoRedirect)
                with opener.open(req, timeout=timeout) as resp:
                    self._record_set_cookies(current, resp.headers.get_all("Set-Cookie") or [], phase)
                    if resp.status in (301, 302, 303, 307, 308):
                        location = resp.headers.get("Location")
                        if not location:
                            raise CaptureError(ErrorKind.SCANNER_FAILURE, "redirect without location")
                        current = urljoin(current, location)
                        continue
                    charset = resp.headers.get_content_charset() or "utf-8"
                    return resp.read().decode(charset, errors="replace"), current, requests
            except urllib.error.HTTPError as exc:
                self._record_set_cookies(current, exc.headers.get_all("Set-Cookie") or [], phase)
                if exc.status in (301, 302, 303, 307, 308):
                    location = exc.headers.get("Location")
                    if location:
                        current = urljoin(current, location)
                        continue
                body = exc.read().decode("utf-8", errors="replace")
                return body, current, requests
            except urllib.error.URLError as exc:
                raise _classify_url_error(exc, current) from exc
            except socket.timeout as exc:
                raise CaptureError(ErrorKind.TIMEOUT, f"{current} timed out") from exc
            except TimeoutError as exc:
                raise CaptureError(ErrorKind.TIMEOUT, f"{current} timed out") from exc
            except socket.gaierror as exc:
                raise CaptureError(ErrorKind.DNS_UNRESOLVED, str(exc)) from exc
            except ConnectionError as exc:
                raise CaptureError(ErrorKind.UNREACHABLE, str(exc)) from exc
            except (HTTPException, OSError) as exc:
                raise CaptureError(ErrorKind.SCANNER_FAILURE, str(exc)) from exc
        raise CaptureError(ErrorKind.SCANNER_FAILURE, f"redirect loop at {current}")

    def _fetch_subresources(self, page: "_LoadedPage", config: CaptureConfig, phase: Phase) -> None:
        """GET img/script resources so the request log mirrors a real
        browser; responses are discarded and failures ignored."""
        page_host = _host_of(page.url)
        seen: set[str] = set()
        for el in page.html.iter_tree():
            if el.tag not in ("img", "script") or not el.attrs.get("src"):
                continue
            src = urljoin(page.url, el.attrs["src"])
            if src in seen:
                continue
            seen.add(src)
            page.requests.append(
                RequestRecord(
                    url=src,
                    method="GET",
                    phase=phase,
                    is_third_party=_registrable(_host_of(src)) != _registrable(page_host),
                )
            )
            try:
                req = urllib.request.Request(src, headers={"User-Agent": config.user_agent})
                with urllib.request.urlopen(req, timeout=_SUBRESOURCE_TIMEOUT) as resp:
                    resp.read(65536)
            except Exception:
                pass

    def _cookie_header(self, host: str) -> dict[str, str]:
        pairs = [f"{c.name}={c.value}" for (h, _), c in self.cookies.items() if h == host]
        return {"Cookie": "; ".join(pairs)} if pairs else {}

    def _record_set_cookies(self, url: str, headers: list[str], phase: Phase) -> None:
        for header in headers:
            main = header.split(";", 1)[0]
            if "=" in main:
                name, _, value = main.partition("=")
                self._store_cookie(url, name.strip(), value.strip(), phase)


class _NoRedirect(urllib.request.HTTPRedirectHandler):
    def redirect_request(self, req, fp, code, msg, headers, newurl):
        return None


def _self_and_ancestors(el: Element):
    cur: Element | None = el
    while cur is not None:
        yield cur
        cur = cur.parent


def _classify_url_error(exc: urllib.error.URLError, url: str) -> CaptureError:
    reason = exc.reason
    if isinstance(reason, socket.gaierror):
        return CaptureError(ErrorKind.DNS_UNRESOLVED, f"{url}: {reason}")
    if isinstance(reason, (socket.timeout, TimeoutError)):
        return CaptureError(ErrorKind.TIMEOUT, f"{url} timed out")
    if isinstance(reason, ConnectionError):
        return CaptureError(ErrorKind.UNREACHABLE, f"{url}: {reason}")
    if isinstance(reason, OSError) and reason.errno in (101, 111, 112, 113):
        return CaptureError(ErrorKind.UNREACHABLE, f"{url}: {reason}")
    return CaptureError(ErrorKind.SCANNER_FAILURE, f"{url}: {reason}")


class _LoadedPage:
    """Parsed document plus its current layout and node enumeration."""

    def __init__(
        self,
        session: BuiltinSession,
        url: str,
        html: Element,
        requests: list[RequestRecord],
    ) -> None:
        self.session = session
        self.url = url
        self.html = html
        self.requests = requests
        self.root_box: LayoutBox | None = None
        self._boxes_by_element: dict[int, LayoutBox] = {}
        self._node_ids: dict[int, int] = {}  # id(element) -> node id
        self._elements: list[Element] = []
        self._viewport = None
        self._suppress = True

    def relayout(self, config: CaptureConfig) -> None:
        self._viewport = config.viewport
        self._suppress = config.suppress_media
        layouter = Layouter(config.viewport, suppress_media=config.suppress_media)
        self.root_box = layouter.layout(self.html)
        self._boxes_by_element = {id(b.element): b for b in iter_boxes(self.root_box)}
        self._elements = list(self.html.iter_tree())
        self._node_ids = {id(el): i for i, el in enumerate(self._elements)}

    def render(self, config: CaptureConfig) -> np.ndarray:
        from .render import render

        assert self.root_box is not None
        return render(self.root_box, config.viewport, suppress_media=config.suppress_media)

    def element_by_node_id(self, node_id: int) -> Element | None:
        if 0 <= node_id < len(self._elements):
            return self._elements[node_id]
        return None

    def body_text(self) -> str:
        parts = []
        body = next((e for e in self.html.iter_tree() if e.tag == "body"), self.html)
        for el in body.iter_tree():
            box = self._boxes_by_element.get(id(el))
            if box is not None and not box.visible and box.style.display == "none":
                continue
            raw = el.own_text_raw()
            if raw.strip():
                parts.append(normalize_text(raw))
        return normalize_text(" ".join(parts))

    def snapshot(self, config: CaptureConfig) -> PageSnapshot:
        assert self.root_box is not None
        nodes: list[DomNode] = []
        for i, el in enumerate(self._elements):
            box = self._boxes_by_element.get(id(el))
            parent_id = self._node_ids.get(id(el.parent)) if el.parent is not None else None
            if box is None:
                bbox, visible, eff_z, cursor = BBox(0, 0, 0, 0), False, 0, "auto"
            else:
                bbox = BBox(box.x, box.y, box.w, box.h)
                visible = box.visible and bbox.area > 0
                eff_z = box.eff_z
                cursor = box.style.cursor
            nodes.append(
                DomNode(
                    node_id=i,
                    parent_id=parent_id,
                    tag=el.tag,
                    attributes=dict(el.attrs),
                    own_text=normalize_text(el.own_text_raw()),
                    bbox=bbox,
                    z_index=eff_z,
                    visible=visible,
                    cursor_style=cursor,
                )
            )
        snap = PageSnapshot(
            url=self.url,
            fetched_at=datetime.now(timezone.utc),
            viewport=config.viewport,
            nodes=nodes,
            screenshot=self.render(config),
            cookies=list(self.session.cookies.values()),
            requests=list(self.requests),
        )
        snap.validate()
        return snap
