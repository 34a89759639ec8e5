"""Clickable extraction/classification and the clear-reload-click protocol.

A clickable is any visible element a user could plausibly activate: the
cursor turns into a pointer over it, or it is one of the intrinsically
interactive tags. Each clickable is classified as checkbox, link, or
button; checkboxes are observed but never clicked because toggling them
changes consent state ambiguously.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, TYPE_CHECKING
from urllib.parse import urldefrag, urljoin

import numpy as np

from .geometry import BBox
from .snapshot import CookieRecord, PageSnapshot, RequestRecord, normalize_text, subtree_text

if TYPE_CHECKING:
    from .capture.session import BrowserSession, CaptureConfig
    from .detectors.results import DetectionResult

logger = logging.getLogger(__name__)

_INPUT_CLICKABLE_TYPES = {"button", "submit", "checkbox", "radio"}


class ClickableKind(str, Enum):
    BUTTON = "button"
    LINK = "link"
    CHECKBOX = "checkbox"


@dataclass
class Clickable:
    node_id: int
    kind: ClickableKind
    text: str
    bbox: BBox
    checked: bool | None = None  # checkboxes only
    href_target: str | None = None  # links only
    dominant_color: tuple[int, int, int] | None = None  # filled by analysis

    def to_dict(self) -> dict:
        return {
            "node_id": self.node_id,
            "kind": self.kind.value,
            "text": self.text,
            "bbox": list(self.bbox.as_tuple()),
            "checked": self.checked,
            "href_target": self.href_target,
            "dominant_color": list(self.dominant_color) if self.dominant_color else None,
        }


@dataclass
class ClickOutcome:
    """Result of one clear-reload-click cycle for a single clickable."""

    clickable: Clickable
    post_screenshot: np.ndarray | None = None
    post_screenshot_ref: str = ""
    ssim_vs_initial: float | None = None
    cookies_delta: list[CookieRecord] = field(default_factory=list)
    requests_delta: list[RequestRecord] = field(default_factory=list)
    post_text: str = ""
    url_after: str = ""
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "clickable": self.clickable.to_dict(),
            "post_screenshot_ref": self.post_screenshot_ref,
            "ssim_vs_initial": self.ssim_vs_initial,
            "cookies_delta": [
                {"name": c.name, "value": c.value, "domain": c.domain, "path": c.path}
                for c in self.cookies_delta
            ],
            "requests_delta": [
                {"url": r.url, "method": r.method, "is_third_party": r.is_third_party}
                for r in self.requests_delta
            ],
            "post_text": self.post_text,
            "url_after": self.url_after,
            "error": self.error,
        }


def is_clickable_node(snapshot: PageSnapshot, node_id: int) -> bool:
    node = snapshot.node(node_id)
    if not node.visible:
        return False
    if node.cursor_style == "pointer":
        return True
    if node.tag in ("button", "a"):
        return True
    if node.tag == "input":
        return node.attributes.get("type", "text").lower() in _INPUT_CLICKABLE_TYPES
    return False


def _has_checked_marker(snapshot: PageSnapshot, node_id: int) -> tuple[bool, bool]:
    """(marker present on node or any descendant, extracted checked value)."""
    for nid in snapshot.subtree_ids(node_id):
        attrs = snapshot.node(nid).attributes
        if "checked" in attrs:
            return True, True
        if "aria-checked" in attrs:
            return True, attrs["aria-checked"].strip().lower() == "true"
    return False, False


def classify_clickable(snapshot: PageSnapshot, node_id: int) -> Clickable:
    """Decide whether a clickable is a checkbox, a link, or a button.

    Checkbox: carries checked/aria-checked (self or descendant) or is an
    input of checkbox/radio type. Link: carries an href that resolves to a
    different document; bare fragments, empty hrefs and javascript: hrefs
    act as buttons. Everything else is a button.
    """
    node = snapshot.node(node_id)
    text = subtree_text(snapshot, node_id)
    if not text and node.tag == "input":
        text = normalize_text(node.attributes.get("value", ""))
    base = Clickable(node_id=node_id, kind=ClickableKind.BUTTON, text=text, bbox=node.bbox)

    marker, checked = _has_checked_marker(snapshot, node_id)
    if marker:
        return replace(base, kind=ClickableKind.CHECKBOX, checked=checked)
    if node.tag == "input" and node.attributes.get("type", "").lower() in ("checkbox", "radio"):
        return replace(base, kind=ClickableKind.CHECKBOX, checked=False)

    href = node.attributes.get("href", "").strip()
    if node.tag == "a" and href and href != "#" and not href.lower().startswith("javascript:"):
        # Only hrefs leading to a different document count as links.
        target = urljoin(snapshot.url, href)
        if urldefrag(target)[0] != urldefrag(snapshot.url)[0]:
            return replace(base, kind=ClickableKind.LINK, href_target=target)
    return base


def extract_clickables(snapshot: PageSnapshot, notice_node: int) -> list[Clickable]:
    """All visible clickable descendants of the notice, outermost only,
    in document order."""
    snapshot.node(notice_node)
    ids = [nid for nid in snapshot.subtree_ids(notice_node) if nid != notice_node]
    clickable_ids = [nid for nid in ids if is_clickable_node(snapshot, nid)]
    clickable_set = set(clickable_ids)

    def has_clickable_ancestor(nid: int) -> bool:
        cur = snapshot.node(nid).parent_id
        while cur is not None and cur != notice_node:
            if cur in clickable_set:
                return True
            cur = snapshot.node(cur).parent_id
        return False

    outermost = [nid for nid in clickable_ids if not has_clickable_ancestor(nid)]
    outermost.sort(key=snapshot.doc_order)
    return [classify_clickable(snapshot, nid) for nid in outermost]


def subtree_has_button(snapshot: PageSnapshot, node_id: int) -> bool:
    """True when the subtree rooted at node_id (inclusive) contains an
    element that classifies as a button."""
    for nid in snapshot.subtree_ids(node_id):
        if is_clickable_node(snapshot, nid):
            if classify_clickable(snapshot, nid).kind == ClickableKind.BUTTON:
                return True
    return False


def find_clickable_by_text(
    snapshot: PageSnapshot, notice_node: int, text: str
) -> Clickable | None:
    """Exact normalized-text lookup inside a notice; ties break by document
    order. Node ids are deliberately not used: they are not stable across
    page reloads."""
    wanted = normalize_text(text)
    for c in extract_clickables(snapshot, notice_node):
        if c.text == wanted:
            return c
    return None


def interact_all(
    url: str,
    session: "BrowserSession",
    stage1_snapshot: PageSnapshot,
    notice_result: "DetectionResult",
    redetect: Callable[[PageSnapshot], "DetectionResult | None"],
    config: "CaptureConfig",
    ssim_fn: Callable[[np.ndarray, np.ndarray], float] | None = None,
    clickables: list[Clickable] | None = None,
) -> list[ClickOutcome]:
    """Run the per-clickable protocol: clear state, reload, re-detect the
    notice, locate the clickable by text, click, and record the post state.

    Checkboxes are recorded upstream but skipped here; per-clickable
    failures are recorded in the outcome and never abort the sequence.
    """
    from .capture.session import CaptureError

    if clickables is None:
        clickables = extract_clickables(stage1_snapshot, notice_result.node_id)
    to_click = [c for c in clickables if c.kind in (ClickableKind.BUTTON, ClickableKind.LINK)]
    outcomes: list[ClickOutcome] = []

    for clickable in to_click:
        outcome = ClickOutcome(clickable=clickable)
        try:
            session.clear_state()
            fresh = session.capture_page(url, config)
            renotice = redetect(fresh)
            if renotice is None:
                outcome.error = "renotice_not_found"
                outcomes.append(outcome)
                continue
            located = find_clickable_by_text(fresh, renotice.node_id, clickable.text)
            if located is None:
                outcome.error = "element_not_found"
                outcomes.append(outcome)
                continue
            post = session.click_and_capture(located, config)
            outcome.post_screenshot = post.screenshot
            outcome.cookies_delta = post.cookies
            outcome.requests_delta = post.requests
            outcome.post_text = post.page_text
            outcome.url_after = post.url
            if ssim_fn is not None and post.screenshot is not None:
                outcome.ssim_vs_initial = ssim_fn(post.screenshot, stage1_snapshot.screenshot)
        except CaptureError as exc:
            outcome.error = f"{exc.kind.value}: {exc.detail}"
        except Exception as exc:  # isolate unexpected per-clickable failures
            logger.warning("click on %r failed: %s", clickable.text, exc)
            outcome.error = f"click_failed: {exc}"
        outcomes.append(outcome)
    return outcomes
