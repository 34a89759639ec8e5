"""Method 1: keyword search plus upward DOM walk.

Find all in-viewport nodes whose own text mentions a keyword, start from
the hit with the longest subtree text, and ascend until a level whose
subtree contains a button, or until the next parent would be the body.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..geometry import BBox
from ..snapshot import PageSnapshot, subtree_text
from ..interaction import subtree_has_button
from .results import DetectionResult, Method, make_result


@dataclass(frozen=True)
class KeywordConfig:
    keywords: tuple[str, ...] = ("cookie",)
    case_insensitive: bool = True  # matching is always case-insensitive

    def __post_init__(self) -> None:
        if not self.keywords or any(not k for k in self.keywords):
            raise ValueError("keywords must be a non-empty list of non-empty strings")

    @classmethod
    def from_file(cls, path) -> "KeywordConfig":
        """One keyword per line; blank lines and '#' comments skipped."""
        words = []
        for line in open(path, encoding="utf-8"):
            line = line.strip()
            if line and not line.startswith("#"):
                words.append(line.lower())
        return cls(keywords=tuple(words))


@dataclass(frozen=True)
class KeywordHit:
    node_id: int
    word_count: int
    x: float
    y: float


def find_keyword_hits(snapshot: PageSnapshot, kw: KeywordConfig) -> list[KeywordHit]:
    """Visible nodes whose own text contains any keyword, restricted to
    nodes whose bbox intersects the viewport. word_count is taken over the
    whole subtree text since notices split their text across children."""
    viewport_box = BBox(0, 0, snapshot.viewport.width_px, snapshot.viewport.height_px)
    needles = [k.lower() for k in kw.keywords]
    hits = []
    for node in snapshot.nodes:
        if not node.visible:
            continue
        text = node.own_text.lower()
        if not text or not any(n in text for n in needles):
            continue
        if not node.bbox.intersects(viewport_box):
            continue
        words = len(subtree_text(snapshot, node.node_id).split())
        hits.append(KeywordHit(node.node_id, words, node.bbox.x, node.bbox.y))
    return hits


def walk_up(snapshot: PageSnapshot, start_node: int) -> int:
    """Ascend from start_node until the current level's subtree contains a
    button or the parent is the body. Never returns body or html, and never
    ascends into a zero-area parent."""
    node = snapshot.node(start_node)
    if node.tag in ("body", "html"):
        raise ValueError(f"walk_up cannot start at <{node.tag}>")
    current = start_node
    while True:
        if subtree_has_button(snapshot, current):
            return current
        parent = snapshot.parent_of(current)
        if parent is None or parent.tag in ("body", "html"):
            return current
        if parent.bbox.area == 0:
            return current
        current = parent.node_id


def detect_domwalk(
    snapshot: PageSnapshot, kw: KeywordConfig | None = None
) -> DetectionResult | None:
    """Walk up from the keyword hit with the most subtree words; ties break
    toward the smaller node id. Hits directly on body/html cannot seed a
    walk and are skipped."""
    kw = kw or KeywordConfig()
    hits = find_keyword_hits(snapshot, kw)
    hits.sort(key=lambda h: (-h.word_count, h.node_id))
    for hit in hits:
        if snapshot.node(hit.node_id).tag in ("body", "html"):
            continue
        notice = walk_up(snapshot, hit.node_id)
        return make_result(snapshot, Method.DOMWALK, notice, confidence=1.0)
    return None
