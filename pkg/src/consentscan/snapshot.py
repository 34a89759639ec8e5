"""Page snapshot data model and on-disk serialization.

A snapshot is the immutable, offline unit every detector consumes: the DOM
tree with recorded layout geometry, the full-viewport screenshot, and the
cookies/requests observed while loading. Snapshots are written as a JSON
document plus a lossless PNG sidecar so fixtures stay human-inspectable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import numpy as np
from PIL import Image

from .geometry import BBox

SCHEMA_VERSION = 1

_WHITESPACE = re.compile(r"\s+")


def normalize_text(text: str) -> str:
    """Collapse whitespace runs to single spaces and trim."""
    return _WHITESPACE.sub(" ", text).strip()


class SnapshotError(Exception):
    """Raised for invariant violations and schema mismatches."""


class Phase(str, Enum):
    INITIAL_LOAD = "initial_load"
    POST_CLICK = "post_click"


@dataclass(frozen=True)
class Viewport:
    width_px: int
    height_px: int

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0:
            raise SnapshotError(f"viewport must be positive, got {self.width_px}x{self.height_px}")

    @property
    def area(self) -> float:
        return float(self.width_px) * float(self.height_px)


@dataclass(frozen=True)
class DomNode:
    """One element of the recorded DOM.

    ``z_index`` holds the effective stacking value: a node whose computed
    z-index is auto inherits the nearest ancestor stacking-context value,
    and 0 means no ancestor declared one. ``own_text`` is the text directly
    under the node (not its descendants), whitespace-normalized.
    """

    node_id: int
    parent_id: int | None
    tag: str
    attributes: dict[str, str] = field(default_factory=dict)
    own_text: str = ""
    bbox: BBox = BBox(0, 0, 0, 0)
    z_index: int = 0
    visible: bool = True
    cursor_style: str = "auto"


@dataclass(frozen=True)
class CookieRecord:
    name: str
    value: str
    domain: str
    path: str
    expires: float | None = None
    set_at_phase: Phase = Phase.INITIAL_LOAD


@dataclass(frozen=True)
class RequestRecord:
    url: str
    method: str
    phase: Phase = Phase.INITIAL_LOAD
    is_third_party: bool = False


@dataclass
class PageSnapshot:
    """Serialized page state: DOM + geometry + screenshot + traffic."""

    url: str
    fetched_at: datetime
    viewport: Viewport
    nodes: list[DomNode]
    screenshot: np.ndarray  # HxWx3 uint8, dimensions equal viewport
    cookies: list[CookieRecord] = field(default_factory=list)
    requests: list[RequestRecord] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._index = {n.node_id: i for i, n in enumerate(self.nodes)}
        self._children: dict[int, list[int]] = {}
        for n in self.nodes:
            if n.parent_id is not None:
                self._children.setdefault(n.parent_id, []).append(n.node_id)
        self._depth: dict[int, int] = {}
        for n in self.nodes:
            if n.parent_id is None:
                self._depth[n.node_id] = 0
            else:
                # Forward/dangling parents are reported by validate().
                self._depth[n.node_id] = self._depth.get(n.parent_id, 0) + 1

    def validate(self) -> None:
        seen: set[int] = set()
        for i, node in enumerate(self.nodes):
            if node.node_id in seen:
                raise SnapshotError(f"duplicate node id {node.node_id}")
            seen.add(node.node_id)
            if node.parent_id is not None:
                if node.parent_id not in seen:
                    raise SnapshotError(
                        f"node {node.node_id} has parent {node.parent_id} "
                        "not earlier in document order"
                    )
            elif i != 0:
                raise SnapshotError(f"non-first node {node.node_id} has no parent")
            if node.bbox.w < 0 or node.bbox.h < 0:
                raise SnapshotError(f"node {node.node_id} has negative bbox dimensions")
            if node.bbox.area == 0 and node.visible:
                raise SnapshotError(f"node {node.node_id} is visible with zero-area bbox")
        bodies = [n for n in self.nodes if n.tag == "body"]
        if len(bodies) != 1:
            raise SnapshotError(f"expected exactly one body node, found {len(bodies)}")
        h, w = self.screenshot.shape[:2]
        if (w, h) != (self.viewport.width_px, self.viewport.height_px):
            raise SnapshotError(
                f"screenshot {w}x{h} does not match viewport "
                f"{self.viewport.width_px}x{self.viewport.height_px}"
            )

    # -- tree accessors -------------------------------------------------

    def node(self, node_id: int) -> DomNode:
        try:
            return self.nodes[self._index[node_id]]
        except KeyError:
            raise SnapshotError(f"unknown node id {node_id}") from None

    def has_node(self, node_id: int) -> bool:
        return node_id in self._index

    def children_of(self, node_id: int) -> list[DomNode]:
        return [self.node(c) for c in self._children.get(node_id, [])]

    def parent_of(self, node_id: int) -> DomNode | None:
        pid = self.node(node_id).parent_id
        return None if pid is None else self.node(pid)

    def depth_of(self, node_id: int) -> int:
        if node_id not in self._depth:
            raise SnapshotError(f"unknown node id {node_id}")
        return self._depth[node_id]

    def doc_order(self, node_id: int) -> int:
        if node_id not in self._index:
            raise SnapshotError(f"unknown node id {node_id}")
        return self._index[node_id]

    def body(self) -> DomNode:
        for n in self.nodes:
            if n.tag == "body":
                return n
        raise SnapshotError("snapshot has no body node")

    def subtree_ids(self, node_id: int) -> list[int]:
        """The node and all its descendants, in document order."""
        self.node(node_id)
        members = {node_id}
        out = [node_id]
        # Nodes appear after their parents, so one forward pass suffices.
        for n in self.nodes[self._index[node_id] + 1 :]:
            if n.parent_id in members:
                members.add(n.node_id)
                out.append(n.node_id)
        out.sort(key=self._index.__getitem__)
        return out

    def is_ancestor(self, ancestor_id: int, node_id: int) -> bool:
        cur = self.node(node_id).parent_id
        while cur is not None:
            if cur == ancestor_id:
                return True
            cur = self.node(cur).parent_id
        return False


def subtree_text(snapshot: PageSnapshot, node_id: int) -> str:
    """Concatenated own_text of the node and all descendants in document
    order, single-space separated and trimmed."""
    parts = []
    for nid in snapshot.subtree_ids(node_id):
        t = snapshot.node(nid).own_text
        if t:
            parts.append(t)
    return normalize_text(" ".join(parts))


def node_at_point(snapshot: PageSnapshot, x: float, y: float) -> int | None:
    """Top-most visible node whose bbox contains (x, y).

    Candidates are ranked by (z_index, depth, document order), all
    ascending, and the maximum wins; None when no visible bbox covers
    the point."""
    if not (0 <= x < snapshot.viewport.width_px and 0 <= y < snapshot.viewport.height_px):
        raise SnapshotError(f"point ({x}, {y}) outside viewport")
    best: tuple[int, int, int] | None = None
    best_id: int | None = None
    for order, node in enumerate(snapshot.nodes):
        if not node.visible or not node.bbox.contains_point(x, y):
            continue
        key = (node.z_index, snapshot.depth_of(node.node_id), order)
        if best is None or key > best:
            best = key
            best_id = node.node_id
    return best_id


# -- serialization -------------------------------------------------------


def snapshot_to_dict(snapshot: PageSnapshot, screenshot_file: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "url": snapshot.url,
        "fetched_at": snapshot.fetched_at.astimezone(timezone.utc).isoformat(),
        "viewport": {
            "width_px": snapshot.viewport.width_px,
            "height_px": snapshot.viewport.height_px,
        },
        "screenshot_file": screenshot_file,
        "nodes": [
            {
                "node_id": n.node_id,
                "parent_id": n.parent_id,
                "tag": n.tag,
                "attributes": n.attributes,
                "own_text": n.own_text,
                "bbox": list(n.bbox.as_tuple()),
                "z_index": n.z_index,
                "visible": n.visible,
                "cursor_style": n.cursor_style,
            }
            for n in snapshot.nodes
        ],
        "cookies": [
            {
                "name": c.name,
                "value": c.value,
                "domain": c.domain,
                "path": c.path,
                "expires": c.expires,
                "set_at_phase": c.set_at_phase.value,
            }
            for c in snapshot.cookies
        ],
        "requests": [
            {
                "url": r.url,
                "method": r.method,
                "phase": r.phase.value,
                "is_third_party": r.is_third_party,
            }
            for r in snapshot.requests
        ],
    }


def snapshot_from_dict(doc: dict, screenshot: np.ndarray) -> PageSnapshot:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SnapshotError(f"unsupported schema_version {doc.get('schema_version')!r}")
    nodes = [
        DomNode(
            node_id=d["node_id"],
            parent_id=d["parent_id"],
            tag=d["tag"],
            attributes=dict(d["attributes"]),
            own_text=d["own_text"],
            bbox=BBox(*d["bbox"]),
            z_index=d["z_index"],
            visible=d["visible"],
            cursor_style=d["cursor_style"],
        )
        for d in doc["nodes"]
    ]
    return PageSnapshot(
        url=doc["url"],
        fetched_at=datetime.fromisoformat(doc["fetched_at"]),
        viewport=Viewport(doc["viewport"]["width_px"], doc["viewport"]["height_px"]),
        nodes=nodes,
        screenshot=screenshot,
        cookies=[
            CookieRecord(
                name=c["name"],
                value=c["value"],
                domain=c["domain"],
                path=c["path"],
                expires=c["expires"],
                set_at_phase=Phase(c["set_at_phase"]),
            )
            for c in doc["cookies"]
        ],
        requests=[
            RequestRecord(
                url=r["url"],
                method=r["method"],
                phase=Phase(r["phase"]),
                is_third_party=r["is_third_party"],
            )
            for r in doc["requests"]
        ],
    )


def save_snapshot(snapshot: PageSnapshot, json_path: str | Path) -> Path:
    """Write the JSON document plus a PNG sidecar next to it."""
    snapshot.validate()
    json_path = Path(json_path)
    png_name = json_path.stem + ".png"
    Image.fromarray(snapshot.screenshot, mode="RGB").save(json_path.parent / png_name)
    doc = snapshot_to_dict(snapshot, png_name)
    json_path.write_text(json.dumps(doc, ensure_ascii=False, sort_keys=True), encoding="utf-8")
    return json_path


def load_snapshot(json_path: str | Path) -> PageSnapshot:
    json_path = Path(json_path)
    try:
        doc = json.loads(json_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SnapshotError(f"cannot read snapshot {json_path}: {exc}") from exc
    png_path = json_path.parent / doc["screenshot_file"]
    with Image.open(png_path) as im:
        screenshot = np.asarray(im.convert("RGB"), dtype=np.uint8).copy()
    snap = snapshot_from_dict(doc, screenshot)
    snap.validate()
    return snap


def snapshots_equal(a: PageSnapshot, b: PageSnapshot) -> bool:
    """Structural equality, screenshot compared pixel-exact."""
    return (
        a.url == b.url
        and a.fetched_at == b.fetched_at
        and a.viewport == b.viewport
        and a.nodes == b.nodes
        and a.cookies == b.cookies
        and a.requests == b.requests
        and a.screenshot.shape == b.screenshot.shape
        and bool(np.array_equal(a.screenshot, b.screenshot))
    )


def with_screenshot(snapshot: PageSnapshot, screenshot: np.ndarray) -> PageSnapshot:
    return replace(snapshot, screenshot=screenshot)
