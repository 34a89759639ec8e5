"""Shared fixtures: snapshot builders, the fixture server, and sessions."""

from __future__ import annotations

from datetime import datetime, timezone

import numpy as np
import pytest

from consentscan.capture.builtin import BuiltinSession
from consentscan.capture.session import CaptureConfig
from consentscan.fixtures import FixtureServer
from consentscan.geometry import BBox
from consentscan.snapshot import DomNode, PageSnapshot, Viewport

TEST_VIEWPORT = Viewport(1280, 800)
FAST_CONFIG = CaptureConfig(settle_wait=0.01, page_timeout=8.0, viewport=TEST_VIEWPORT)


def make_node(
    node_id: int,
    parent_id: int | None,
    tag: str,
    bbox: tuple[float, float, float, float] = (0, 0, 0, 0),
    text: str = "",
    attrs: dict | None = None,
    z: int = 0,
    visible: bool | None = None,
    cursor: str = "auto",
) -> DomNode:
    box = BBox(*bbox)
    if visible is None:
        visible = box.area > 0
    return DomNode(
        node_id=node_id,
        parent_id=parent_id,
        tag=tag,
        attributes=attrs or {},
        own_text=text,
        bbox=box,
        z_index=z,
        visible=visible,
        cursor_style=cursor,
    )


def make_snapshot(
    nodes: list[DomNode],
    viewport: Viewport = Viewport(200, 100),
    screenshot: np.ndarray | None = None,
    url: str = "http://site.test/",
) -> PageSnapshot:
    if screenshot is None:
        screenshot = np.full((viewport.height_px, viewport.width_px, 3), 255, dtype=np.uint8)
    snap = PageSnapshot(
        url=url,
        fetched_at=datetime(2026, 2, 1, 12, 0, 0, tzinfo=timezone.utc),
        viewport=viewport,
        nodes=nodes,
        screenshot=screenshot,
    )
    snap.validate()
    return snap


def simple_page(viewport: Viewport = Viewport(200, 100)) -> list[DomNode]:
    """html > body scaffold covering the viewport."""
    w, h = viewport.width_px, viewport.height_px
    return [
        make_node(0, None, "html", (0, 0, w, h)),
        make_node(1, 0, "body", (0, 0, w, h)),
    ]


@pytest.fixture(scope="session")
def server():
    with FixtureServer() as srv:
        yield srv


@pytest.fixture()
def session(server):
    server.reset()
    sess = BuiltinSession()
    yield sess
    sess.close()


@pytest.fixture()
def fast_config():
    return FAST_CONFIG
