"""CDP backend tests; they need a real Chromium binary and skip otherwise."""

import pytest

from consentscan.capture.session import CaptureConfig, find_browser_binary
from consentscan.detectors import detect_domwalk
from consentscan.snapshot import Viewport

BINARY = find_browser_binary()

pytestmark = pytest.mark.skipif(
    BINARY is None, reason="no Chromium binary on PATH or in $CONSENTSCAN_BROWSER"
)

CDP_CONFIG = CaptureConfig(settle_wait=0.5, page_timeout=30.0, viewport=Viewport(1280, 800))


@pytest.fixture()
def cdp_session():
    from consentscan.capture.cdp import CdpSession

    sess = CdpSession(BINARY)
    yield sess
    sess.close()


def test_cdp_captures_fixture_banner(server, cdp_session):
    snap = cdp_session.capture_page(server.url_for("F03"), CDP_CONFIG)
    snap.validate()
    assert snap.viewport.width_px == 1280
    result = detect_domwalk(snap)
    assert result is not None
    banner = snap.node(result.node_id)
    assert banner.attributes.get("id") == "consent-banner"


def test_cdp_clear_state_and_cookies(server, cdp_session):
    snap = cdp_session.capture_page(server.url_for("N01"), CDP_CONFIG)
    assert any(c.name == "session" for c in snap.cookies)
    cdp_session.clear_state()
    snap2 = cdp_session.capture_page(server.url_for("N01"), CDP_CONFIG)
    assert any(c.name == "session" for c in snap2.cookies)


def test_cdp_click_hides_banner(server, cdp_session):
    from consentscan.interaction import extract_clickables

    snap = cdp_session.capture_page(server.url_for("F03"), CDP_CONFIG)
    result = detect_domwalk(snap)
    accept = [c for c in extract_clickables(snap, result.node_id) if c.text == "Accept all"][0]
    post = cdp_session.click_and_capture(accept, CDP_CONFIG)
    row = int(result.bbox.y + 5)
    assert not (post.screenshot[row, 10] == snap.screenshot[row, 10]).all()
