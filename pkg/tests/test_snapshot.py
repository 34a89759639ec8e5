import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from consentscan.snapshot import (
    SnapshotError,
    Viewport,
    load_snapshot,
    node_at_point,
    normalize_text,
    save_snapshot,
    snapshots_equal,
    subtree_text,
)

from conftest import make_node, make_snapshot, simple_page


def test_normalize_text_collapses_whitespace():
    assert normalize_text("  We   use\n\tcookies ") == "We use cookies"


def test_roundtrip_minimal(tmp_path):
    snap = make_snapshot(simple_page())
    path = save_snapshot(snap, tmp_path / "s.json")
    again = load_snapshot(path)
    assert snapshots_equal(snap, again)


def test_roundtrip_unicode_text(tmp_path):
    nodes = simple_page()
    nodes.append(make_node(2, 1, "div", (0, 0, 50, 20), text="Süßigkeiten-Cookies"))
    snap = make_snapshot(nodes)
    again = load_snapshot(save_snapshot(snap, tmp_path / "s.json"))
    assert again.node(2).own_text == "Süßigkeiten-Cookies"


def test_validate_rejects_duplicate_ids():
    nodes = simple_page()
    nodes.append(make_node(1, 1, "div", (0, 0, 10, 10)))
    with pytest.raises(SnapshotError, match="duplicate"):
        make_snapshot(nodes)


def test_validate_rejects_forward_parent_reference():
    nodes = [
        make_node(0, None, "html", (0, 0, 200, 100)),
        make_node(1, 5, "body", (0, 0, 200, 100)),
    ]
    with pytest.raises(SnapshotError):
        make_snapshot(nodes)


def test_validate_requires_single_body():
    nodes = [make_node(0, None, "html", (0, 0, 200, 100))]
    with pytest.raises(SnapshotError, match="body"):
        make_snapshot(nodes)


def test_validate_screenshot_dims():
    nodes = simple_page()
    bad = np.zeros((50, 50, 3), dtype=np.uint8)
    with pytest.raises(SnapshotError, match="screenshot"):
        make_snapshot(nodes, screenshot=bad)


def test_subtree_text_leaf():
    nodes = simple_page()
    nodes.append(make_node(2, 1, "button", (0, 0, 40, 20), text="Accept"))
    snap = make_snapshot(nodes)
    assert subtree_text(snap, 2) == "Accept"


def test_subtree_text_document_order():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "div", (0, 0, 100, 60)),
        make_node(3, 2, "p", (0, 0, 100, 30), text="We use cookies"),
        make_node(4, 2, "button", (0, 30, 40, 20), text="OK"),
    ]
    snap = make_snapshot(nodes)
    assert subtree_text(snap, 2) == "We use cookies OK"


def test_subtree_text_empty():
    nodes = simple_page()
    nodes.append(make_node(2, 1, "div", (0, 0, 100, 60)))
    snap = make_snapshot(nodes)
    assert subtree_text(snap, 2) == ""


def test_subtree_text_includes_invisible_descendants():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "div", (0, 0, 100, 60), text="shown"),
        make_node(3, 2, "span", (0, 0, 0, 0), text="hidden", visible=False),
    ]
    snap = make_snapshot(nodes)
    assert subtree_text(snap, 1) == "shown hidden"


def test_subtree_text_unknown_node():
    snap = make_snapshot(simple_page())
    with pytest.raises(SnapshotError):
        subtree_text(snap, 99)


def test_node_at_point_body():
    snap = make_snapshot(simple_page())
    assert node_at_point(snap, 100, 50) == 1  # body deeper than html


def test_node_at_point_z_order():
    nodes = simple_page()
    nodes.append(make_node(2, 1, "div", (10, 10, 50, 50), z=10))
    snap = make_snapshot(nodes)
    assert node_at_point(snap, 20, 20) == 2


def test_node_at_point_none_when_uncovered():
    nodes = [
        make_node(0, None, "html", (0, 0, 10, 10)),
        make_node(1, 0, "body", (0, 0, 10, 10)),
    ]
    snap = make_snapshot(nodes, viewport=Viewport(200, 100))
    assert node_at_point(snap, 150, 80) is None


def test_node_at_point_outside_viewport_rejected():
    snap = make_snapshot(simple_page())
    with pytest.raises(SnapshotError, match="outside"):
        node_at_point(snap, 500, 50)


def test_node_at_point_deterministic():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "div", (0, 0, 100, 100)),
        make_node(3, 1, "div", (0, 0, 100, 100)),
    ]
    snap = make_snapshot(nodes)
    results = {node_at_point(snap, 5, 5) for _ in range(10)}
    assert results == {3}  # same depth, later document order wins


# -- randomized round-trip property --------------------------------------

_TEXT = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"),
    max_size=40,
)


@st.composite
def snapshots(draw):
    n_extra = draw(st.integers(min_value=0, max_value=30))
    nodes = [
        make_node(0, None, "html", (0, 0, 200, 100)),
        make_node(1, 0, "body", (0, 0, 200, 100)),
    ]
    for i in range(2, 2 + n_extra):
        parent = draw(st.integers(min_value=0, max_value=i - 1))
        w = draw(st.integers(min_value=0, max_value=200))
        h = draw(st.integers(min_value=0, max_value=100))
        nodes.append(
            make_node(
                i,
                parent,
                draw(st.sampled_from(["div", "p", "span", "button", "a"])),
                (draw(st.integers(0, 100)), draw(st.integers(0, 50)), w, h),
                text=draw(_TEXT).replace("\r", " "),
                attrs={"class": draw(st.sampled_from(["", "x", "y z"]))},
                z=draw(st.integers(-2, 1000)),
                cursor=draw(st.sampled_from(["auto", "pointer"])),
            )
        )
    rng = np.random.RandomState(draw(st.integers(0, 2**31 - 1)))
    screenshot = rng.randint(0, 256, size=(100, 200, 3), dtype=np.uint8)
    return make_snapshot(nodes, screenshot=screenshot)


@settings(max_examples=40, deadline=None)
@given(snapshots())
def test_roundtrip_property(tmp_path_factory, snap):
    tmp = tmp_path_factory.mktemp("snap")
    again = load_snapshot(save_snapshot(snap, tmp / "s.json"))
    assert snapshots_equal(snap, again)
