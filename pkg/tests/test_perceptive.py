import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from consentscan.detectors.perceptive import (
    BinaryImage,
    Contour,
    ContourStrategy,
    PerceptiveConfig,
    binarize,
    detect_perceptive,
    find_contours,
    notice_mask,
    pick_contour,
    refine_upward,
    sample_background_color,
    to_grayscale,
    xor_image,
)
from consentscan.geometry import BBox
from consentscan.snapshot import Viewport

from conftest import make_node, make_snapshot, simple_page
from oracles import flood_fill_components


# -- background sampling ----------------------------------------------------


def test_background_majority():
    img = np.full((10, 10, 3), 255, dtype=np.uint8)
    img[:3, :] = 0  # 30% black glyph pixels
    assert sample_background_color(img, BBox(0, 0, 10, 10)) == (255, 255, 255)


def test_background_uniform():
    img = np.full((5, 5, 3), (12, 34, 56), dtype=np.uint8)
    assert sample_background_color(img, BBox(0, 0, 5, 5)) == (12, 34, 56)


def test_background_tie_lexicographic():
    img = np.zeros((2, 2, 3), dtype=np.uint8)
    img[0, :] = (255, 0, 0)  # red
    img[1, :] = (0, 0, 255)  # blue
    assert sample_background_color(img, BBox(0, 0, 2, 2)) == (0, 0, 255)


def test_background_requires_intersection():
    img = np.zeros((5, 5, 3), dtype=np.uint8)
    with pytest.raises(ValueError):
        sample_background_color(img, BBox(100, 100, 5, 5))


# -- xor ---------------------------------------------------------------------


def test_xor_background_pixels_become_black():
    img = np.full((2, 2, 3), (40, 50, 60), dtype=np.uint8)
    out = xor_image(img, (40, 50, 60))
    assert np.array_equal(out, np.zeros_like(img))


def test_xor_with_zero_is_identity():
    img = np.full((1, 1, 3), 255, dtype=np.uint8)
    assert np.array_equal(xor_image(img, (0, 0, 0)), img)


def test_xor_channelwise_value():
    img = np.array([[[200, 100, 50]]], dtype=np.uint8)
    out = xor_image(img, (255, 255, 255))
    assert tuple(out[0, 0]) == (200 ^ 255, 100 ^ 255, 50 ^ 255) == (55, 155, 205)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31 - 1), st.tuples(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255)))
def test_xor_involution(seed, color):
    rng = np.random.RandomState(seed)
    img = rng.randint(0, 256, size=(8, 8, 3), dtype=np.uint8)
    assert np.array_equal(xor_image(xor_image(img, color), color), img)


# -- grayscale ----------------------------------------------------------------


def test_grayscale_white_black():
    img = np.array([[[255, 255, 255], [0, 0, 0]]], dtype=np.uint8)
    gray = to_grayscale(img)
    assert gray[0, 0] == 255 and gray[0, 1] == 0


def test_grayscale_red():
    img = np.array([[[255, 0, 0]]], dtype=np.uint8)
    assert to_grayscale(img)[0, 0] == 76  # 0.299*255 = 76.245 rounds down


# -- binarize ------------------------------------------------------------------


def test_binarize_all_zero():
    gray = np.zeros((4, 4), dtype=np.uint8)
    assert not binarize(gray, 10).bits.any()


def test_binarize_strictly_above_threshold():
    gray = np.full((2, 2), 10, dtype=np.uint8)
    assert not binarize(gray, 10).bits.any()
    gray[0, 0] = 11
    bits = binarize(gray, 10)
    assert bits.bits.sum() == 1


def test_binarize_adds_false_border():
    gray = np.full((4, 6), 255, dtype=np.uint8)
    b = binarize(gray, 10)
    assert (b.height, b.width) == (6, 8)
    assert not b.bits[0, :].any() and not b.bits[-1, :].any()
    assert not b.bits[:, 0].any() and not b.bits[:, -1].any()
    assert b.bits[1:-1, 1:-1].all()


def test_notice_mask_is_complement_polarity():
    gray = np.array([[0, 255]], dtype=np.uint8)
    mask = notice_mask(gray, 10)
    assert bool(mask.source_view()[0, 0]) is True
    assert bool(mask.source_view()[0, 1]) is False


# -- contours -------------------------------------------------------------------


def test_contours_empty():
    assert find_contours(BinaryImage(np.zeros((5, 5), dtype=bool))) == []


def test_contours_single_square():
    bits = np.zeros((100, 100), dtype=bool)
    bits[20:30, 20:30] = True
    contours = find_contours(BinaryImage(bits))
    assert len(contours) == 1
    c = contours[0]
    assert c.bbox == BBox(20, 20, 10, 10)
    assert c.area_px == 100


def test_contours_two_disjoint_squares():
    bits = np.zeros((50, 50), dtype=bool)
    bits[5:10, 5:10] = True
    bits[30:40, 30:40] = True
    contours = find_contours(BinaryImage(bits))
    assert len(contours) == 2
    assert contours[0].bbox == BBox(5, 5, 5, 5)
    assert contours[1].bbox == BBox(30, 30, 10, 10)


def test_contours_diagonal_is_eight_connected():
    bits = np.zeros((4, 4), dtype=bool)
    bits[0, 0] = bits[1, 1] = bits[2, 2] = True
    contours = find_contours(BinaryImage(bits))
    assert len(contours) == 1
    assert contours[0].area_px == 3


def test_contours_match_flood_fill_oracle_on_random_images():
    rng = np.random.RandomState(20260214)
    for _ in range(200):
        bits = rng.rand(64, 64) < rng.uniform(0.05, 0.6)
        got = find_contours(BinaryImage(bits))
        expected = flood_fill_components([[bool(v) for v in row] for row in bits])
        assert len(got) == len(expected)
        for contour, ref in zip(got, expected):
            assert contour.bbox.as_tuple() == tuple(float(v) for v in ref["bbox"])
            assert contour.area_px == ref["area"]


# -- pick_contour -----------------------------------------------------------------


def _contours():
    return [
        Contour(bbox=BBox(10, 10, 50, 50), area_px=2000, region_id=1),
        Contour(bbox=BBox(0, 0, 300, 200), area_px=50000, region_id=2),
    ]


def test_pick_smallest_containing():
    cfg = PerceptiveConfig()
    picked = pick_contour(_contours(), (20, 20), viewport_area=1_000_000, cfg=cfg)
    assert picked is not None and picked.region_id == 1


def test_pick_largest_containing():
    cfg = PerceptiveConfig(contour_strategy=ContourStrategy.LARGEST_CONTAINING)
    picked = pick_contour(_contours(), (20, 20), viewport_area=1_000_000, cfg=cfg)
    assert picked is not None and picked.region_id == 2


def test_pick_rejects_viewport_spanning_contour():
    contours = [Contour(bbox=BBox(0, 0, 100, 100), area_px=9000, region_id=1)]
    cfg = PerceptiveConfig(max_contour_frac=0.95)
    assert pick_contour(contours, (50, 50), viewport_area=100 * 100, cfg=cfg) is None


def test_pick_respects_min_area():
    contours = [Contour(bbox=BBox(0, 0, 30, 30), area_px=100, region_id=1)]
    assert pick_contour(contours, (5, 5), 1_000_000, PerceptiveConfig()) is None


def test_pick_requires_point_containment():
    assert pick_contour(_contours(), (500, 500), 1_000_000, PerceptiveConfig()) is None


# -- refine_upward ------------------------------------------------------------------


def _nested_snapshot():
    nodes = simple_page(Viewport(400, 300))
    nodes += [
        make_node(2, 1, "div", (50, 50, 200, 100), attrs={"id": "notice"}),
        make_node(3, 2, "p", (60, 60, 100, 30), text="cookies"),
    ]
    return make_snapshot(nodes, viewport=Viewport(400, 300))


def test_refine_ascends_to_contour_fit():
    snap = _nested_snapshot()
    contour = Contour(bbox=BBox(50, 50, 200, 100), area_px=20000, region_id=1)
    assert refine_upward(snap, 3, contour) == 2


def test_refine_stops_when_parent_exceeds_bounds():
    snap = _nested_snapshot()
    contour = Contour(bbox=BBox(55, 55, 110, 40), area_px=4000, region_id=1)
    assert refine_upward(snap, 3, contour) == 3  # parent div too big for contour


def test_refine_accepts_parent_within_tolerance():
    snap = _nested_snapshot()
    # contour 1px smaller than the div on each side: still accepted
    contour = Contour(bbox=BBox(51, 51, 198, 98), area_px=19000, region_id=1)
    assert refine_upward(snap, 3, contour) == 2


# -- full pipeline on synthetic pages -------------------------------------------------


def _solid_banner_page(banner_color=(27, 42, 56)):
    vp = Viewport(400, 300)
    screenshot = np.full((300, 400, 3), 255, dtype=np.uint8)
    screenshot[240:300, 0:400] = banner_color  # banner region
    screenshot[248:252, 20:120] = (255, 255, 255)  # glyph strip inside banner
    nodes = simple_page(vp)
    nodes += [
        make_node(2, 1, "div", (0, 240, 400, 60), attrs={"id": "banner"}, z=5),
        make_node(3, 2, "p", (20, 244, 200, 14), text="We use cookies here today"),
        make_node(4, 2, "button", (20, 270, 60, 20), text="OK", cursor="pointer"),
    ]
    return make_snapshot(nodes, viewport=vp, screenshot=screenshot)


def test_detect_perceptive_solid_banner():
    snap = _solid_banner_page()
    result = detect_perceptive(snap)
    assert result is not None
    assert result.node_id == 2
    truth = BBox(0, 240, 400, 60)
    for got, want in zip(result.bbox.as_tuple(), truth.as_tuple()):
        assert abs(got - want) <= 2


def test_detect_perceptive_none_for_page_text_keyword():
    vp = Viewport(400, 300)
    screenshot = np.full((300, 400, 3), 255, dtype=np.uint8)
    screenshot[52:55, 20:200] = 0  # thin glyph strokes, background stays majority
    nodes = simple_page(vp)
    nodes.append(make_node(2, 1, "p", (20, 50, 180, 10), text="my cookie recipe story"))
    snap = make_snapshot(nodes, viewport=vp, screenshot=screenshot)
    assert detect_perceptive(snap) is None


def test_detect_perceptive_none_without_keyword():
    snap = make_snapshot(simple_page())
    assert detect_perceptive(snap) is None


def test_detect_result_bbox_contains_keyword_hit():
    snap = _solid_banner_page()
    result = detect_perceptive(snap)
    keyword_node = snap.node(3)
    assert result.bbox.contains_point(keyword_node.bbox.x, keyword_node.bbox.y)


def test_pipeline_determinism():
    snap = _solid_banner_page()
    a = detect_perceptive(snap)
    b = detect_perceptive(snap)
    assert a == b


def test_perceptive_config_validation():
    with pytest.raises(ValueError):
        PerceptiveConfig(threshold=300)
    with pytest.raises(ValueError):
        PerceptiveConfig(max_contour_frac=0.0)
