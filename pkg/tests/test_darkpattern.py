import numpy as np
import pytest

from consentscan.darkpattern import (
    SSIMParams,
    detect_color_diversion,
    detect_decline,
    dominant_color,
    ssim,
    text_similarity,
)
from consentscan.geometry import BBox
from consentscan.interaction import Clickable, ClickableKind, ClickOutcome

from oracles import bt601_gray, count_bucket_majority, reference_ssim


def _rand_image(rng, h=64, w=64):
    return rng.randint(0, 256, size=(h, w, 3), dtype=np.uint8)


# -- ssim ------------------------------------------------------------------


def test_ssim_identity_exact():
    rng = np.random.RandomState(7)
    img = _rand_image(rng)
    assert ssim(img, img) == 1.0


def test_ssim_symmetry():
    rng = np.random.RandomState(8)
    a, b = _rand_image(rng), _rand_image(rng)
    assert ssim(a, b) == ssim(b, a)


def test_ssim_black_vs_white_tiny():
    black = np.zeros((64, 64, 3), dtype=np.uint8)
    white = np.full((64, 64, 3), 255, dtype=np.uint8)
    params = SSIMParams()
    expected = params.c1 / (255.0**2 + params.c1)  # mu terms only, zero variance
    assert ssim(black, white) == pytest.approx(expected, rel=1e-9)
    assert ssim(black, white) < 1e-3


def test_ssim_matches_reference_formula():
    rng = np.random.RandomState(20260214)
    for _ in range(200):
        a, b = _rand_image(rng), _rand_image(rng)
        expected = reference_ssim(bt601_gray(a), bt601_gray(b))
        assert ssim(a, b) == pytest.approx(expected, abs=1e-9)


def test_ssim_dimension_mismatch():
    with pytest.raises(ValueError):
        ssim(np.zeros((16, 16, 3), np.uint8), np.zeros((24, 16, 3), np.uint8))


def test_ssim_in_range():
    rng = np.random.RandomState(9)
    for _ in range(20):
        v = ssim(_rand_image(rng), _rand_image(rng))
        assert -1.0 <= v <= 1.0


# -- dominant color -----------------------------------------------------------


def test_dominant_color_majority():
    img = np.zeros((10, 10, 3), dtype=np.uint8)
    img[:6, :] = (0, 0, 255)
    img[6:, :] = (255, 255, 255)
    assert dominant_color(img, BBox(0, 0, 10, 10)) == (0, 0, 255)


def test_dominant_color_uniform():
    img = np.full((4, 4, 3), (30, 130, 76), dtype=np.uint8)
    assert dominant_color(img, BBox(0, 0, 4, 4)) == (30, 130, 76)


def test_dominant_color_antialiased_centroid():
    img = np.full((10, 10, 3), (30, 130, 76), dtype=np.uint8)
    img[:3, :] = (28, 128, 74)  # same bucket shades
    got = dominant_color(img, BBox(0, 0, 10, 10))
    pixels = [tuple(px) for row in img for px in row]
    assert got == count_bucket_majority(pixels)


def test_dominant_color_matches_oracle_on_random_images():
    rng = np.random.RandomState(42)
    for _ in range(50):
        img = rng.randint(0, 256, size=(12, 12, 3), dtype=np.uint8)
        got = dominant_color(img, BBox(0, 0, 12, 12))
        pixels = [tuple(int(v) for v in px) for row in img for px in row]
        assert got == count_bucket_majority(pixels)


def test_dominant_color_empty_bbox():
    img = np.zeros((4, 4, 3), dtype=np.uint8)
    with pytest.raises(ValueError):
        dominant_color(img, BBox(10, 10, 2, 2))


# -- decline detection -----------------------------------------------------------


def _outcome(node_id, image, kind=ClickableKind.BUTTON):
    return ClickOutcome(
        clickable=Clickable(node_id=node_id, kind=kind, text=f"b{node_id}", bbox=BBox(0, 0, 10, 10)),
        post_screenshot=image,
    )


def test_decline_two_identical_buttons():
    img = np.full((32, 32, 3), 200, dtype=np.uint8)
    detected, evidence, score = detect_decline([_outcome(1, img), _outcome(2, img.copy())])
    assert detected is True
    assert evidence == (1, 2)
    assert score == 1.0


def test_decline_below_threshold():
    rng = np.random.RandomState(3)
    a = _rand_image(rng, 32, 32)
    b = _rand_image(rng, 32, 32)
    detected, evidence, score = detect_decline([_outcome(1, a), _outcome(2, b)], threshold=0.99)
    assert detected is False and evidence is None
    assert score is not None and score < 0.99


def test_decline_picks_maximizing_pair():
    base = np.full((32, 32, 3), 128, dtype=np.uint8)
    near = base.copy()
    near[0, 0] = (129, 129, 129)
    far = np.zeros((32, 32, 3), dtype=np.uint8)
    detected, evidence, _ = detect_decline(
        [_outcome(1, base), _outcome(2, far), _outcome(3, near)], threshold=0.99
    )
    assert detected is True
    assert evidence == (1, 3)


def test_decline_single_button_false():
    img = np.full((32, 32, 3), 200, dtype=np.uint8)
    detected, evidence, _ = detect_decline([_outcome(1, img)])
    assert detected is False and evidence is None


def test_decline_ignores_links_and_errors():
    img = np.full((32, 32, 3), 200, dtype=np.uint8)
    link = _outcome(1, img, kind=ClickableKind.LINK)
    errored = _outcome(2, img)
    errored.error = "element_not_found"
    ok = _outcome(3, img)
    detected, _, _ = detect_decline([link, errored, ok])
    assert detected is False


def test_decline_monotone_in_threshold():
    rng = np.random.RandomState(4)
    a = _rand_image(rng, 32, 32)
    b = a.copy()
    b[:4] = 255 - b[:4]
    outcomes = [_outcome(1, a), _outcome(2, b)]
    results = [detect_decline(outcomes, threshold=t)[0] for t in (0.1, 0.5, 0.9, 0.999)]
    # once False at some threshold, never True again at a higher one
    for earlier, later in zip(results, results[1:]):
        assert earlier or not later


# -- color diversion ---------------------------------------------------------------


def _clickable(node_id, color, kind=ClickableKind.BUTTON):
    return Clickable(
        node_id=node_id, kind=kind, text="x", bbox=BBox(0, 0, 10, 10), dominant_color=color
    )


def test_diversion_green_vs_grey():
    a, b = (30, 130, 76), (120, 120, 120)
    assert sum((x - y) ** 2 for x, y in zip(a, b)) ** 0.5 > 32  # sanity on raw colors
    detected, details = detect_color_diversion([_clickable(1, a), _clickable(2, b)])
    assert detected is True
    assert len(details) == 2


def test_diversion_same_color_false():
    detected, _ = detect_color_diversion(
        [_clickable(1, (255, 255, 255)), _clickable(2, (255, 255, 255))]
    )
    assert detected is False


def test_diversion_single_button_false():
    detected, _ = detect_color_diversion([_clickable(1, (0, 128, 0))])
    assert detected is False


def test_diversion_same_bucket_shades_false():
    detected, _ = detect_color_diversion(
        [_clickable(1, (30, 130, 76)), _clickable(2, (31, 131, 77))]
    )
    assert detected is False


def test_diversion_checkboxes_excluded():
    detected, _ = detect_color_diversion(
        [
            _clickable(1, (0, 0, 0), kind=ClickableKind.CHECKBOX),
            _clickable(2, (255, 255, 255), kind=ClickableKind.CHECKBOX),
        ]
    )
    assert detected is False


# -- text similarity ------------------------------------------------------------------


def test_text_similarity_identical():
    assert text_similarity("same page text", "same page text") == 1.0


def test_text_similarity_disjoint():
    assert text_similarity("aaaa", "bbbb") == 0.0


def test_text_similarity_partial():
    v = text_similarity("cookie banner gone", "cookie banner here")
    assert 0.5 < v < 1.0
