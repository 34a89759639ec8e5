"""Method 2: perceptive detection via image processing.

The screenshot is XORed with the background color sampled behind the
keyword, producing a negative in which the notice surface goes black.
Thresholding the grayscale negative and extracting connected components
yields candidate regions; the component matching the notice background is
selected by keyword containment and mapped back to a DOM node, then the
DOM is walked upward while it still fits the region.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import ndimage

from ..geometry import BBox
from ..snapshot import PageSnapshot, node_at_point
from .domwalk import KeywordConfig, find_keyword_hits
from .results import DetectionResult, Method, make_result

RGB = tuple[int, int, int]

_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


class ContourStrategy(str, Enum):
    SMALLEST_CONTAINING = "smallest_containing"
    LARGEST_CONTAINING = "largest_containing"


@dataclass(frozen=True)
class PerceptiveConfig:
    threshold: int = 10
    contour_strategy: ContourStrategy = ContourStrategy.SMALLEST_CONTAINING
    min_contour_area_px: int = 400
    max_contour_frac: float = 0.95

    def __post_init__(self) -> None:
        if not 0 <= self.threshold <= 255:
            raise ValueError(f"threshold must be in 0..255, got {self.threshold}")
        if not 0 < self.max_contour_frac <= 1:
            raise ValueError(f"max_contour_frac must be in (0, 1], got {self.max_contour_frac}")


class BinaryImage:
    """Boolean grid with an implicit 1-px false border on every side.

    The stored grid is (source height + 2) x (source width + 2); the border
    guarantees regions touching the screenshot edge keep tight bboxes.
    Coordinates reported by find_contours are in source space.
    """

    def __init__(self, source_bits: np.ndarray):
        if source_bits.ndim != 2:
            raise ValueError("expected a 2-D boolean array")
        h, w = source_bits.shape
        grid = np.zeros((h + 2, w + 2), dtype=bool)
        grid[1:-1, 1:-1] = source_bits.astype(bool)
        self.bits = grid

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def source_width(self) -> int:
        return self.width - 2

    @property
    def source_height(self) -> int:
        return self.height - 2

    def source_view(self) -> np.ndarray:
        return self.bits[1:-1, 1:-1]


@dataclass(frozen=True)
class Contour:
    """Connected foreground region with its tight integer bbox (source
    coordinates) and pixel count."""

    bbox: BBox
    area_px: int
    region_id: int


def sample_background_color(screenshot: np.ndarray, keyword_bbox: BBox) -> RGB:
    """Most frequent pixel color within the bbox; glyph pixels lose the
    majority vote. Ties break to the lexicographically smallest (R,G,B)."""
    h, w = screenshot.shape[:2]
    region = keyword_bbox.intersection(BBox(0, 0, w, h))
    if region is None:
        raise ValueError("keyword bbox does not intersect the screenshot")
    x0, y0 = int(region.x), int(region.y)
    x1, y1 = max(int(np.ceil(region.right)), x0 + 1), max(int(np.ceil(region.bottom)), y0 + 1)
    patch = screenshot[y0:y1, x0:x1].reshape(-1, 3)
    colors, counts = np.unique(patch, axis=0, return_counts=True)
    # np.unique sorts rows lexicographically, so the first argmax is the tie winner.
    best = colors[np.argmax(counts)]
    return (int(best[0]), int(best[1]), int(best[2]))


def xor_image(screenshot: np.ndarray, color: RGB) -> np.ndarray:
    """Per-channel bitwise XOR with a constant color; pixels equal to the
    color become black."""
    return np.bitwise_xor(screenshot, np.array(color, dtype=np.uint8))


def to_grayscale(image: np.ndarray) -> np.ndarray:
    """BT.601 luma, rounded half-up to uint8."""
    r = image[..., 0].astype(np.float64)
    g = image[..., 1].astype(np.float64)
    b = image[..., 2].astype(np.float64)
    return np.floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5).astype(np.uint8)


def binarize(gray: np.ndarray, threshold: int) -> BinaryImage:
    """Foreground where gray is strictly above the threshold; the 1-px
    false border comes from BinaryImage itself."""
    return BinaryImage(gray > threshold)


def notice_mask(gray: np.ndarray, threshold: int) -> BinaryImage:
    """Complement thresholding for the detection chain: foreground where
    the XOR negative is at most the threshold, i.e. pixels matching the
    sampled notice background. The straight `binarize` polarity would make
    the notice surface a hole instead of a region."""
    return BinaryImage(gray <= threshold)


def _label_components(bin_image: BinaryImage) -> tuple[np.ndarray, list[Contour]]:
    labels, count = ndimage.label(bin_image.bits, structure=_EIGHT_CONNECTED)
    if count == 0:
        return labels, []
    slices = ndimage.find_objects(labels)
    areas = np.bincount(labels.ravel())
    contours = []
    for region_id, sl in enumerate(slices, start=1):
        ys, xs = sl
        contours.append(
            Contour(
                bbox=BBox(
                    float(xs.start - 1),
                    float(ys.start - 1),
                    float(xs.stop - xs.start),
                    float(ys.stop - ys.start),
                ),
                area_px=int(areas[region_id]),
                region_id=region_id,
            )
        )
    contours.sort(key=lambda c: (c.bbox.y, c.bbox.x, c.region_id))
    return labels, contours


def find_contours(bin_image: BinaryImage) -> list[Contour]:
    """8-connected components of foreground pixels, each with tight bbox
    (source coordinates) and pixel area, ordered by (bbox.y, bbox.x,
    region_id)."""
    return _label_components(bin_image)[1]


def pick_contour(
    contours: list[Contour],
    keyword_point: tuple[float, float],
    viewport_area: float,
    cfg: PerceptiveConfig,
) -> Contour | None:
    """Among contours whose bbox contains the keyword point and that pass
    the area filters, pick min or max bbox area per the configured
    strategy."""
    px, py = keyword_point
    candidates = [
        c
        for c in contours
        if c.bbox.contains_point(px, py)
        and c.area_px >= cfg.min_contour_area_px
        and c.bbox.area <= cfg.max_contour_frac * viewport_area
    ]
    if not candidates:
        return None
    if cfg.contour_strategy is ContourStrategy.LARGEST_CONTAINING:
        return max(candidates, key=lambda c: (c.bbox.area, -c.region_id))
    return min(candidates, key=lambda c: (c.bbox.area, c.region_id))


def refine_upward(snapshot: PageSnapshot, node_id: int, contour: Contour) -> int:
    """Ascend while the parent grows the area, still fits inside the
    contour bbox (2-px tolerance on every side), and does not exceed the
    tolerance-expanded contour area."""
    expanded = contour.bbox.inflate(2.0)
    current = snapshot.node(node_id)
    while True:
        parent = snapshot.parent_of(current.node_id)
        if parent is None:
            return current.node_id
        if not (
            parent.bbox.area > current.bbox.area
            and parent.bbox.area <= expanded.area
            and expanded.contains_box(parent.bbox)
        ):
            return current.node_id
        current = parent


def _first_foreground_point(labels: np.ndarray, contour: Contour) -> tuple[float, float] | None:
    """Row-major scan for the first foreground pixel of the contour's
    region, returned in source coordinates."""
    ys, xs = np.nonzero(labels == contour.region_id)
    if len(ys) == 0:
        return None
    order = np.lexsort((xs, ys))
    i = order[0]
    return float(xs[i] - 1), float(ys[i] - 1)


def detect_perceptive(
    snapshot: PageSnapshot,
    kw: KeywordConfig | None = None,
    cfg: PerceptiveConfig | None = None,
) -> DetectionResult | None:
    """Full pipeline; None as soon as any stage yields nothing."""
    kw = kw or KeywordConfig()
    cfg = cfg or PerceptiveConfig()

    hits = find_keyword_hits(snapshot, kw)
    hits.sort(key=lambda h: (-h.word_count, h.node_id))
    hits = [h for h in hits if snapshot.node(h.node_id).tag not in ("body", "html")]
    if not hits:
        return None
    hit = hits[0]
    keyword_node = snapshot.node(hit.node_id)

    try:
        bg = sample_background_color(snapshot.screenshot, keyword_node.bbox)
    except ValueError:
        return None
    negative = xor_image(snapshot.screenshot, bg)
    gray = to_grayscale(negative)
    mask = notice_mask(gray, cfg.threshold)
    labels, contours = _label_components(mask)
    contour = pick_contour(contours, (hit.x, hit.y), snapshot.viewport.area, cfg)
    if contour is None:
        return None

    point = _first_foreground_point(labels, contour)
    if point is None:
        return None
    px = min(point[0], snapshot.viewport.width_px - 1)
    py = min(point[1], snapshot.viewport.height_px - 1)
    anchor = node_at_point(snapshot, px, py)
    if anchor is None:
        return None
    notice = refine_upward(snapshot, anchor, contour)
    if snapshot.node(notice).tag in ("body", "html"):
        return None
    return make_result(snapshot, Method.PERCEPTIVE, notice, confidence=1.0)
