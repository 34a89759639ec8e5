"""Dark-pattern signals: decline-option inference and color diversion.

Decline presence is inferred from post-click state equivalence: when two
different buttons leave the page in the same visual state (pairwise SSIM
at or above a threshold), both closed the notice, so one of them was a
decline. Color diversion compares the majority-vote dominant colors of the
notice's clickables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .geometry import BBox
from .interaction import Clickable, ClickableKind, ClickOutcome

RGB = tuple[int, int, int]

COLOR_DISTANCE_THRESHOLD = 32.0


@dataclass(frozen=True)
class SSIMParams:
    """Non-overlapping block SSIM with the conventional stabilizers.

    Blocks are 8x8; trailing rows/columns that do not fill a block are
    ignored. Statistics are population moments (divide by the pixel count).
    """

    window: int = 8
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 255.0

    @property
    def c1(self) -> float:
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self) -> float:
        return (self.k2 * self.dynamic_range) ** 2


@dataclass
class NoticeAnalysis:
    decline_detected: bool
    decline_evidence: tuple[int, int] | None  # clickable node ids
    color_diversion: bool
    distinct_colors: list[tuple[int, RGB]]  # (clickable_id, dominant RGB)
    ssim_threshold_used: float
    link_styled_ids: list[int] = field(default_factory=list)
    decline_pair_ssim: float | None = None
    decline_pair_text_similarity: float | None = None

    def to_dict(self) -> dict:
        return {
            "decline_detected": self.decline_detected,
            "decline_evidence": list(self.decline_evidence) if self.decline_evidence else None,
            "color_diversion": self.color_diversion,
            "distinct_colors": [[cid, list(rgb)] for cid, rgb in self.distinct_colors],
            "ssim_threshold_used": self.ssim_threshold_used,
            "link_styled_ids": self.link_styled_ids,
            "decline_pair_ssim": self.decline_pair_ssim,
            "decline_pair_text_similarity": self.decline_pair_text_similarity,
        }


def _to_gray(image: np.ndarray) -> np.ndarray:
    if image.ndim == 2:
        return image.astype(np.float64)
    r = image[..., 0].astype(np.float64)
    g = image[..., 1].astype(np.float64)
    b = image[..., 2].astype(np.float64)
    return np.floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5)


def ssim(a: np.ndarray, b: np.ndarray, params: SSIMParams | None = None) -> float:
    """Mean per-block structural similarity; 1.0 exactly for identical
    images, symmetric in its arguments."""
    params = params or SSIMParams()
    if a.shape[:2] != b.shape[:2]:
        raise ValueError(f"dimension mismatch: {a.shape[:2]} vs {b.shape[:2]}")
    ga, gb = _to_gray(a), _to_gray(b)
    w = params.window
    h_blocks, w_blocks = ga.shape[0] // w, ga.shape[1] // w
    if h_blocks == 0 or w_blocks == 0:
        raise ValueError(f"images smaller than one {w}x{w} block")
    ga = ga[: h_blocks * w, : w_blocks * w].reshape(h_blocks, w, w_blocks, w)
    gb = gb[: h_blocks * w, : w_blocks * w].reshape(h_blocks, w, w_blocks, w)
    ga = ga.transpose(0, 2, 1, 3).reshape(h_blocks * w_blocks, w * w)
    gb = gb.transpose(0, 2, 1, 3).reshape(h_blocks * w_blocks, w * w)

    mu_a = ga.mean(axis=1)
    mu_b = gb.mean(axis=1)
    var_a = (ga * ga).mean(axis=1) - mu_a * mu_a
    var_b = (gb * gb).mean(axis=1) - mu_b * mu_b
    cov = (ga * gb).mean(axis=1) - mu_a * mu_b

    c1, c2 = params.c1, params.c2
    num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
    den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    return float(np.mean(num / den))


def _quantize(color: np.ndarray | RGB) -> RGB:
    r, g, b = (int(c) >> 4 for c in color)
    return (r, g, b)


def dominant_color(screenshot: np.ndarray, bbox: BBox) -> RGB:
    """Majority color of the region after 4-bit/channel quantization; the
    representative is the centroid of the winning bucket's actual pixels.
    Ties break to the lexicographically smallest quantized bucket."""
    h, w = screenshot.shape[:2]
    region = bbox.intersection(BBox(0, 0, w, h))
    if region is None or region.area == 0:
        raise ValueError("bbox does not cover any screenshot pixels")
    x0, y0 = int(region.x), int(region.y)
    x1 = max(int(np.ceil(region.right)), x0 + 1)
    y1 = max(int(np.ceil(region.bottom)), y0 + 1)
    patch = screenshot[y0:y1, x0:x1].reshape(-1, 3).astype(np.int64)
    codes = (patch[:, 0] >> 4) * 256 + (patch[:, 1] >> 4) * 16 + (patch[:, 2] >> 4)
    counts = np.bincount(codes, minlength=4096)
    best_code = int(np.argmax(counts))  # argmax takes the smallest code on ties
    members = patch[codes == best_code]
    centroid = np.floor(members.mean(axis=0) + 0.5).astype(int)
    return (int(centroid[0]), int(centroid[1]), int(centroid[2]))


def color_distance(a: RGB, b: RGB) -> float:
    qa, qb = _quantize(a), _quantize(b)
    # Compare in full 8-bit space after snapping each channel to its bucket.
    pa = tuple(c << 4 for c in qa)
    pb = tuple(c << 4 for c in qb)
    return float(np.sqrt(sum((x - y) ** 2 for x, y in zip(pa, pb))))


def detect_decline(
    outcomes: list[ClickOutcome], threshold: float = 0.99
) -> tuple[bool, tuple[int, int] | None, float | None]:
    """(detected, evidence pair of clickable node ids, best pair SSIM).

    True iff two distinct button-kind outcomes produced post-click
    screenshots with pairwise SSIM >= threshold; single-button notices are
    always False."""
    buttons = [
        o
        for o in outcomes
        if o.clickable.kind == ClickableKind.BUTTON
        and o.error is None
        and o.post_screenshot is not None
    ]
    best: tuple[int, int] | None = None
    best_score: float | None = None
    for a, b in combinations(buttons, 2):
        if a.post_screenshot.shape != b.post_screenshot.shape:
            continue
        score = ssim(a.post_screenshot, b.post_screenshot)
        if best_score is None or score > best_score:
            best_score = score
            best = (a.clickable.node_id, b.clickable.node_id)
    if best_score is not None and best_score >= threshold:
        return True, best, best_score
    return False, None, best_score


def detect_color_diversion(
    clickables: list[Clickable],
) -> tuple[bool, list[tuple[int, RGB]]]:
    """True iff two button/link clickables have quantized dominant colors
    further apart than the distance threshold."""
    colored = [
        c
        for c in clickables
        if c.kind in (ClickableKind.BUTTON, ClickableKind.LINK) and c.dominant_color is not None
    ]
    details = [(c.node_id, c.dominant_color) for c in colored]
    for a, b in combinations(colored, 2):
        if color_distance(a.dominant_color, b.dominant_color) > COLOR_DISTANCE_THRESHOLD:
            return True, details
    return False, details


def text_similarity(a: str, b: str, max_len: int = 2000) -> float:
    """Normalized Levenshtein similarity in [0, 1]; inputs truncated to
    bound the quadratic cost."""
    a, b = a[:max_len], b[:max_len]
    if a == b:
        return 1.0
    if not a or not b:
        return 0.0
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return 1.0 - prev[-1] / max(len(a), len(b))


def analyze_notice(
    screenshot: np.ndarray,
    clickables: list[Clickable],
    outcomes: list[ClickOutcome],
    notice_background: RGB | None = None,
    ssim_threshold: float = 0.99,
) -> NoticeAnalysis:
    """Fill per-clickable dominant colors and derive the dark-pattern
    verdicts for one notice."""
    for c in clickables:
        if c.dominant_color is None and c.bbox.area > 0:
            try:
                c.dominant_color = dominant_color(screenshot, c.bbox)
            except ValueError:
                pass

    detected, evidence, best_ssim = detect_decline(outcomes, ssim_threshold)
    diversion, colors = detect_color_diversion(clickables)

    link_styled = []
    for c in clickables:
        if c.kind == ClickableKind.LINK:
            link_styled.append(c.node_id)
        elif (
            c.kind == ClickableKind.BUTTON
            and notice_background is not None
            and c.dominant_color is not None
            and color_distance(c.dominant_color, notice_background) <= COLOR_DISTANCE_THRESHOLD
        ):
            link_styled.append(c.node_id)

    pair_text_sim = None
    if evidence is not None:
        by_id = {o.clickable.node_id: o for o in outcomes}
        a, b = by_id.get(evidence[0]), by_id.get(evidence[1])
        if a is not None and b is not None and (a.post_text or b.post_text):
            pair_text_sim = text_similarity(a.post_text, b.post_text)

    return NoticeAnalysis(
        decline_detected=detected,
        decline_evidence=evidence,
        color_diversion=diversion,
        distinct_colors=colors,
        ssim_threshold_used=ssim_threshold,
        link_styled_ids=link_styled,
        decline_pair_ssim=best_ssim,
        decline_pair_text_similarity=pair_text_sim,
    )
