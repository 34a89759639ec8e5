"""Rasterizer for the built-in engine.

Paints backgrounds, borders, and block glyphs for text (one solid cell per
character) onto an RGB canvas. Paint order follows effective z then
document order, so overlays land on top exactly as hit testing expects.
"""

from __future__ import annotations

import numpy as np

from ...snapshot import Viewport
from .layout import LayoutBox, char_width, iter_boxes, line_height
from .style import MEDIA_TAGS, RGB


def _fill(canvas: np.ndarray, x0: float, y0: float, x1: float, y1: float, color: RGB) -> None:
    h, w = canvas.shape[:2]
    xi0, yi0 = max(int(round(x0)), 0), max(int(round(y0)), 0)
    xi1, yi1 = min(int(round(x1)), w), min(int(round(y1)), h)
    if xi1 > xi0 and yi1 > yi0:
        canvas[yi0:yi1, xi0:xi1] = color


def _paint_text_line(canvas: np.ndarray, line, suppress: bool) -> None:
    cw = char_width(line.font_size)
    lh = line_height(line.font_size)
    # Glyphs are solid blocks inset within their cell; spaces stay empty.
    inset_x = max(cw * 0.18, 1.0)
    inset_top = max(lh * 0.22, 1.0)
    inset_bottom = max(lh * 0.28, 1.0)
    for i, ch in enumerate(line.text):
        if ch == " ":
            continue
        x = line.x + i * cw
        _fill(
            canvas,
            x + inset_x,
            line.y + inset_top,
            x + cw - inset_x,
            line.y + lh - inset_bottom,
            line.color,
        )


def render(root: LayoutBox, viewport: Viewport, suppress_media: bool = True) -> np.ndarray:
    boxes = list(iter_boxes(root))
    page_bg: RGB = (255, 255, 255)
    for box in boxes:
        if box.element.tag in ("html", "body") and box.style.background is not None:
            page_bg = box.style.background

    canvas = np.empty((viewport.height_px, viewport.width_px, 3), dtype=np.uint8)
    canvas[:, :] = page_bg

    paintable = sorted(
        ((box.eff_z, order, box) for order, box in enumerate(boxes) if box.visible),
        key=lambda item: (item[0], item[1]),
    )

    for _, _, box in paintable:
        if box.element.tag in MEDIA_TAGS:
            if not suppress_media:
                _fill(canvas, box.x, box.y, box.right, box.bottom, (200, 200, 200))
            continue
        if box.element.tag not in ("html", "body"):  # page bg already covers the canvas
            bw = box.style.border_width
            if bw > 0 and box.style.background is not None:
                _fill(canvas, box.x, box.y, box.right, box.bottom, box.style.border_color)
                _fill(canvas, box.x + bw, box.y + bw, box.right - bw, box.bottom - bw, box.style.background)
            elif bw > 0:
                bc = box.style.border_color
                _fill(canvas, box.x, box.y, box.right, box.y + bw, bc)
                _fill(canvas, box.x, box.bottom - bw, box.right, box.bottom, bc)
                _fill(canvas, box.x, box.y, box.x + bw, box.bottom, bc)
                _fill(canvas, box.right - bw, box.y, box.right, box.bottom, bc)
            elif box.style.background is not None:
                _fill(canvas, box.x, box.y, box.right, box.bottom, box.style.background)
        for line in box.text_lines:
            _paint_text_line(canvas, line, suppress_media)

    return canvas
