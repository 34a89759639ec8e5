"""Box layout for the built-in engine.

A two-mode flow model: block children stack vertically, consecutive
inline/inline-block children share wrapping rows, text runs become wrapped
line boxes. Fixed/absolute elements are positioned against the viewport or
the nearest positioned ancestor. Explicit widths/heights use border-box
semantics. Character cells are font_size/2 wide and font_size*1.25 tall,
which keeps geometry trivially predictable for fixture truths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ...snapshot import Viewport, normalize_text
from .htmlparse import Element
from .style import MEDIA_TAGS, RGB, ComputedStyle, compute_style

INLINE_GAP = 4.0  # whitespace between inline siblings

_TEXTUAL_INPUTS = ("button", "submit", "text", "search", "email")


def char_width(font_size: float) -> float:
    return max(round(font_size * 0.5), 1)


def line_height(font_size: float) -> float:
    return max(round(font_size * 1.25), 1)


@dataclass
class TextLine:
    x: float
    y: float
    text: str
    font_size: float
    color: RGB


@dataclass
class LayoutBox:
    element: Element
    style: ComputedStyle
    x: float = 0.0
    y: float = 0.0
    w: float = 0.0
    h: float = 0.0
    visible: bool = True
    eff_z: int = 0
    text_lines: list[TextLine] = field(default_factory=list)
    children: list["LayoutBox"] = field(default_factory=list)

    @property
    def right(self) -> float:
        return self.x + self.w

    @property
    def bottom(self) -> float:
        return self.y + self.h


@dataclass
class _Rect:
    x: float
    y: float
    w: float
    h: float


def wrap_text(text: str, max_width: float, font_size: float) -> list[str]:
    """Greedy word wrap at character-cell granularity; at least one word
    per line."""
    words = normalize_text(text).split()
    if not words:
        return []
    cw = char_width(font_size)
    max_chars = max(int(max_width // cw), 1)
    lines: list[str] = []
    current = words[0]
    for word in words[1:]:
        if len(current) + 1 + len(word) <= max_chars:
            current += " " + word
        else:
            lines.append(current)
            current = word
    lines.append(current)
    return lines


def text_width(text: str, font_size: float) -> float:
    return len(text) * char_width(font_size)


def _is_checkbox(el: Element) -> bool:
    return el.tag == "input" and el.attrs.get("type", "").lower() in ("checkbox", "radio")


class Layouter:
    def __init__(self, viewport: Viewport, suppress_media: bool = True):
        self.viewport = viewport
        self.suppress_media = suppress_media

    def viewport_rect(self) -> _Rect:
        return _Rect(0, 0, float(self.viewport.width_px), float(self.viewport.height_px))

    def layout(self, html_el: Element) -> LayoutBox:
        style = compute_style(html_el.tag, html_el.attrs, None)
        vp = self.viewport_rect()
        root = self._layout_element(html_el, style, 0.0, 0.0, vp.w, vp, 0)
        root.h = max(root.h, vp.h)
        return root

    # -- measurement ------------------------------------------------------

    def _measure_content_width(self, el: Element, style: ComputedStyle) -> float:
        """Shrink-to-fit width: widest text run or child row."""
        inset = 2 * (style.padding + style.border_width)
        if el.tag == "input":
            if _is_checkbox(el):
                return 13.0
            return text_width(el.attrs.get("value", "") or " " * 10, style.font_size) + inset
        widths = [0.0]
        run = 0.0
        for child in el.children:
            if isinstance(child, str):
                widths.append(text_width(normalize_text(child), style.font_size))
                continue
            cs = compute_style(child.tag, child.attrs, style)
            if cs.display == "none" or cs.position in ("fixed", "absolute"):
                continue
            if cs.width is not None and not cs.width.is_percent:
                w = cs.width.value
            else:
                w = self._measure_content_width(child, cs)
            if cs.display in ("inline", "inline-block"):
                run += w + (INLINE_GAP if run else 0.0)
                widths.append(run)
            else:
                run = 0.0
                widths.append(w)
        return max(widths) + inset

    # -- main recursion ----------------------------------------------------

    def _layout_element(
        self,
        el: Element,
        style: ComputedStyle,
        x: float,
        y: float,
        avail_w: float,
        positioned_cb: _Rect,
        eff_z: int,
    ) -> LayoutBox:
        box = LayoutBox(element=el, style=style)
        box.eff_z = style.z_index if style.z_index is not None else eff_z

        if style.display == "none":
            self._zero_subtree(el, style, box)
            return box

        # border-box width; positioned left+right pairs resolve first
        if style.width is not None:
            w = style.width.resolve(avail_w)
        elif (
            style.position in ("fixed", "absolute")
            and style.left is not None
            and style.right is not None
        ):
            w = max(
                positioned_cb.w
                - style.left.resolve(positioned_cb.w)
                - style.right.resolve(positioned_cb.w),
                0.0,
            )
        elif _is_checkbox(el):
            w = 13.0
        elif style.display in ("inline", "inline-block"):
            w = self._measure_content_width(el, style)
        else:
            w = max(avail_w - 2 * style.margin, 0.0)

        box.x, box.y, box.w = x, y, w

        own_cb = positioned_cb
        if style.position in ("relative", "fixed", "absolute"):
            own_cb = _Rect(box.x, box.y, box.w, 0.0)  # height patched below

        content_h = self._flow_children(el, style, box, own_cb)

        if el.tag == "input" and not _is_checkbox(el):
            value = el.attrs.get("value", "")
            pad = style.padding + style.border_width
            if value:
                box.text_lines.append(
                    TextLine(box.x + pad, box.y + pad, normalize_text(value), style.font_size, style.color)
                )
            content_h = max(content_h, line_height(style.font_size))

        if style.height is not None:
            base = positioned_cb.h if style.position in ("fixed", "absolute") else 0.0
            box.h = style.height.resolve(base)
        elif _is_checkbox(el):
            box.h = 13.0
        else:
            box.h = content_h + 2 * (style.padding + style.border_width)
        if own_cb is not positioned_cb:
            own_cb.h = box.h

        self._position_out_of_flow(box, positioned_cb)
        if own_cb is not positioned_cb:
            own_cb.x, own_cb.y = box.x, box.y
        box.visible = self._visibility(el, style, box)
        return box

    def _flow_children(
        self, el: Element, style: ComputedStyle, box: LayoutBox, own_cb: _Rect
    ) -> float:
        pad = style.padding + style.border_width
        cx, cy = box.x + pad, box.y + pad
        content_w = max(box.w - 2 * pad, 1.0)
        cursor_y = cy
        row: list[LayoutBox] = []
        row_x = cx
        row_h = 0.0

        def flush_row() -> None:
            nonlocal row, row_x, row_h, cursor_y
            if row:
                cursor_y += row_h
            row = []
            row_x = cx
            row_h = 0.0

        for child in el.children:
            if isinstance(child, str):
                flush_row()
                lines = wrap_text(child, content_w, style.font_size)
                lh = line_height(style.font_size)
                for line in lines:
                    box.text_lines.append(
                        TextLine(x=cx, y=cursor_y, text=line, font_size=style.font_size, color=style.color)
                    )
                    cursor_y += lh
                continue

            cs = compute_style(child.tag, child.attrs, style)
            if child.tag == "br":
                flush_row()
                cursor_y += line_height(style.font_size)
                child_box = LayoutBox(element=child, style=cs, visible=False)
                child_box.eff_z = box.eff_z
                box.children.append(child_box)
                continue
            if cs.display == "none":
                box.children.append(
                    self._layout_element(child, cs, cx, cursor_y, content_w, own_cb, box.eff_z)
                )
                continue
            if cs.position in ("fixed", "absolute"):
                cb = self.viewport_rect() if cs.position == "fixed" else own_cb
                box.children.append(
                    self._layout_element(child, cs, cx, cursor_y, cb.w, cb, box.eff_z)
                )
                continue

            if cs.display in ("inline", "inline-block"):
                child_box = self._layout_element(
                    child, cs, row_x, cursor_y, content_w, own_cb, box.eff_z
                )
                if row and row_x + child_box.w > cx + content_w:
                    flush_row()
                    self._shift_subtree(child_box, row_x - child_box.x, cursor_y - child_box.y)
                box.children.append(child_box)
                row.append(child_box)
                row_x = child_box.right + INLINE_GAP
                row_h = max(row_h, child_box.h)
            else:
                flush_row()
                child_box = self._layout_element(
                    child, cs, cx + cs.margin, cursor_y + cs.v_margin, content_w, own_cb, box.eff_z
                )
                box.children.append(child_box)
                cursor_y = child_box.bottom + cs.v_margin

        flush_row()
        return max(cursor_y - cy, 0.0)

    def _position_out_of_flow(self, box: LayoutBox, cb: _Rect) -> None:
        st = box.style
        if st.position not in ("fixed", "absolute"):
            return
        if st.top is not None and st.bottom is not None and st.height is None:
            box.h = max(cb.h - st.top.resolve(cb.h) - st.bottom.resolve(cb.h), 0.0)
        dx = dy = 0.0
        if st.left is not None:
            dx = cb.x + st.left.resolve(cb.w) - box.x
        elif st.right is not None:
            dx = cb.x + cb.w - st.right.resolve(cb.w) - box.w - box.x
        if st.top is not None:
            dy = cb.y + st.top.resolve(cb.h) - box.y
        elif st.bottom is not None:
            dy = cb.y + cb.h - st.bottom.resolve(cb.h) - box.h - box.y
        if dx or dy:
            self._shift_subtree(box, dx, dy)

    def _shift_subtree(self, box: LayoutBox, dx: float, dy: float) -> None:
        box.x += dx
        box.y += dy
        for line in box.text_lines:
            line.x += dx
            line.y += dy
        for child in box.children:
            self._shift_subtree(child, dx, dy)

    def _zero_subtree(self, el: Element, style: ComputedStyle, box: LayoutBox) -> None:
        box.x = box.y = box.w = box.h = 0.0
        box.visible = False
        for child in el.element_children():
            cs = compute_style(child.tag, child.attrs, style)
            cs.display = "none"
            child_box = LayoutBox(element=child, style=cs)
            child_box.eff_z = box.eff_z
            self._zero_subtree(child, cs, child_box)
            box.children.append(child_box)

    def _visibility(self, el: Element, style: ComputedStyle, box: LayoutBox) -> bool:
        if style.display == "none" or style.visibility == "hidden":
            return False
        if box.w <= 0 or box.h <= 0:
            return False
        if self.suppress_media and el.tag in MEDIA_TAGS:
            return False
        return True


def iter_boxes(box: LayoutBox):
    yield box
    for child in box.children:
        yield from iter_boxes(child)
