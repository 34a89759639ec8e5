"""Inline-style parsing and computed-style resolution for the built-in
engine. Only the property subset the fixture corpus needs is understood;
unknown properties are ignored."""

from __future__ import annotations

import re
from dataclasses import dataclass

RGB = tuple[int, int, int]

NAMED_COLORS: dict[str, RGB | None] = {
    "white": (255, 255, 255),
    "black": (0, 0, 0),
    "red": (255, 0, 0),
    "green": (0, 128, 0),
    "blue": (0, 0, 255),
    "yellow": (255, 255, 0),
    "orange": (255, 165, 0),
    "purple": (128, 0, 128),
    "gray": (128, 128, 128),
    "grey": (128, 128, 128),
    "silver": (192, 192, 192),
    "whitesmoke": (245, 245, 245),
    "gainsboro": (220, 220, 220),
    "lightgray": (211, 211, 211),
    "lightgrey": (211, 211, 211),
    "darkgray": (169, 169, 169),
    "dimgray": (105, 105, 105),
    "navy": (0, 0, 128),
    "teal": (0, 128, 128),
    "transparent": None,
}

_RGB_FN = re.compile(r"rgba?\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)")

BLOCK_TAGS = {
    "html", "body", "div", "p", "h1", "h2", "h3", "h4", "h5", "h6",
    "section", "header", "footer", "nav", "article", "aside", "main",
    "ul", "ol", "li", "form", "table", "figure", "blockquote", "pre",
}
INLINE_BLOCK_TAGS = {"button", "input", "select", "textarea", "img", "iframe"}
HIDDEN_TAGS = {"head", "title", "meta", "link", "script", "style", "base", "noscript"}
MEDIA_TAGS = {"img", "picture", "video", "canvas", "svg", "audio"}

_TAG_FONT_SIZES = {"h1": 32, "h2": 24, "h3": 19, "small": 13}
_TAG_VMARGINS = {"p": 16, "h1": 21, "h2": 20, "h3": 19, "ul": 16, "ol": 16}


def parse_inline_style(style: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for part in style.split(";"):
        if ":" not in part:
            continue
        name, _, value = part.partition(":")
        out[name.strip().lower()] = value.strip()
    return out


def parse_color(value: str) -> RGB | None:
    value = value.strip().lower()
    if value.startswith("#"):
        hexpart = value[1:]
        if len(hexpart) == 3:
            hexpart = "".join(ch * 2 for ch in hexpart)
        if len(hexpart) >= 6:
            try:
                return (
                    int(hexpart[0:2], 16),
                    int(hexpart[2:4], 16),
                    int(hexpart[4:6], 16),
                )
            except ValueError:
                return None
        return None
    m = _RGB_FN.match(value)
    if m:
        return tuple(min(255, int(g)) for g in m.groups())  # type: ignore[return-value]
    return NAMED_COLORS.get(value)


@dataclass
class Length:
    value: float
    is_percent: bool = False

    def resolve(self, base: float) -> float:
        return base * self.value / 100.0 if self.is_percent else self.value


def parse_length(value: str) -> Length | None:
    value = value.strip().lower()
    if value in ("auto", ""):
        return None
    try:
        if value.endswith("%"):
            return Length(float(value[:-1]), is_percent=True)
        if value.endswith("px"):
            return Length(float(value[:-2]))
        if value.endswith("em"):
            return Length(float(value[:-2]) * 16.0)
        return Length(float(value))
    except ValueError:
        return None


@dataclass
class ComputedStyle:
    display: str = "block"  # block | inline | inline-block | none
    position: str = "static"  # static | relative | fixed | absolute
    top: Length | None = None
    right: Length | None = None
    bottom: Length | None = None
    left: Length | None = None
    width: Length | None = None
    height: Length | None = None
    background: RGB | None = None
    color: RGB = (0, 0, 0)
    z_index: int | None = None  # None = auto
    cursor: str = "auto"
    font_size: float = 16.0
    padding: float = 0.0
    margin: float = 0.0
    v_margin: float = 0.0  # top/bottom margin for flow tags like <p>
    border_width: float = 0.0
    border_color: RGB = (0, 0, 0)
    visibility: str = "visible"


def compute_style(tag: str, attrs: dict[str, str], parent: ComputedStyle | None) -> ComputedStyle:
    st = ComputedStyle()

    if parent is not None:
        st.color = parent.color
        st.font_size = parent.font_size
        st.cursor = parent.cursor
        if parent.visibility == "hidden":
            st.visibility = "hidden"

    if tag in HIDDEN_TAGS:
        st.display = "none"
    elif tag in INLINE_BLOCK_TAGS:
        st.display = "inline-block"
    elif tag in BLOCK_TAGS:
        st.display = "block"
    else:
        st.display = "inline"

    st.font_size = float(_TAG_FONT_SIZES.get(tag, st.font_size))
    st.v_margin = float(_TAG_VMARGINS.get(tag, 0))
    if tag == "body":
        st.margin = 8.0
    if tag == "button":
        st.padding = 8.0
        st.background = (239, 239, 239)
        st.cursor = "pointer"
        st.border_width = 1.0
        st.border_color = (118, 118, 118)
    if tag == "a" and "href" in attrs:
        st.cursor = "pointer"
        st.color = (0, 0, 238)
    if tag == "input":
        st.padding = 4.0
        st.border_width = 1.0
        st.border_color = (118, 118, 118)
        st.background = (255, 255, 255)
        if attrs.get("type", "text").lower() in ("button", "submit", "checkbox", "radio"):
            st.cursor = "pointer"
    if tag in ("img", "iframe", "video", "canvas"):
        # replaced elements size from their width/height attributes
        for prop in ("width", "height"):
            if prop in attrs:
                length = parse_length(attrs[prop])
                if length is not None:
                    setattr(st, prop, length)

    inline = parse_inline_style(attrs.get("style", ""))
    if "display" in inline and st.display != "none":
        st.display = inline["display"]
    if inline.get("display") == "none":
        st.display = "none"
    if "position" in inline:
        st.position = inline["position"]
    for prop in ("top", "right", "bottom", "left", "width", "height"):
        if prop in inline:
            setattr(st, prop, parse_length(inline[prop]))
    for prop in ("background-color", "background"):
        if prop in inline:
            st.background = parse_color(inline[prop].split()[0])
            break
    if "color" in inline:
        parsed = parse_color(inline["color"])
        if parsed is not None:
            st.color = parsed
    if "z-index" in inline:
        try:
            st.z_index = int(inline["z-index"])
        except ValueError:
            pass
    if "cursor" in inline:
        st.cursor = inline["cursor"]
    if "font-size" in inline:
        length = parse_length(inline["font-size"])
        if length is not None and not length.is_percent:
            st.font_size = length.value
    if "padding" in inline:
        length = parse_length(inline["padding"].split()[0])
        if length is not None:
            st.padding = length.resolve(0)
    if "margin" in inline:
        length = parse_length(inline["margin"].split()[0])
        if length is not None and not length.is_percent:
            st.margin = length.value
            st.v_margin = length.value
    if "border" in inline:
        parts = inline["border"].split()
        if parts:
            length = parse_length(parts[0])
            if length is not None:
                st.border_width = length.value
            for token in parts[1:]:
                color = parse_color(token)
                if color is not None:
                    st.border_color = color
    if "visibility" in inline:
        st.visibility = inline["visibility"]
    return st
