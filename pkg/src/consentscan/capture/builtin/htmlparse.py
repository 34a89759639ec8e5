"""HTML document parsing into an element tree.

Template subtrees (declarative shadow roots) are dropped entirely: their
host stays in the tree as an opaque leaf, matching how the DOM walk sees
shadow content in a real browser. Script/style text never becomes page
text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser

VOID_ELEMENTS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

_RAW_TEXT = {"script", "style"}


@dataclass
class Element:
    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    parent: "Element | None" = None
    children: list["Element | str"] = field(default_factory=list)  # str = text run

    def element_children(self) -> list["Element"]:
        return [c for c in self.children if isinstance(c, Element)]

    def own_text_raw(self) -> str:
        return " ".join(c for c in self.children if isinstance(c, str))

    def iter_tree(self):
        yield self
        for child in self.element_children():
            yield from child.iter_tree()

    def find_all(self, tag: str) -> list["Element"]:
        return [e for e in self.iter_tree() if e.tag == tag]


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = Element(tag="#document")
        self.stack = [self.root]
        self._template_depth = 0
        self._raw_depth = 0

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        if self._template_depth > 0:
            if tag == "template":
                self._template_depth += 1
            return
        if tag == "template":
            self._template_depth = 1
            return
        element = Element(tag=tag, attrs={k.lower(): (v or "") for k, v in attrs})
        parent = self.stack[-1]
        element.parent = parent
        parent.children.append(element)
        if tag in _RAW_TEXT:
            self._raw_depth += 1
        if tag not in VOID_ELEMENTS:
            self.stack.append(element)

    def handle_startendtag(self, tag, attrs):
        self.handle_starttag(tag, attrs)
        tag = tag.lower()
        if self._template_depth == 0 and tag not in VOID_ELEMENTS:
            self.handle_endtag(tag)

    def handle_endtag(self, tag):
        tag = tag.lower()
        if self._template_depth > 0:
            if tag == "template":
                self._template_depth -= 1
            return
        if tag in _RAW_TEXT and self._raw_depth > 0:
            self._raw_depth -= 1
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_data(self, data):
        if self._template_depth > 0 or self._raw_depth > 0:
            return
        if data.strip():
            self.stack[-1].children.append(data)


def parse_html(text: str) -> Element:
    """Parse a document, guaranteeing an html > body scaffold."""
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    doc = builder.root

    html = next((e for e in doc.element_children() if e.tag == "html"), None)
    if html is None:
        html = Element(tag="html")
        for child in doc.children:
            if isinstance(child, Element):
                child.parent = html
            html.children.append(child)
        doc.children = [html]
        html.parent = doc

    body = next((e for e in html.element_children() if e.tag == "body"), None)
    if body is None:
        body = Element(tag="body", parent=html)
        moved: list[Element | str] = []
        kept: list[Element | str] = []
        for child in html.children:
            if isinstance(child, Element) and child.tag == "head":
                kept.append(child)
            else:
                if isinstance(child, Element):
                    child.parent = body
                moved.append(child)
        body.children = moved
        html.children = kept + [body]
    return html
