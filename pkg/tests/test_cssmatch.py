import pytest
from hypothesis import given, settings, strategies as st

from consentscan.detectors.cssmatch import UnsupportedSelectorError, css_match

from conftest import make_node, make_snapshot, simple_page
from oracles import naive_css_match


def sample_dom():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "div", (0, 0, 100, 50), attrs={"id": "cookieConsent", "class": "gdpr banner x"}),
        make_node(3, 2, "p", (0, 0, 100, 20), attrs={"class": "msg"}, text="hello"),
        make_node(4, 2, "a", (0, 20, 50, 20), attrs={"href": "https://x.test/privacy", "class": "msg link"}),
        make_node(5, 1, "div", (0, 60, 100, 30), attrs={"class": "banner", "data-role": "other"}),
        make_node(6, 5, "span", (0, 60, 40, 10), attrs={"class": "msg"}),
    ]
    return make_snapshot(nodes)


def test_id_selector():
    assert css_match(sample_dom(), "#cookieConsent") == [2]


def test_class_set_semantics():
    assert css_match(sample_dom(), "div.banner.gdpr") == [2]


def test_tag_selector():
    assert css_match(sample_dom(), "a") == [4]


def test_universal():
    assert css_match(sample_dom(), "*") == [0, 1, 2, 3, 4, 5, 6]


def test_attr_presence_and_value():
    assert css_match(sample_dom(), "[data-role]") == [5]
    assert css_match(sample_dom(), "[data-role=other]") == [5]
    assert css_match(sample_dom(), '[data-role="other"]') == [5]


def test_attr_substring_ops():
    snap = sample_dom()
    assert css_match(snap, "[href*=privacy]") == [4]
    assert css_match(snap, '[href^="https://"]') == [4]
    assert css_match(snap, "[href$=privacy]") == [4]
    assert css_match(snap, "[class~=link]") == [4]


def test_descendant_combinator():
    assert css_match(sample_dom(), "#cookieConsent .msg") == [3, 4]
    assert css_match(sample_dom(), "body .msg") == [3, 4, 6]


def test_child_combinator():
    assert css_match(sample_dom(), "body > div") == [2, 5]
    assert css_match(sample_dom(), "body > p") == []


def test_comma_list():
    assert css_match(sample_dom(), "#cookieConsent, span.msg") == [2, 6]


def test_unsupported_selectors():
    snap = sample_dom()
    for bad in (":has(> .x)", "div:hover", "p + p", "div ~ span", "", "  "):
        with pytest.raises(UnsupportedSelectorError):
            css_match(snap, bad)


# -- oracle equivalence on random DOMs ----------------------------------------

_TAGS = ["div", "p", "span", "a", "section"]
_CLASSES = ["banner", "gdpr", "msg", "x", "wide"]
_IDS = ["top", "mid", "low"]


@st.composite
def dom_and_selector(draw):
    n = draw(st.integers(min_value=1, max_value=14))
    nodes = simple_page()
    for i in range(2, 2 + n):
        attrs = {}
        if draw(st.booleans()):
            attrs["class"] = " ".join(
                draw(st.lists(st.sampled_from(_CLASSES), min_size=1, max_size=3, unique=True))
            )
        if draw(st.booleans()):
            attrs["id"] = draw(st.sampled_from(_IDS))
        if draw(st.booleans()):
            attrs["data-x"] = draw(st.sampled_from(["alpha", "beta", "alphabet"]))
        nodes.append(
            make_node(
                i,
                draw(st.integers(min_value=1, max_value=i - 1)),
                draw(st.sampled_from(_TAGS)),
                (0, 0, 10, 10),
                attrs=attrs,
            )
        )
    snap = make_snapshot(nodes)

    def compound():
        parts = []
        if draw(st.booleans()):
            parts.append(draw(st.sampled_from(_TAGS + ["*"])))
        if draw(st.booleans()):
            parts.append("." + draw(st.sampled_from(_CLASSES)))
        if draw(st.booleans()):
            parts.append("#" + draw(st.sampled_from(_IDS)))
        if draw(st.booleans()):
            op = draw(st.sampled_from(["", "=", "*=", "^=", "$="]))
            if op:
                parts.append(f"[data-x{op}{draw(st.sampled_from(['alpha', 'beta', 'al']))}]")
            else:
                parts.append("[data-x]")
        if not parts:
            parts.append(draw(st.sampled_from(_TAGS)))
        return "".join(parts)

    depth = draw(st.integers(min_value=1, max_value=3))
    pieces = [compound()]
    for _ in range(depth - 1):
        pieces.append(draw(st.sampled_from([" ", " > "])))
        pieces.append(compound())
    return snap, "".join(pieces)


@settings(max_examples=200, deadline=None)
@given(dom_and_selector())
def test_css_match_agrees_with_naive_oracle(case):
    snap, selector = case
    assert css_match(snap, selector) == naive_css_match(snap, selector)
