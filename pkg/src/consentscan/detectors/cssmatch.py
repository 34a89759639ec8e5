"""Minimal CSS selector matcher over snapshot DOM trees.

Supports the grammar the cosmetic filter lists actually use for consent
rules: tag, *, #id, .class, [attr], [attr=val], [attr*=val], [attr^=val],
[attr$=val], [attr~=val], descendant and child combinators, and comma
lists. Anything else raises UnsupportedSelectorError so the caller can
skip the rule and keep counting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..snapshot import PageSnapshot


class UnsupportedSelectorError(Exception):
    pass


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<child>>)
  | (?P<comma>,)
  | (?P<hash>\#[-\w]+)
  | (?P<class>\.[-\w]+)
  | (?P<attr>\[\s*[-\w]+\s*(?:[*^$~]?=\s*(?:"[^"]*"|'[^']*'|[^\]\s]+)\s*)?\])
  | (?P<tag>[-\w]+|\*)
""",
    re.VERBOSE,
)

_ATTR = re.compile(
    r"""\[\s*(?P<name>[-\w]+)\s*(?:(?P<op>[*^$~]?=)\s*(?:"(?P<dq>[^"]*)"|'(?P<sq>[^']*)'|(?P<raw>[^\]\s]+))\s*)?\]""",
    re.VERBOSE,
)


@dataclass
class Compound:
    """One simple-selector sequence, e.g. div.banner[role=dialog]."""

    tag: str | None = None
    ids: list[str] = field(default_factory=list)
    classes: list[str] = field(default_factory=list)
    attrs: list[tuple[str, str, str]] = field(default_factory=list)  # (name, op, value)

    def is_empty(self) -> bool:
        return self.tag is None and not self.ids and not self.classes and not self.attrs


@dataclass
class CompiledSelector:
    # compounds right-to-left; combinator[i] links compounds[i] to compounds[i+1]
    # (" " = descendant, ">" = child)
    compounds: list[Compound]
    combinators: list[str]


def _parse_compound_token(tok: str, compound: Compound) -> None:
    if tok.startswith("#"):
        compound.ids.append(tok[1:])
    elif tok.startswith("."):
        compound.classes.append(tok[1:])
    elif tok.startswith("["):
        m = _ATTR.fullmatch(tok)
        if not m:
            raise UnsupportedSelectorError(f"bad attribute selector {tok!r}")
        value = m.group("dq") if m.group("dq") is not None else m.group("sq")
        if value is None:
            value = m.group("raw")
        compound.attrs.append((m.group("name").lower(), m.group("op") or "", value or ""))
    else:
        if compound.tag is not None:
            raise UnsupportedSelectorError("two tag names in one compound")
        compound.tag = tok.lower()


def compile_selector(selector: str) -> list[CompiledSelector]:
    """Compile a selector list; raises UnsupportedSelectorError outside the
    supported grammar."""
    selector = selector.strip()
    if not selector:
        raise UnsupportedSelectorError("empty selector")
    # Pseudo-classes, sibling combinators etc. fail tokenization below.
    results: list[CompiledSelector] = []
    compounds: list[Compound] = []
    combinators: list[str] = []
    current = Compound()
    pending: str | None = None  # combinator waiting for the next compound

    def flush_compound() -> None:
        nonlocal current, pending
        if current.is_empty():
            return
        if compounds:
            combinators.append(pending if pending == ">" else " ")
        compounds.append(current)
        current = Compound()
        pending = None

    def flush_selector() -> None:
        nonlocal compounds, combinators
        flush_compound()
        if not compounds:
            raise UnsupportedSelectorError("selector with empty alternative")
        results.append(CompiledSelector(compounds=list(reversed(compounds)), combinators=list(reversed(combinators))))
        compounds = []
        combinators = []

    pos = 0
    saw_gap = False
    while pos < len(selector):
        m = _TOKEN.match(selector, pos)
        if not m:
            raise UnsupportedSelectorError(f"cannot parse {selector!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            saw_gap = True
            continue
        if kind == "comma":
            flush_selector()
            saw_gap = False
            continue
        if kind == "child":
            flush_compound()
            pending = ">"
            saw_gap = False
            continue
        if saw_gap and not current.is_empty():
            flush_compound()
        saw_gap = False
        _parse_compound_token(m.group(0), current)
    flush_selector()
    return results


def _attr_match(value: str | None, op: str, wanted: str) -> bool:
    if value is None:
        return False
    if op == "":
        return True
    if op == "=":
        return value == wanted
    if op == "*=":
        return wanted != "" and wanted in value
    if op == "^=":
        return wanted != "" and value.startswith(wanted)
    if op == "$=":
        return wanted != "" and value.endswith(wanted)
    if op == "~=":
        return wanted in value.split()
    raise UnsupportedSelectorError(f"attribute operator {op!r}")


def _compound_matches(snapshot: PageSnapshot, node_id: int, compound: Compound) -> bool:
    node = snapshot.node(node_id)
    if compound.tag not in (None, "*") and node.tag != compound.tag:
        return False
    for wanted_id in compound.ids:
        if node.attributes.get("id") != wanted_id:
            return False
    if compound.classes:
        classes = set(node.attributes.get("class", "").split())
        if not all(c in classes for c in compound.classes):
            return False
    for name, op, wanted in compound.attrs:
        if name not in node.attributes:
            return False
        if not _attr_match(node.attributes.get(name), op, wanted):
            return False
    return True


def _matches_from(snapshot: PageSnapshot, node_id: int, sel: CompiledSelector, idx: int) -> bool:
    """Match compounds[idx:] with node_id anchored at compounds[idx]."""
    if not _compound_matches(snapshot, node_id, sel.compounds[idx]):
        return False
    if idx == len(sel.compounds) - 1:
        return True
    combinator = sel.combinators[idx]
    parent = snapshot.parent_of(node_id)
    if combinator == ">":
        return parent is not None and _matches_from(snapshot, parent.node_id, sel, idx + 1)
    while parent is not None:
        if _matches_from(snapshot, parent.node_id, sel, idx + 1):
            return True
        parent = snapshot.parent_of(parent.node_id)
    return False


def css_match(snapshot: PageSnapshot, selector: str) -> list[int]:
    """Document-order node ids matching the selector."""
    compiled = compile_selector(selector)
    out = []
    for node in snapshot.nodes:
        if any(_matches_from(snapshot, node.node_id, sel, 0) for sel in compiled):
            out.append(node.node_id)
    return out
