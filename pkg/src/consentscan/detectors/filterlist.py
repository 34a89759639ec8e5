"""Method 3: cosmetic filter rules matched against the snapshot DOM.

Parses Adblock-syntax element-hiding rules (``##`` / ``#@#``) from
EasyList-style lists. Network rules, extended-CSS rules and malformed
lines are skipped and counted, never fatal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from ..snapshot import PageSnapshot
from .cssmatch import UnsupportedSelectorError, css_match
from .results import DetectionResult, Method, make_result

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CosmeticRule:
    selector: str
    domains: tuple[str, ...] = ()  # positive domain patterns
    excluded_domains: tuple[str, ...] = ()  # "~dom" negations
    is_exception: bool = False

    def applies_to(self, host: str) -> bool:
        if any(_domain_matches(host, d) for d in self.excluded_domains):
            return False
        if not self.domains:
            return True
        return any(_domain_matches(host, d) for d in self.domains)


@dataclass
class RuleSet:
    source_name: str
    generic: list[CosmeticRule] = field(default_factory=list)
    specific: dict[str, list[CosmeticRule]] = field(default_factory=dict)
    exceptions: list[CosmeticRule] = field(default_factory=list)
    skipped_network: int = 0
    skipped_unsupported: int = 0
    malformed: int = 0

    @property
    def rule_count(self) -> int:
        return len(self.generic) + sum(len(v) for v in self.specific.values())

    def merge(self, other: "RuleSet") -> "RuleSet":
        merged = RuleSet(source_name=f"{self.source_name}+{other.source_name}")
        merged.generic = self.generic + other.generic
        for src in (self.specific, other.specific):
            for dom, rules in src.items():
                merged.specific.setdefault(dom, []).extend(rules)
        merged.exceptions = self.exceptions + other.exceptions
        merged.skipped_network = self.skipped_network + other.skipped_network
        merged.skipped_unsupported = self.skipped_unsupported + other.skipped_unsupported
        merged.malformed = self.malformed + other.malformed
        return merged


# Minimal multi-label public suffixes; enough for filter-list scoping and
# third-party classification without vendoring the full suffix list.
_TWO_PART_SUFFIXES = {
    "co.uk", "org.uk", "gov.uk", "ac.uk", "com.au", "net.au", "org.au",
    "co.jp", "ne.jp", "or.jp", "com.br", "com.mx", "co.in", "co.nz",
    "co.za", "com.cn", "com.tr", "com.ar", "co.kr",
}


def registrable_domain(host: str) -> str:
    """eTLD+1 approximation: last two labels, or three above a known
    two-part suffix. IPs and single-label hosts map to themselves."""
    host = host.lower().rstrip(".")
    labels = host.split(".")
    if len(labels) <= 2 or all(p.isdigit() for p in labels):
        return host
    if ".".join(labels[-2:]) in _TWO_PART_SUFFIXES:
        return ".".join(labels[-3:])
    return ".".join(labels[-2:])


def _domain_matches(host: str, pattern: str) -> bool:
    host = host.lower()
    pattern = pattern.lower()
    return host == pattern or host.endswith("." + pattern)


def _split_rule(line: str) -> tuple[str, str, bool] | None:
    """(domain part, selector, is_exception) for cosmetic rules, else None."""
    at = line.find("#@#")
    if at >= 0:
        return line[:at], line[at + 3 :], True
    # Reject extended-CSS markers (#?#, #$#, ##^) before plain "##".
    plain = line.find("##")
    for marker in ("#?#", "#$#"):
        m = line.find(marker)
        if m >= 0 and (plain == -1 or m < plain):
            return None
    if plain >= 0 and not line[plain + 2 :].startswith("^"):
        return line[:plain], line[plain + 2 :], False
    return None


def parse_filter_list(text: str, source_name: str) -> RuleSet:
    """Total parse: any input yields a RuleSet plus skip counters."""
    rs = RuleSet(source_name=source_name)
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("!"):
            continue
        if line.startswith("[") and line.endswith("]"):
            continue
        split = _split_rule(line)
        if split is None:
            if "#?#" in line or "#$#" in line or "##^" in line:
                rs.skipped_unsupported += 1
            else:
                rs.skipped_network += 1
            continue
        domain_part, selector, is_exception = split
        selector = selector.strip()
        if not selector:
            rs.malformed += 1
            logger.warning("%s: empty selector in %r", source_name, raw)
            continue
        positives, negatives = [], []
        for dom in filter(None, (d.strip() for d in domain_part.split(","))):
            if dom.startswith("~"):
                negatives.append(dom[1:])
            else:
                positives.append(dom)
        rule = CosmeticRule(
            selector=selector,
            domains=tuple(positives),
            excluded_domains=tuple(negatives),
            is_exception=is_exception,
        )
        if is_exception:
            rs.exceptions.append(rule)
        elif positives:
            for dom in positives:
                rs.specific.setdefault(registrable_domain(dom), []).append(rule)
        else:
            rs.generic.append(rule)
    return rs


def load_filter_list(path: str | Path, source_name: str | None = None) -> RuleSet:
    path = Path(path)
    return parse_filter_list(path.read_text(encoding="utf-8"), source_name or path.stem)


def applicable_rules(ruleset: RuleSet, page_host: str) -> list[CosmeticRule]:
    """Generic plus domain-specific rules for the host, minus rules
    suppressed by an applicable exception with the identical selector."""
    suppressed = {e.selector for e in ruleset.exceptions if e.applies_to(page_host)}
    rules = [r for r in ruleset.generic if r.applies_to(page_host)]
    reg = registrable_domain(page_host)
    seen = {id(r) for r in rules}
    for rule in ruleset.specific.get(reg, []):
        if rule.applies_to(page_host) and id(rule) not in seen:
            rules.append(rule)
            seen.add(id(rule))
    return [r for r in rules if r.selector not in suppressed]


def detect_filterlist(
    snapshot: PageSnapshot, ruleset: RuleSet, page_domain: str
) -> DetectionResult | None:
    """Largest visible match across all applicable rules; None otherwise."""
    matched: dict[int, None] = {}
    unsupported = 0
    for rule in applicable_rules(ruleset, page_domain):
        try:
            ids = css_match(snapshot, rule.selector)
        except UnsupportedSelectorError:
            unsupported += 1
            continue
        for nid in ids:
            if snapshot.node(nid).visible:
                matched[nid] = None
    if unsupported:
        logger.debug("%d unsupported selectors skipped", unsupported)
    if not matched:
        return None
    best = max(matched, key=lambda nid: (snapshot.node(nid).bbox.area, -nid))
    return make_result(snapshot, Method.FILTERLIST, best, confidence=1.0)
