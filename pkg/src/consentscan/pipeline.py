"""Per-page pipeline: run detectors, pick one result by priority, interact
with the notice, and analyze it.

Stage-2 selection follows a fixed availability chain: the text classifier
result wins when present, then perceptive, then DOM walking, then the
filter lists. Availability decides, not confidence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from urllib.parse import urlsplit

from .capture.session import BrowserSession, CaptureConfig, CaptureError
from .darkpattern import NoticeAnalysis, analyze_notice, dominant_color, ssim
from .detectors.domwalk import KeywordConfig, detect_domwalk
from .detectors.filterlist import RuleSet, detect_filterlist, registrable_domain
from .detectors.perceptive import PerceptiveConfig, detect_perceptive
from .detectors.results import DetectionResult, Method
from .detectors.textclass import ClassifierModel, detect_textclass, load_default_model
from .interaction import Clickable, ClickOutcome, extract_clickables, interact_all
from .snapshot import PageSnapshot

PRIORITY_CHAIN = (Method.TEXTCLASS, Method.PERCEPTIVE, Method.DOMWALK, Method.FILTERLIST)

ALL_METHODS = frozenset(m.value for m in Method)


@dataclass
class DetectorSettings:
    keywords: KeywordConfig = field(default_factory=KeywordConfig)
    perceptive: PerceptiveConfig = field(default_factory=PerceptiveConfig)
    ruleset: RuleSet | None = None
    model: ClassifierModel | None = None
    ssim_threshold: float = 0.99

    def resolved_model(self) -> ClassifierModel:
        if self.model is None:
            self.model = load_default_model()
        return self.model


def run_detectors(
    snapshot: PageSnapshot,
    settings: DetectorSettings,
    methods: frozenset[str] = ALL_METHODS,
) -> dict[str, DetectionResult | None]:
    """Run the selected detectors; filterlist needs a loaded ruleset."""
    results: dict[str, DetectionResult | None] = {}
    if Method.DOMWALK.value in methods:
        results[Method.DOMWALK.value] = detect_domwalk(snapshot, settings.keywords)
    if Method.PERCEPTIVE.value in methods:
        results[Method.PERCEPTIVE.value] = detect_perceptive(
            snapshot, settings.keywords, settings.perceptive
        )
    if Method.FILTERLIST.value in methods:
        if settings.ruleset is None:
            raise ValueError("filterlist method selected but no filter list loaded")
        host = urlsplit(snapshot.url).hostname or ""
        results[Method.FILTERLIST.value] = detect_filterlist(
            snapshot, settings.ruleset, registrable_domain(host)
        )
    if Method.TEXTCLASS.value in methods:
        results[Method.TEXTCLASS.value] = detect_textclass(snapshot, settings.resolved_model())
    return results


def choose_by_priority(
    results: dict[str, DetectionResult | None]
) -> tuple[str | None, DetectionResult | None]:
    for method in PRIORITY_CHAIN:
        res = results.get(method.value)
        if res is not None:
            return method.value, res
    return None, None


@dataclass
class PageResult:
    url: str
    pass_index: int = 0
    status: str = "ok"  # "ok" or an ErrorKind value
    error_detail: str = ""
    detections: dict[str, DetectionResult | None] = field(default_factory=dict)
    chosen_method: str | None = None
    clickables: list[Clickable] = field(default_factory=list)
    outcomes: list[ClickOutcome] = field(default_factory=list)
    analysis: NoticeAnalysis | None = None
    timings: dict[str, float] = field(default_factory=dict)
    screenshot_ref: str = ""

    def to_dict(self, include_timings: bool = True) -> dict:
        doc = {
            "url": self.url,
            "pass_index": self.pass_index,
            "status": self.status,
            "error_detail": self.error_detail,
            "detections": {
                m: (r.to_dict() if r is not None else None)
                for m, r in sorted(self.detections.items())
            },
            "chosen_method": self.chosen_method,
            "clickables": [c.to_dict() for c in self.clickables],
            "outcomes": [o.to_dict() for o in self.outcomes],
            "analysis": self.analysis.to_dict() if self.analysis else None,
            "screenshot_ref": self.screenshot_ref,
        }
        if include_timings:
            doc["timings"] = {k: round(v, 3) for k, v in sorted(self.timings.items())}
        return doc


def scan_page(
    url: str,
    session: BrowserSession,
    capture_config: CaptureConfig,
    settings: DetectorSettings,
    stages: frozenset[str] = frozenset({"detect", "interact", "analyze"}),
    methods: frozenset[str] = ALL_METHODS,
    pass_index: int = 0,
) -> tuple[PageResult, PageSnapshot | None]:
    """Full per-url pipeline; capture failures become result records."""
    result = PageResult(url=url, pass_index=pass_index)
    t0 = time.monotonic()
    try:
        session.clear_state()
        snapshot = session.capture_page(url, capture_config)
    except CaptureError as exc:
        result.status = exc.kind.value
        result.error_detail = exc.detail
        result.timings["capture_s"] = time.monotonic() - t0
        return result, None
    result.timings["capture_s"] = time.monotonic() - t0

    t1 = time.monotonic()
    result.detections = run_detectors(snapshot, settings, methods)
    result.chosen_method, chosen = choose_by_priority(result.detections)
    result.timings["detect_s"] = time.monotonic() - t1

    if chosen is not None:
        result.clickables = extract_clickables(snapshot, chosen.node_id)

    if chosen is not None and "interact" in stages:
        t2 = time.monotonic()

        def redetect(fresh: PageSnapshot) -> DetectionResult | None:
            _, res = choose_by_priority(run_detectors(fresh, settings, methods))
            return res

        result.outcomes = interact_all(
            url,
            session,
            snapshot,
            chosen,
            redetect,
            capture_config,
            ssim_fn=ssim,
            clickables=result.clickables,
        )
        result.timings["interact_s"] = time.monotonic() - t2

    if chosen is not None and "analyze" in stages:
        t3 = time.monotonic()
        try:
            notice_bg = dominant_color(snapshot.screenshot, chosen.bbox)
        except ValueError:
            notice_bg = None
        result.analysis = analyze_notice(
            snapshot.screenshot,
            result.clickables,
            result.outcomes,
            notice_background=notice_bg,
            ssim_threshold=settings.ssim_threshold,
        )
        result.timings["analyze_s"] = time.monotonic() - t3

    return result, snapshot
