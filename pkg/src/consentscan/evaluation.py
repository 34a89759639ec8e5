"""Scoring detector output against ground-truth annotations.

One verdict per site per method: TN/FP for no-notice sites, FN for missed
notices, and for sites where both the truth and the detector point at
something, TP when the boxes overlap enough (IoU >= 0.5) or the normalized
notice texts hash equal; a detector pointing at the wrong element counts
as FP and the miss is logged.

Display rounding: precision rounds half-up to two decimals, recall rounds
up, and F1 is the harmonic mean of the two displayed values, rounded
half-up. Ratios are also kept unrounded for downstream analysis.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .geometry import BBox
from .snapshot import normalize_text

logger = logging.getLogger(__name__)

IOU_THRESHOLD = 0.5


class MatchOutcome(str, Enum):
    TP = "TP"
    FP = "FP"
    FN = "FN"
    TN = "TN"


@dataclass(frozen=True)
class GroundTruthRecord:
    url: str
    has_notice: bool
    notice_bbox: BBox | None = None
    notice_text_hash: str | None = None
    has_decline_first_layer: bool | None = None
    colors_differ: bool | None = None
    language: str | None = None
    annotator: str = ""

    def __post_init__(self) -> None:
        if not self.has_notice and (self.notice_bbox or self.notice_text_hash):
            raise ValueError(f"{self.url}: notice fields present on a no-notice record")

    def to_dict(self) -> dict:
        return {
            "url": self.url,
            "has_notice": self.has_notice,
            "notice_bbox": list(self.notice_bbox.as_tuple()) if self.notice_bbox else None,
            "notice_text_hash": self.notice_text_hash,
            "has_decline_first_layer": self.has_decline_first_layer,
            "colors_differ": self.colors_differ,
            "language": self.language,
            "annotator": self.annotator,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GroundTruthRecord":
        bbox = d.get("notice_bbox")
        return cls(
            url=d["url"],
            has_notice=d["has_notice"],
            notice_bbox=BBox(*bbox) if bbox else None,
            notice_text_hash=d.get("notice_text_hash"),
            has_decline_first_layer=d.get("has_decline_first_layer"),
            colors_differ=d.get("colors_differ"),
            language=d.get("language"),
            annotator=d.get("annotator", ""),
        )


def text_hash(text: str) -> str:
    return hashlib.sha256(normalize_text(text).encode("utf-8")).hexdigest()


def load_ground_truth(path: str | Path) -> list[GroundTruthRecord]:
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            records.append(GroundTruthRecord.from_dict(json.loads(line)))
    return records


def save_ground_truth(records: list[GroundTruthRecord], path: str | Path) -> None:
    Path(path).write_text(
        "".join(json.dumps(r.to_dict(), ensure_ascii=False) + "\n" for r in records),
        encoding="utf-8",
    )


def match_detection(gt: GroundTruthRecord, det) -> MatchOutcome:
    """det is a DetectionResult or None for the same url."""
    if not gt.has_notice:
        return MatchOutcome.TN if det is None else MatchOutcome.FP
    if det is None:
        return MatchOutcome.FN
    if gt.notice_bbox is not None and det.bbox.iou(gt.notice_bbox) >= IOU_THRESHOLD:
        return MatchOutcome.TP
    if gt.notice_text_hash is not None and text_hash(det.notice_text) == gt.notice_text_hash:
        return MatchOutcome.TP
    logger.info("%s: detector found an element but not the notice", gt.url)
    return MatchOutcome.FP


def round_half_up(value: float, decimals: int = 2) -> float:
    scale = 10**decimals
    return math.floor(value * scale + 0.5) / scale


def round_up(value: float, decimals: int = 2) -> float:
    scale = 10**decimals
    scaled = value * scale
    # Guard against float fuzz pushing exact values over the next ceil step.
    nearest = round(scaled)
    if abs(scaled - nearest) < 1e-9:
        return nearest / scale
    return math.ceil(scaled) / scale


@dataclass
class EvalMetrics:
    method: str
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0
    precision_exact: float = 0.0
    recall_exact: float = 0.0
    undefined: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "tn": self.tn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "undefined": self.undefined,
        }


def compute_metrics(
    assignments: list[MatchOutcome] | None = None,
    method: str = "",
    counts: tuple[int, int, int, int] | None = None,
) -> EvalMetrics:
    """Counts and display ratios from per-site outcomes (or raw counts)."""
    if counts is None:
        if not assignments:
            raise ValueError("assignments must be non-empty")
        tp = sum(1 for a in assignments if a is MatchOutcome.TP)
        fp = sum(1 for a in assignments if a is MatchOutcome.FP)
        fn = sum(1 for a in assignments if a is MatchOutcome.FN)
        tn = sum(1 for a in assignments if a is MatchOutcome.TN)
    else:
        tp, fp, fn, tn = counts

    m = EvalMetrics(method=method, tp=tp, fp=fp, fn=fn, tn=tn)
    if tp + fp > 0:
        m.precision_exact = tp / (tp + fp)
        m.precision = round_half_up(m.precision_exact)
    else:
        m.undefined.append("precision")
    if tp + fn > 0:
        m.recall_exact = tp / (tp + fn)
        m.recall = round_up(m.recall_exact)
    else:
        m.undefined.append("recall")
    if m.precision + m.recall > 0:
        m.f1 = round_half_up(2 * m.precision * m.recall / (m.precision + m.recall))
    else:
        m.undefined.append("f1")
    return m


@dataclass
class DarkPatternSummary:
    decline_ground_truth: int = 0
    decline_detected_in_gt: int = 0
    colors_differ_ground_truth: int = 0
    colors_detected_in_gt: int = 0

    @property
    def decline_fraction(self) -> float:
        if self.decline_ground_truth == 0:
            return 0.0
        return round_half_up(self.decline_detected_in_gt / self.decline_ground_truth)

    @property
    def colors_fraction(self) -> float:
        if self.colors_differ_ground_truth == 0:
            return 0.0
        return round_half_up(self.colors_detected_in_gt / self.colors_differ_ground_truth)

    def to_dict(self) -> dict:
        return {
            "decline_ground_truth": self.decline_ground_truth,
            "decline_detected_in_gt": self.decline_detected_in_gt,
            "decline_fraction": self.decline_fraction,
            "colors_differ_ground_truth": self.colors_differ_ground_truth,
            "colors_detected_in_gt": self.colors_detected_in_gt,
            "colors_fraction": self.colors_fraction,
        }


def evaluate_darkpatterns(
    gt_records: list[GroundTruthRecord],
    analyses: dict[str, "object"],
) -> DarkPatternSummary:
    """analyses maps url -> NoticeAnalysis (or None). Fractions follow the
    intersection semantics: of the sites the ground truth marks positive,
    how many the analysis also flagged."""
    summary = DarkPatternSummary()
    for gt in gt_records:
        analysis = analyses.get(gt.url)
        if gt.has_decline_first_layer:
            summary.decline_ground_truth += 1
            if analysis is not None and getattr(analysis, "decline_detected", False):
                summary.decline_detected_in_gt += 1
        if gt.colors_differ:
            summary.colors_differ_ground_truth += 1
            if analysis is not None and getattr(analysis, "color_diversion", False):
                summary.colors_detected_in_gt += 1
    return summary
