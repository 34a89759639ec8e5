"""Shared detection result type."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..geometry import BBox
from ..snapshot import PageSnapshot, subtree_text


class Method(str, Enum):
    DOMWALK = "domwalk"
    PERCEPTIVE = "perceptive"
    FILTERLIST = "filterlist"
    TEXTCLASS = "textclass"


@dataclass(frozen=True)
class DetectionResult:
    """A detector's claim that a DOM node is the consent notice."""

    method: Method
    node_id: int
    bbox: BBox  # clipped to viewport bounds
    notice_text: str
    language: str = "und"  # ISO-639-1 or "und"
    confidence: float = 1.0

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "node_id": self.node_id,
            "bbox": list(self.bbox.as_tuple()),
            "notice_text": self.notice_text,
            "language": self.language,
            "confidence": self.confidence,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DetectionResult":
        return cls(
            method=Method(d["method"]),
            node_id=d["node_id"],
            bbox=BBox(*d["bbox"]),
            notice_text=d["notice_text"],
            language=d.get("language", "und"),
            confidence=d.get("confidence", 1.0),
        )


def make_result(
    snapshot: PageSnapshot,
    method: Method,
    node_id: int,
    confidence: float = 1.0,
    language: str | None = None,
) -> DetectionResult:
    """Build a result for a node, clipping its bbox to the viewport."""
    from .language import detect_language

    node = snapshot.node(node_id)
    text = subtree_text(snapshot, node_id)
    return DetectionResult(
        method=method,
        node_id=node_id,
        bbox=node.bbox.clip_to(snapshot.viewport.width_px, snapshot.viewport.height_px),
        notice_text=text,
        language=language if language is not None else detect_language(text),
        confidence=confidence,
    )
