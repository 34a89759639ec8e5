"""Method 4: candidate extraction plus pluggable text classification.

Candidates are visible overlays (positive effective z-index, outermost per
stacking subtree) and the first/last three visible text-bearing nodes of
the body. Each candidate's subtree text is scored by the configured model;
the first candidate at or above the threshold wins.

The shipped baseline is a bag-of-words logistic scorer loaded from a JSON
weight file; a trained external model can be dropped in through the same
file format (kind "external") and is queried over a line protocol.
"""

from __future__ import annotations

import json
import math
import subprocess
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from ..snapshot import PageSnapshot, subtree_text
from .language import detect_language, tokenize
from .results import DetectionResult, Method, make_result


class ModelLoadError(Exception):
    pass


class CandidateSource(str, Enum):
    Z_INDEX = "z_index"
    BODY_EDGE = "body_edge"


@dataclass(frozen=True)
class Candidate:
    node_id: int
    text: str
    source: CandidateSource
    z_index: int
    doc_order: int

    @property
    def order_key(self) -> tuple[int, int]:
        return (-self.z_index, self.doc_order)


@dataclass
class ClassifierModel:
    model_kind: str  # "baseline_logistic" | "external"
    version: str = "0"
    threshold: float = 0.5
    vocabulary: dict[str, float] = field(default_factory=dict)
    bias: float = 0.0
    command: list[str] = field(default_factory=list)  # external only

    def __post_init__(self) -> None:
        if not 0 < self.threshold < 1:
            raise ModelLoadError(f"threshold must be in (0,1), got {self.threshold}")
        for tok, w in self.vocabulary.items():
            if not math.isfinite(w):
                raise ModelLoadError(f"non-finite weight for token {tok!r}")
        if not math.isfinite(self.bias):
            raise ModelLoadError("non-finite bias")


def load_model(path: str | Path) -> ClassifierModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelLoadError(f"cannot load model {path}: {exc}") from exc
    kind = doc.get("model_kind")
    if kind == "baseline_logistic":
        return ClassifierModel(
            model_kind=kind,
            version=str(doc.get("version", "0")),
            threshold=float(doc.get("threshold", 0.5)),
            vocabulary={str(k): float(v) for k, v in doc.get("vocabulary", {}).items()},
            bias=float(doc.get("bias", 0.0)),
        )
    if kind == "external":
        command = doc.get("command")
        if not command or not isinstance(command, list):
            raise ModelLoadError("external model requires a command list")
        # Relative script paths resolve against the model file's directory.
        base = Path(path).parent
        resolved = [
            str((base / part)) if part.endswith((".js", ".py", ".json")) and not Path(part).is_absolute() else part
            for part in command
        ]
        return ClassifierModel(
            model_kind=kind,
            version=str(doc.get("version", "0")),
            threshold=float(doc.get("threshold", 0.5)),
            command=[str(c) for c in resolved],
        )
    raise ModelLoadError(f"unknown model_kind {kind!r}")


def load_default_model() -> ClassifierModel:
    raw = resources.files("consentscan.data").joinpath("baseline_model.json").read_text("utf-8")
    doc = json.loads(raw)
    return ClassifierModel(
        model_kind=doc["model_kind"],
        version=str(doc["version"]),
        threshold=float(doc["threshold"]),
        vocabulary={str(k): float(v) for k, v in doc["vocabulary"].items()},
        bias=float(doc["bias"]),
    )


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def classify(model: ClassifierModel, text: str) -> float:
    """Score in [0, 1]; distinct lowercased word tokens contribute their
    weight once, unknown tokens contribute nothing."""
    if model.model_kind == "baseline_logistic":
        z = model.bias
        for token in set(tokenize(text)):
            z += model.vocabulary.get(token, 0.0)
        return _sigmoid(z)
    if model.model_kind == "external":
        return _classify_external(model, [text])[0]
    raise ModelLoadError(f"unknown model_kind {model.model_kind!r}")


def _classify_external(model: ClassifierModel, texts: list[str]) -> list[float]:
    """Line protocol: one JSON-escaped text per input line, one float per
    output line."""
    payload = "".join(json.dumps(t, ensure_ascii=False) + "\n" for t in texts)
    try:
        proc = subprocess.run(
            model.command,
            input=payload.encode("utf-8"),
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            timeout=120,
            check=True,
        )
    except (OSError, subprocess.SubprocessError) as exc:
        raise ModelLoadError(f"external model invocation failed: {exc}") from exc
    lines = proc.stdout.decode("utf-8").split()
    if len(lines) != len(texts):
        raise ModelLoadError(
            f"external model returned {len(lines)} scores for {len(texts)} texts"
        )
    scores = [float(s) for s in lines]
    for s in scores:
        if not (0.0 <= s <= 1.0):
            raise ModelLoadError(f"external model score {s} outside [0, 1]")
    return scores


def extract_candidates(snapshot: PageSnapshot) -> list[Candidate]:
    """Overlay candidates plus body-edge candidates, ordered by descending
    z-index then document order; identical texts deduplicated keeping the
    first."""
    candidates: dict[int, Candidate] = {}

    for node in snapshot.nodes:
        if not node.visible or node.z_index <= 0:
            continue
        parent = snapshot.parent_of(node.node_id)
        if parent is not None and parent.z_index > 0:
            continue  # keep only the outermost node of each stacking subtree
        text = subtree_text(snapshot, node.node_id)
        if not text:
            continue
        candidates[node.node_id] = Candidate(
            node_id=node.node_id,
            text=text,
            source=CandidateSource.Z_INDEX,
            z_index=node.z_index,
            doc_order=snapshot.doc_order(node.node_id),
        )

    body = snapshot.body()
    text_bearing = [
        nid
        for nid in snapshot.subtree_ids(body.node_id)
        if nid != body.node_id
        and snapshot.node(nid).visible
        and snapshot.node(nid).own_text
    ]
    for nid in text_bearing[:3] + text_bearing[-3:]:
        if nid in candidates:
            continue
        node = snapshot.node(nid)
        text = subtree_text(snapshot, nid)
        if not text:
            continue
        candidates[nid] = Candidate(
            node_id=nid,
            text=text,
            source=CandidateSource.BODY_EDGE,
            z_index=node.z_index,
            doc_order=snapshot.doc_order(nid),
        )

    ordered = sorted(candidates.values(), key=lambda c: c.order_key)
    seen_texts: set[str] = set()
    unique = []
    for cand in ordered:
        if cand.text in seen_texts:
            continue
        seen_texts.add(cand.text)
        unique.append(cand)
    return unique


def detect_textclass(
    snapshot: PageSnapshot, model: ClassifierModel | None = None
) -> DetectionResult | None:
    """First candidate scoring at or above the model threshold."""
    model = model or load_default_model()
    for cand in extract_candidates(snapshot):
        score = classify(model, cand.text)
        if score >= model.threshold:
            return make_result(
                snapshot,
                Method.TEXTCLASS,
                cand.node_id,
                confidence=score,
                language=detect_language(cand.text),
            )
    return None
