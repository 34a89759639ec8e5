"""Multi-worker scan orchestration and file-based persistence.

Results land as JSON-lines, one file per pass, plus a merged summary that
marks a url successful when at least ceil(2/3 * passes) of its passes
produced a snapshot. Screenshots are stored under shots/ and referenced by
relative path. URL order is shuffled per pass with a seedable RNG.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from .capture.session import CaptureConfig, open_session
from .pipeline import ALL_METHODS, DetectorSettings, PageResult, scan_page

logger = logging.getLogger(__name__)

DEFAULT_PAGES_PER_SESSION = 25


@dataclass
class ScanJob:
    urls: list[str]
    output_dir: Path
    repeat_count: int = 3
    workers: int = 1
    stages: frozenset[str] = frozenset({"detect", "interact", "analyze"})
    methods: frozenset[str] = ALL_METHODS
    seed: int = 0
    engine: str = "auto"
    browser_path: str | None = None
    pages_per_session: int = DEFAULT_PAGES_PER_SESSION
    capture_config: CaptureConfig = field(default_factory=CaptureConfig)
    settings: DetectorSettings = field(default_factory=DetectorSettings)

    def __post_init__(self) -> None:
        if self.repeat_count < 1:
            raise ValueError("repeat_count must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def url_slug(url: str) -> str:
    return hashlib.sha256(url.encode("utf-8")).hexdigest()[:16]


class _ResultSink:
    """Append-only JSONL writer, safe under concurrent appends."""

    def __init__(self, path: Path):
        self.path = path
        self._lock = threading.Lock()
        self._fh = open(path, "a", encoding="utf-8")

    def append(self, doc: dict) -> None:
        line = json.dumps(doc, ensure_ascii=False, sort_keys=True)
        with self._lock:
            self._fh.write(line + "\n")
            self._fh.flush()

    def close(self) -> None:
        with self._lock:
            self._fh.close()


class _WorkerSessions(threading.local):
    session = None
    pages = 0


def _save_png(array: np.ndarray, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(array, mode="RGB").save(path)


def run_scan(job: ScanJob) -> dict:
    """Execute the scan; returns the summary document (also written to
    summary.json). Per-url failures are data, never crashes."""
    out = Path(job.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    shots = out / "shots"
    shots.mkdir(exist_ok=True)

    rng = random.Random(job.seed)
    statuses: dict[str, list[str]] = {u: [] for u in job.urls}
    workers_state = _WorkerSessions()
    all_sessions: list = []
    sessions_lock = threading.Lock()

    def process(url: str, pass_index: int, sink: _ResultSink) -> None:
        state = workers_state
        if state.session is None or state.pages >= job.pages_per_session:
            if state.session is not None:
                state.session.close()
            state.session = open_session(job.engine, job.browser_path)
            with sessions_lock:
                all_sessions.append(state.session)
            state.pages = 0
        try:
            result, snapshot = scan_page(
                url,
                state.session,
                job.capture_config,
                job.settings,
                stages=job.stages,
                methods=job.methods,
                pass_index=pass_index,
            )
        except Exception as exc:  # defensive: a url must never kill the scan
            logger.exception("unexpected failure scanning %s", url)
            result, snapshot = PageResult(url=url, pass_index=pass_index), None
            result.status = "scanner_failure"
            result.error_detail = str(exc)
        state.pages += 1

        slug = url_slug(url)
        if snapshot is not None:
            ref = f"shots/{slug}_p{pass_index}.png"
            _save_png(snapshot.screenshot, out / ref)
            result.screenshot_ref = ref
        for i, outcome in enumerate(result.outcomes):
            if outcome.post_screenshot is not None:
                ref = f"shots/{slug}_p{pass_index}_click{i}.png"
                _save_png(outcome.post_screenshot, out / ref)
                outcome.post_screenshot_ref = ref
        sink.append(result.to_dict())
        statuses[url].append(result.status)

    for pass_index in range(job.repeat_count):
        order = list(job.urls)
        rng.shuffle(order)
        sink = _ResultSink(out / f"results_pass{pass_index}.jsonl")
        try:
            if job.workers == 1:
                for url in order:
                    process(url, pass_index, sink)
            else:
                with ThreadPoolExecutor(max_workers=job.workers) as pool:
                    futures = [pool.submit(process, u, pass_index, sink) for u in order]
                    for fut in futures:
                        fut.result()
        finally:
            sink.close()

    for session in all_sessions:
        try:
            session.close()
        except Exception:
            pass

    needed = math.ceil(job.repeat_count * 2 / 3)
    summary = {
        "urls": len(job.urls),
        "passes": job.repeat_count,
        "success_threshold": needed,
        "per_url": {
            url: {
                "statuses": runs,
                "successful": sum(1 for s in runs if s == "ok") >= needed,
            }
            for url, runs in statuses.items()
        },
    }
    summary["successful_urls"] = sum(1 for v in summary["per_url"].values() if v["successful"])
    (out / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True), encoding="utf-8"
    )
    return summary
