#!/usr/bin/env python3
"""Capture the bundled corpus and score all four detectors against its
ground truth; prints the per-method metrics table and the dark-pattern
summary.

Usage: python scripts/fixture_benchmark.py [--interact] [--out DIR]

Without --interact only Stage 1 runs (fast); with it, every notice's
clickables are exercised so the decline/color columns fill in.
"""

from __future__ import annotations

import argparse
import tempfile
from dataclasses import replace
from pathlib import Path

from consentscan.cli import main
from consentscan.evaluation import save_ground_truth
from consentscan.fixtures import FIXTURES, FixtureServer


def run(interact: bool, out: Path) -> int:
    config_viewport = "1280x800"
    with FixtureServer() as server:
        urls = [server.url_for(f.id) for f in FIXTURES]
        url_file = out / "urls.txt"
        out.mkdir(parents=True, exist_ok=True)
        url_file.write_text("\n".join(urls), encoding="utf-8")
        gt = [replace(f.truth, url=server.url_for(f.id)) for f in FIXTURES]
        gt_path = out / "ground_truth.jsonl"
        save_ground_truth(gt, gt_path)

        stages = "detect,interact,analyze" if interact else "detect"
        rc = main(
            [
                "scan",
                "--urls", str(url_file),
                "--out", str(out / "scan"),
                "--passes", "1",
                "--engine", "builtin",
                "--stages", stages,
                "--settle-wait", "0.01",
                "--page-timeout", "10",
                "--viewport", config_viewport,
            ]
        )
        if rc != 0:
            return rc
        return main(
            [
                "eval",
                "--ground-truth", str(gt_path),
                "--results", str(out / "scan"),
                "--method", "all",
                "--out", str(out / "metrics"),
            ]
        )


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--interact", action="store_true", help="run stages 2 and 3 too")
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()
    out = args.out or Path(tempfile.mkdtemp(prefix="fixture-benchmark-"))
    print(f"writing to {out}")
    raise SystemExit(run(args.interact, out))
