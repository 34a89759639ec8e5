"""Command-line interface.

Subcommands:
  scan            live scan of a url list through capture/detect/interact/analyze
  detect          run detectors offline on a stored snapshot
  eval            score stored results against ground-truth annotations
  classify        score texts with a model file over the line protocol
  serve-fixtures  run the bundled fixture corpus server
  fetch-lists     download a filter list to a local file
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .capture.session import CaptureConfig
from .detectors.domwalk import KeywordConfig
from .detectors.filterlist import RuleSet, load_filter_list
from .detectors.perceptive import ContourStrategy, PerceptiveConfig
from .detectors.results import DetectionResult
from .detectors.textclass import classify as classify_text
from .detectors.textclass import load_default_model, load_model
from .evaluation import (
    compute_metrics,
    evaluate_darkpatterns,
    load_ground_truth,
    match_detection,
)
from .pipeline import ALL_METHODS, DetectorSettings, choose_by_priority, run_detectors
from .runner import ScanJob, run_scan
from .snapshot import Viewport, load_snapshot


def _add_detector_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--keywords", type=Path, help="keyword list file, one per line")
    parser.add_argument(
        "--filterlist",
        type=Path,
        action="append",
        default=None,
        help="cosmetic filter list path (repeatable; default: bundled lists)",
    )
    parser.add_argument("--model", type=Path, help="classifier model JSON file")
    parser.add_argument("--perceptive-threshold", type=int, default=10)
    parser.add_argument(
        "--contour-strategy",
        choices=[s.value for s in ContourStrategy],
        default=ContourStrategy.SMALLEST_CONTAINING.value,
    )
    parser.add_argument("--min-contour-area", type=int, default=400)
    parser.add_argument("--max-contour-frac", type=float, default=0.95)
    parser.add_argument("--ssim-threshold", type=float, default=0.99)


def _bundled_ruleset() -> RuleSet:
    from importlib import resources

    data = resources.files("consentscan.data")
    easylist = data.joinpath("easylist_cookie.txt").read_text("utf-8")
    idcac = data.joinpath("idcac.txt").read_text("utf-8")
    from .detectors.filterlist import parse_filter_list

    return parse_filter_list(easylist, "easylist-cookie").merge(
        parse_filter_list(idcac, "idcac")
    )


def _settings_from_args(args: argparse.Namespace) -> DetectorSettings:
    keywords = KeywordConfig.from_file(args.keywords) if args.keywords else KeywordConfig()
    if args.filterlist:
        ruleset: RuleSet | None = None
        for path in args.filterlist:
            rs = load_filter_list(path)
            ruleset = rs if ruleset is None else ruleset.merge(rs)
    else:
        ruleset = _bundled_ruleset()
    model = load_model(args.model) if args.model else load_default_model()
    return DetectorSettings(
        keywords=keywords,
        perceptive=PerceptiveConfig(
            threshold=args.perceptive_threshold,
            contour_strategy=ContourStrategy(args.contour_strategy),
            min_contour_area_px=args.min_contour_area,
            max_contour_frac=args.max_contour_frac,
        ),
        ruleset=ruleset,
        model=model,
        ssim_threshold=args.ssim_threshold,
    )


def _parse_methods(raw: str) -> frozenset[str]:
    if raw == "all":
        return ALL_METHODS
    methods = frozenset(m.strip() for m in raw.split(",") if m.strip())
    unknown = methods - ALL_METHODS
    if unknown:
        raise SystemExit(f"unknown methods: {', '.join(sorted(unknown))}")
    return methods


def _cmd_scan(args: argparse.Namespace) -> int:
    urls = [
        line.strip()
        for line in args.urls.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not urls:
        print("no urls to scan", file=sys.stderr)
        return 2
    width, _, height = args.viewport.partition("x")
    job = ScanJob(
        urls=urls,
        output_dir=args.out,
        repeat_count=args.passes,
        workers=args.workers,
        stages=frozenset(s.strip() for s in args.stages.split(",") if s.strip()),
        methods=_parse_methods(args.methods),
        seed=args.seed,
        engine=args.engine,
        browser_path=args.browser_path,
        pages_per_session=args.pages_per_session,
        capture_config=CaptureConfig(
            settle_wait=args.settle_wait,
            page_timeout=args.page_timeout,
            viewport=Viewport(int(width), int(height)),
            suppress_media=not args.no_suppress_media,
        ),
        settings=_settings_from_args(args),
    )
    summary = run_scan(job)
    print(
        f"scanned {summary['urls']} urls x {summary['passes']} passes: "
        f"{summary['successful_urls']} successful"
    )
    return 0


def _cmd_detect(args: argparse.Namespace) -> int:
    methods = _parse_methods(args.methods)
    settings = _settings_from_args(args)
    if "filterlist" in methods and settings.ruleset is None:
        print("filterlist method needs --filterlist", file=sys.stderr)
        return 2
    snapshot = load_snapshot(args.snapshot)
    detections = run_detectors(snapshot, settings, methods)
    chosen_method, _ = choose_by_priority(detections)
    fragment = {
        "snapshot": Path(args.snapshot).name,
        "url": snapshot.url,
        "detections": {
            m: (r.to_dict() if r is not None else None) for m, r in sorted(detections.items())
        },
        "chosen_method": chosen_method,
    }
    payload = json.dumps(fragment, ensure_ascii=False, sort_keys=True, indent=2) + "\n"
    if args.out and str(args.out) != "-":
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return 0


def _load_results(path: Path) -> list[dict]:
    files: list[Path]
    if path.is_dir():
        files = sorted(path.glob("results_pass*.jsonl")) or sorted(path.glob("*.jsonl"))
    else:
        files = [path]
    records = []
    for file in files:
        for line in file.read_text(encoding="utf-8").splitlines():
            if line.strip():
                records.append(json.loads(line))
    return records


def _cmd_eval(args: argparse.Namespace) -> int:
    gt_records = load_ground_truth(args.ground_truth)
    records = _load_results(args.results)
    by_url: dict[str, dict] = {}
    for rec in records:  # last record per url wins (latest pass)
        by_url[rec["url"]] = rec

    methods = sorted(_parse_methods(args.method))
    table = []
    for method in methods:
        assignments = []
        for gt in gt_records:
            rec = by_url.get(gt.url)
            det_doc = (rec or {}).get("detections", {}).get(method)
            det = DetectionResult.from_dict(det_doc) if det_doc else None
            assignments.append(match_detection(gt, det))
        table.append(compute_metrics(assignments, method=method))

    analyses = {}
    for gt in gt_records:
        rec = by_url.get(gt.url)
        doc = (rec or {}).get("analysis")
        if doc:
            analyses[gt.url] = type(
                "A", (), {"decline_detected": doc["decline_detected"],
                          "color_diversion": doc["color_diversion"]},
            )()
    dark = evaluate_darkpatterns(gt_records, analyses)

    header = f"{'method':<12} {'tp':>4} {'fp':>4} {'fn':>4} {'tn':>4} {'prec':>6} {'rec':>6} {'f1':>6}"
    lines = [header, "-" * len(header)]
    for m in table:
        lines.append(
            f"{m.method:<12} {m.tp:>4} {m.fp:>4} {m.fn:>4} {m.tn:>4} "
            f"{m.precision:>6.2f} {m.recall:>6.2f} {m.f1:>6.2f}"
        )
    lines.append("")
    lines.append(
        f"decline: {dark.decline_detected_in_gt}/{dark.decline_ground_truth} "
        f"({dark.decline_fraction:.2f})  colors: {dark.colors_detected_in_gt}/"
        f"{dark.colors_differ_ground_truth} ({dark.colors_fraction:.2f})"
    )
    text = "\n".join(lines)
    print(text)

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "metrics.json").write_text(
            json.dumps(
                {"methods": [m.to_dict() for m in table], "dark_patterns": dark.to_dict()},
                indent=2,
                sort_keys=True,
            ),
            encoding="utf-8",
        )
        csv_lines = ["method,tp,fp,fn,tn,precision,recall,f1"]
        for m in table:
            csv_lines.append(
                f"{m.method},{m.tp},{m.fp},{m.fn},{m.tn},{m.precision:.2f},{m.recall:.2f},{m.f1:.2f}"
            )
        (args.out / "metrics.csv").write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
        (args.out / "metrics.txt").write_text(text + "\n", encoding="utf-8")
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    model = load_model(args.model) if args.model else load_default_model()
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            text = json.loads(line)
        except json.JSONDecodeError:
            text = line
        score = classify_text(model, str(text))
        sys.stdout.write(f"{score:.6f}\n")
        sys.stdout.flush()
    return 0


def _cmd_serve_fixtures(args: argparse.Namespace) -> int:
    from .fixtures import FIXTURES, FixtureServer
    from .evaluation import save_ground_truth

    if args.export:
        args.export.mkdir(parents=True, exist_ok=True)
        for fixture in FIXTURES:
            (args.export / f"{fixture.id}.html").write_text(fixture.html, encoding="utf-8")
            (args.export / f"{fixture.id}.truth.json").write_text(
                json.dumps(fixture.truth.to_dict(), indent=2, sort_keys=True),
                encoding="utf-8",
            )
        save_ground_truth([f.truth for f in FIXTURES], args.export / "ground_truth.jsonl")
        print(f"exported {len(FIXTURES)} fixtures to {args.export}")
        if not args.serve_after_export:
            return 0
    server = FixtureServer(port=args.port)
    server.start()
    print(f"fixture server on {server.base_url} ({len(FIXTURES)} fixtures); Ctrl-C stops")
    try:
        import time

        while True:
            time.sleep(3600)
    except KeyboardInterrupt:
        server.stop()
    return 0


def _cmd_fetch_lists(args: argparse.Namespace) -> int:
    import requests

    resp = requests.get(args.url, timeout=60)
    resp.raise_for_status()
    args.out.write_text(resp.text, encoding="utf-8")
    print(f"saved {len(resp.text.splitlines())} lines to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="consentscan",
        description="Detect consent notices, interact with them, flag dark patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="live scan of a url list")
    p.add_argument("--urls", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--passes", type=int, default=3)
    p.add_argument("--stages", default="detect,interact,analyze")
    p.add_argument("--methods", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", choices=["auto", "cdp", "builtin"], default="auto")
    p.add_argument("--browser-path")
    p.add_argument("--settle-wait", type=float, default=5.0)
    p.add_argument("--page-timeout", type=float, default=60.0)
    p.add_argument("--viewport", default="1920x1080")
    p.add_argument("--no-suppress-media", action="store_true")
    p.add_argument("--pages-per-session", type=int, default=25)
    _add_detector_args(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("detect", help="offline detection on a stored snapshot")
    p.add_argument("--snapshot", type=Path, required=True)
    p.add_argument("--methods", default="all")
    p.add_argument("--out", type=Path, default=None, help="output path or - for stdout")
    _add_detector_args(p)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("eval", help="score results against ground truth")
    p.add_argument("--ground-truth", type=Path, required=True)
    p.add_argument("--results", type=Path, required=True)
    p.add_argument("--method", default="all")
    p.add_argument("--out", type=Path, default=None, help="directory for metrics files")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("classify", help="score stdin texts with a model file")
    p.add_argument("--model", type=Path, default=None)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("serve-fixtures", help="run the bundled fixture server")
    p.add_argument("--port", type=int, default=8731)
    p.add_argument("--export", type=Path, default=None)
    p.add_argument("--serve-after-export", action="store_true")
    p.set_defaults(func=_cmd_serve_fixtures)

    p = sub.add_parser("fetch-lists", help="download a filter list")
    p.add_argument("--url", required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=_cmd_fetch_lists)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
