import pytest

from consentscan.detectors.results import DetectionResult, Method
from consentscan.evaluation import (
    GroundTruthRecord,
    MatchOutcome,
    compute_metrics,
    evaluate_darkpatterns,
    load_ground_truth,
    match_detection,
    round_half_up,
    round_up,
    save_ground_truth,
    text_hash,
)
from consentscan.geometry import BBox


def _det(bbox, text="We use cookies Accept"):
    return DetectionResult(
        method=Method.DOMWALK, node_id=1, bbox=bbox, notice_text=text, confidence=1.0
    )


def _gt(has_notice=True, bbox=None, text=None, **kw):
    return GroundTruthRecord(
        url="http://x.test/",
        has_notice=has_notice,
        notice_bbox=bbox,
        notice_text_hash=text_hash(text) if text else None,
        **kw,
    )


def test_match_tn():
    assert match_detection(_gt(has_notice=False), None) is MatchOutcome.TN


def test_match_fp_on_no_notice_site():
    assert match_detection(_gt(has_notice=False), _det(BBox(0, 0, 10, 10))) is MatchOutcome.FP


def test_match_fn():
    assert match_detection(_gt(bbox=BBox(0, 980, 1920, 100)), None) is MatchOutcome.FN


def test_match_tp_identical_bbox():
    gt = _gt(bbox=BBox(0, 980, 1920, 100))
    assert match_detection(gt, _det(BBox(0, 980, 1920, 100))) is MatchOutcome.TP


def test_match_wrong_element_is_fp():
    gt = _gt(bbox=BBox(0, 980, 1920, 100))
    assert match_detection(gt, _det(BBox(0, 0, 50, 50))) is MatchOutcome.FP


def test_match_tp_via_text_hash():
    gt = _gt(bbox=BBox(0, 980, 1920, 100), text="We use cookies Accept")
    assert match_detection(gt, _det(BBox(5, 5, 10, 10))) is MatchOutcome.TP


def test_match_iou_threshold_boundary():
    gt = _gt(bbox=BBox(0, 0, 100, 100))
    assert match_detection(gt, _det(BBox(0, 0, 100, 50))) is MatchOutcome.TP  # IoU 0.5
    assert match_detection(gt, _det(BBox(0, 0, 100, 49))) is MatchOutcome.FP


def test_no_notice_record_rejects_notice_fields():
    with pytest.raises(ValueError):
        GroundTruthRecord(url="u", has_notice=False, notice_bbox=BBox(0, 0, 1, 1))


# -- metric arithmetic ---------------------------------------------------------

PUBLISHED_ROWS = [
    ((448, 14, 21, 517), (0.97, 0.96, 0.96)),
    ((434, 14, 35, 517), (0.97, 0.93, 0.95)),
    ((328, 2, 141, 529), (0.99, 0.70, 0.82)),
    ((302, 1, 167, 530), (1.00, 0.65, 0.79)),
    ((270, 8, 199, 523), (0.97, 0.58, 0.73)),
]


@pytest.mark.parametrize("counts,expected", PUBLISHED_ROWS)
def test_published_table_rows_reproduced(counts, expected):
    m = compute_metrics(counts=counts, method="m")
    assert (m.precision, m.recall, m.f1) == expected


def test_metrics_from_assignments():
    assignments = (
        [MatchOutcome.TP] * 3 + [MatchOutcome.FP] * 1 + [MatchOutcome.FN] * 2 + [MatchOutcome.TN] * 4
    )
    m = compute_metrics(assignments, method="x")
    assert (m.tp, m.fp, m.fn, m.tn) == (3, 1, 2, 4)
    assert m.tp + m.fp + m.fn + m.tn == len(assignments)


def test_metrics_degenerate_flagged():
    m = compute_metrics(counts=(0, 0, 5, 5), method="x")
    assert m.precision == 0.0 and "precision" in m.undefined
    assert m.recall == 0.0
    assert m.f1 == 0.0 and "f1" in m.undefined


def test_metrics_permutation_invariant():
    import random

    assignments = [MatchOutcome.TP] * 5 + [MatchOutcome.FP] * 2 + [MatchOutcome.TN] * 3
    base = compute_metrics(list(assignments), method="x")
    rng = random.Random(1)
    for _ in range(5):
        rng.shuffle(assignments)
        again = compute_metrics(list(assignments), method="x")
        assert (again.precision, again.recall, again.f1) == (base.precision, base.recall, base.f1)


def test_rounding_helpers():
    assert round_half_up(0.955) == 0.96
    assert round_half_up(0.9549) == 0.95
    assert round_up(0.6439) == 0.65
    assert round_up(0.64) == 0.64  # exact values do not bump


# -- dark pattern evaluation ------------------------------------------------------


class _Analysis:
    def __init__(self, decline, colors):
        self.decline_detected = decline
        self.color_diversion = colors


def _gt_url(url, decline=None, colors=None):
    return GroundTruthRecord(
        url=url, has_notice=True, has_decline_first_layer=decline, colors_differ=colors
    )


def test_darkpattern_fractions_published_values():
    gt = [_gt_url(f"u{i}", decline=True) for i in range(246)]
    analyses = {f"u{i}": _Analysis(i < 93, False) for i in range(246)}
    summary = evaluate_darkpatterns(gt, analyses)
    assert summary.decline_ground_truth == 246
    assert summary.decline_detected_in_gt == 93
    assert summary.decline_fraction == 0.38

    gt = [_gt_url(f"c{i}", colors=True) for i in range(329)]
    analyses = {f"c{i}": _Analysis(False, i < 249) for i in range(329)}
    summary = evaluate_darkpatterns(gt, analyses)
    assert summary.colors_differ_ground_truth == 329
    assert summary.colors_detected_in_gt == 249
    assert summary.colors_fraction == 0.76


def test_darkpattern_empty_corpus():
    summary = evaluate_darkpatterns([], {})
    assert summary.decline_fraction == 0.0
    assert summary.colors_fraction == 0.0


def test_ground_truth_roundtrip(tmp_path):
    records = [
        _gt(bbox=BBox(0, 980, 1920, 100), text="hello", language="en", annotator="a1"),
        GroundTruthRecord(url="http://none.test/", has_notice=False),
    ]
    path = tmp_path / "gt.jsonl"
    save_ground_truth(records, path)
    again = load_ground_truth(path)
    assert again == records
