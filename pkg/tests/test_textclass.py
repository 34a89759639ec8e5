import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from consentscan.detectors.language import detect_language
from consentscan.detectors.textclass import (
    Candidate,
    CandidateSource,
    ClassifierModel,
    ModelLoadError,
    classify,
    detect_textclass,
    extract_candidates,
    load_default_model,
    load_model,
)

from conftest import make_node, make_snapshot, simple_page


def _body_with_text_nodes(count):
    nodes = simple_page()
    for i in range(count):
        nodes.append(
            make_node(2 + i, 1, "p", (0, i * 10, 200, 9), text=f"paragraph number {i}")
        )
    return make_snapshot(nodes)


def test_body_edge_first_and_last_three():
    snap = _body_with_text_nodes(7)
    cands = extract_candidates(snap)
    assert len(cands) == 6
    texts = {c.text for c in cands}
    assert "paragraph number 3" not in texts
    assert all(c.source is CandidateSource.BODY_EDGE for c in cands)


def test_body_edge_overlap_deduplicated():
    snap = _body_with_text_nodes(4)
    cands = extract_candidates(snap)
    assert len(cands) == 4


def test_overlay_ranked_first():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "p", (0, 0, 200, 10), text="first text"),
        make_node(3, 1, "p", (0, 10, 200, 10), text="second text"),
        make_node(4, 1, "div", (0, 40, 200, 40), z=999),
        make_node(5, 4, "p", (0, 40, 200, 20), text="overlay consent text", z=999),
    ]
    snap = make_snapshot(nodes)
    cands = extract_candidates(snap)
    assert cands[0].source is CandidateSource.Z_INDEX
    assert cands[0].node_id == 4
    assert cands[0].text == "overlay consent text"


def test_overlay_dedup_outermost_per_stacking_subtree():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "div", (0, 0, 100, 50), z=10),
        make_node(3, 2, "div", (0, 0, 90, 40), z=10, text="inner"),
    ]
    snap = make_snapshot(nodes)
    z_cands = [c for c in extract_candidates(snap) if c.source is CandidateSource.Z_INDEX]
    assert [c.node_id for c in z_cands] == [2]


def test_identical_texts_deduplicated_keeping_first():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "p", (0, 0, 200, 10), text="same words"),
        make_node(3, 1, "p", (0, 10, 200, 10), text="same words"),
    ]
    snap = make_snapshot(nodes)
    cands = extract_candidates(snap)
    assert len(cands) == 1 and cands[0].node_id == 2


def test_candidate_ordering_is_total():
    snap = _body_with_text_nodes(7)
    orders = [tuple(c.node_id for c in extract_candidates(snap)) for _ in range(5)]
    assert len(set(orders)) == 1


@given(st.integers(min_value=0, max_value=25))
@settings(max_examples=30, deadline=None)
def test_body_edge_candidates_never_exceed_six(count):
    snap = _body_with_text_nodes(count)
    body_edge = [
        c for c in extract_candidates(snap) if c.source is CandidateSource.BODY_EDGE
    ]
    assert len(body_edge) <= 6


def _model(vocab=None, bias=-4.0, threshold=0.5):
    return ClassifierModel(
        model_kind="baseline_logistic",
        vocabulary=vocab or {},
        bias=bias,
        threshold=threshold,
    )


def test_classify_empty_text_sigmoid_of_bias():
    score = classify(_model(), "")
    assert score == pytest.approx(1 / (1 + math.exp(4)), abs=1e-9)
    assert score < 0.5


def test_classify_counts_tokens_once():
    model = _model({"cookies": 3.0})
    once = classify(model, "cookies")
    thrice = classify(model, "cookies cookies cookies")
    assert once == thrice


def test_classify_unknown_token_contributes_zero():
    model = _model({"cookies": 3.0})
    assert classify(model, "unrelated words") == classify(model, "")


def test_shipped_baseline_positive_on_consent_text():
    model = load_default_model()
    text = "We use cookies to improve your experience. Accept or open the settings."
    assert classify(model, text) > 0.5


def test_shipped_baseline_negative_on_recipe_text():
    model = load_default_model()
    text = "The best chocolate chip cookie recipe with extra baking tips"
    assert classify(model, text) < 0.5


def test_detect_returns_first_scoring_candidate():
    nodes = simple_page()
    nodes += [
        make_node(2, 1, "div", (0, 0, 100, 40), z=100),
        make_node(3, 2, "p", (0, 0, 100, 20), text="nothing relevant", z=100),
        make_node(4, 1, "div", (0, 50, 100, 40), z=50),
        make_node(5, 4, "p", (0, 50, 100, 20), text="we use cookies accept consent", z=50),
    ]
    snap = make_snapshot(nodes)
    model = _model({"cookies": 3.0, "consent": 3.0})
    result = detect_textclass(snap, model)
    assert result is not None
    assert result.node_id == 4  # first candidate scored below threshold
    assert result.confidence >= 0.5


def test_detect_none_below_threshold():
    snap = _body_with_text_nodes(3)
    assert detect_textclass(snap, _model({"cookies": 3.0})) is None


def test_detect_never_returns_low_score():
    snap = _body_with_text_nodes(3)
    model = _model({"paragraph": 0.1})
    assert detect_textclass(snap, model) is None


def test_model_loading_and_validation(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(
        json.dumps(
            {
                "model_kind": "baseline_logistic",
                "version": "1",
                "threshold": 0.5,
                "vocabulary": {"cookies": 2.0},
                "bias": -1.0,
            }
        ),
        encoding="utf-8",
    )
    model = load_model(path)
    assert model.vocabulary["cookies"] == 2.0

    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ModelLoadError):
        load_model(bad)

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"model_kind": "mystery"}), encoding="utf-8")
    with pytest.raises(ModelLoadError):
        load_model(unknown)


def test_external_model_line_protocol(tmp_path):
    script = tmp_path / "scorer.py"
    script.write_text(
        "import sys, json\n"
        "for line in sys.stdin:\n"
        "    text = json.loads(line)\n"
        "    print(0.9 if 'cookies' in text.lower() else 0.1)\n",
        encoding="utf-8",
    )
    doc = {"model_kind": "external", "version": "1", "threshold": 0.5,
           "command": ["python3", "scorer.py"]}
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    model = load_model(path)
    assert classify(model, "We use cookies") == pytest.approx(0.9)
    assert classify(model, "nothing here") == pytest.approx(0.1)


def test_candidate_order_key():
    a = Candidate(node_id=1, text="x", source=CandidateSource.Z_INDEX, z_index=10, doc_order=5)
    b = Candidate(node_id=2, text="y", source=CandidateSource.BODY_EDGE, z_index=0, doc_order=1)
    assert a.order_key < b.order_key


# -- language detection -------------------------------------------------------


def test_language_english():
    assert detect_language("We use cookies to improve your experience on this site") == "en"


def test_language_german():
    assert detect_language("Wir verwenden Cookies, um Ihr Erlebnis zu verbessern") == "de"


def test_language_french():
    assert detect_language(
        "Nous utilisons des cookies pour ameliorer votre experience et analyser notre trafic"
    ) == "fr"


def test_language_und_short():
    assert detect_language("xyzzy") == "und"


def test_language_und_unmatchable():
    assert detect_language("zzz qqq xxx www yyy") == "und"
