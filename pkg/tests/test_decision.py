"""Threshold rule, escalation band precedence, judge fallback."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from claimcourt.agents import LegalTask
from claimcourt.backends import ScriptedBackend
from claimcourt.decision import (
    Answer,
    DecidedBy,
    Decision,
    DecisionParams,
    decide,
    threshold_answer,
)


def task():
    return LegalTask(task_id="t", claim="the claim")


def judge_backend(answer="no", rationale="weighed anew"):
    return ScriptedBackend().on("judge", {"answer": answer, "rationale": rationale})


def test_above_band_is_threshold_yes():
    d = decide(0.52, DecisionParams(), task(), judge_backend())
    assert d.answer is Answer.YES
    assert d.decided_by is DecidedBy.THRESHOLD
    assert not d.escalated
    assert d.judge_rationale is None


def test_below_band_is_threshold_no():
    d = decide(0.489, DecisionParams(), task(), judge_backend())
    assert d.answer is Answer.NO
    assert d.decided_by is DecidedBy.THRESHOLD


def test_band_escalates_and_judge_binds():
    d = decide(0.50, DecisionParams(), task(), judge_backend(answer="no"))
    assert d.answer is Answer.NO  # 0.50 >= threshold would say yes; judge overrides
    assert d.escalated
    assert d.decided_by is DecidedBy.FINAL_JUDGE
    assert d.judge_rationale == "weighed anew"


def test_band_endpoints_inclusive():
    for edge in (0.49, 0.51):
        d = decide(edge, DecisionParams(), task(), judge_backend(answer="yes"))
        assert d.decided_by is DecidedBy.FINAL_JUDGE


def test_just_outside_band_not_escalated():
    for strength, expected in ((0.4899, Answer.NO), (0.5101, Answer.YES)):
        d = decide(strength, DecisionParams(), task(), judge_backend())
        assert d.decided_by is DecidedBy.THRESHOLD
        assert d.answer is expected


def test_uae_disabled_uses_threshold_inside_band():
    params = DecisionParams(uae_enabled=False)
    d = decide(0.50, params, task(), judge_backend(answer="no"))
    assert d.answer is Answer.YES
    assert d.decided_by is DecidedBy.THRESHOLD
    assert not d.escalated


def test_judge_failure_falls_back_to_threshold(caplog):
    backend = ScriptedBackend().on("judge", {"answer": "it depends"})
    with caplog.at_level("WARNING"):
        d = decide(0.50, DecisionParams(), task(), backend)
    assert d.answer is Answer.YES
    assert d.decided_by is DecidedBy.THRESHOLD
    assert not d.escalated
    assert "falling back" in caplog.text


def test_judge_missing_backend_falls_back():
    d = decide(0.50, DecisionParams(), task(), backend=None)
    assert d.decided_by is DecidedBy.THRESHOLD


def test_judge_prompt_carries_case_material():
    backend = judge_backend()
    decide(0.495, DecisionParams(), task(), backend, arguments_summary="s1 vs a1")
    payload = backend.calls[0].payload
    assert payload["claim"] == "the claim"
    assert payload["strength"] == 0.495
    assert payload["arguments_summary"] == "s1 vs a1"


def test_strength_out_of_range_rejected():
    with pytest.raises(ValueError):
        decide(1.2, DecisionParams(), task(), None)


def test_threshold_answer_boundary():
    assert threshold_answer(0.5, 0.5) is Answer.YES
    assert threshold_answer(0.4999999, 0.5) is Answer.NO


@given(st.floats(min_value=0, max_value=1, allow_nan=False))
def test_outside_band_pure_function_of_strength(strength):
    params = DecisionParams()
    d = decide(strength, params, task(), judge_backend(answer="no"))
    if not params.in_band(strength):
        assert d.decided_by is DecidedBy.THRESHOLD
        assert (d.answer is Answer.YES) == (strength >= params.threshold)
    else:
        assert d.decided_by is DecidedBy.FINAL_JUDGE


def test_params_validation():
    with pytest.raises(ValueError):
        DecisionParams(threshold=0.0)
    with pytest.raises(ValueError):
        DecisionParams(band_low=0.6, band_high=0.5)
    with pytest.raises(ValueError):
        DecisionParams(band_high=1.5)
    p = DecisionParams()
    assert DecisionParams.from_doc(p.to_doc()) == p


def test_decision_invariant_enforced():
    with pytest.raises(ValueError, match="escalated"):
        Decision(answer=Answer.YES, claim_strength=0.5, escalated=True, decided_by=DecidedBy.THRESHOLD)
    with pytest.raises(ValueError, match="escalated"):
        Decision(answer=Answer.YES, claim_strength=0.5, escalated=False, decided_by=DecidedBy.FINAL_JUDGE)


def test_decision_doc_round_trip():
    d = decide(0.50, DecisionParams(), task(), judge_backend(answer="yes"))
    doc = d.to_doc()
    assert doc["decided_by"] == "final_judge"
    assert Decision.from_doc(doc) == d
