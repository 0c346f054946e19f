"""Backend plumbing: digests, scripting, record/replay, HTTP client, demo."""

import json

import pytest

from claimcourt.backends import (
    BackendError,
    BackendRequest,
    BackendResponse,
    DemoBackend,
    HttpBackend,
    RecordingBackend,
    ReplayBackend,
    ReplayMiss,
    ScriptedBackend,
    TextModelBackend,
    extract_json_object,
)


def req(purpose="score", payload=None, schema=None):
    return BackendRequest(purpose=purpose, payload=payload or {"claim": "c"}, schema=schema)


def test_request_digest_is_stable_under_key_order():
    a = BackendRequest("score", {"x": 1, "y": 2})
    b = BackendRequest("score", {"y": 2, "x": 1})
    assert a.digest() == b.digest()


def test_request_digest_distinguishes_purpose_and_schema():
    base = BackendRequest("generate", {"x": 1})
    assert base.digest() != BackendRequest("score", {"x": 1}).digest()
    assert base.digest() != BackendRequest("generate", {"x": 1}, schema="contest_proposals").digest()


def test_unknown_purpose_rejected():
    with pytest.raises(ValueError, match="unknown purpose"):
        BackendRequest("summarize", {})


def test_call_log_counts_by_purpose():
    backend = ScriptedBackend().on("score", {"score": 0.5}).on("judge", {"answer": "yes"})
    backend.complete(req("score"))
    backend.complete(req("score"))
    backend.complete(req("judge", {"strength": 0.5}))
    assert backend.call_count() == 3
    assert backend.call_count("score") == 2
    assert backend.call_count("judge") == 1
    backend.reset_calls()
    assert backend.call_count() == 0


def test_scripted_when_filter_and_once():
    backend = (
        ScriptedBackend()
        .on("score", {"score": 0.9}, when=lambda p: p.get("role") == "Judge", once=True)
        .on("score", {"score": 0.2})
    )
    assert backend.complete(req(payload={"role": "Judge"})).fields["score"] == 0.9
    # the once-rule is spent, so the same payload now falls through
    assert backend.complete(req(payload={"role": "Judge"})).fields["score"] == 0.2
    assert backend.complete(req(payload={"role": "Paralegal"})).fields["score"] == 0.2


def test_scripted_respond_callable_sees_request():
    backend = ScriptedBackend().on(
        "score", respond=lambda r: {"score": len(r.payload["argument"]) / 100}
    )
    out = backend.complete(req(payload={"argument": "x" * 30}))
    assert out.fields["score"] == pytest.approx(0.3)


def test_scripted_raises_without_matching_rule():
    with pytest.raises(BackendError, match="no scripted response"):
        ScriptedBackend().complete(req())


def test_scripted_rejects_ambiguous_rule():
    with pytest.raises(ValueError):
        ScriptedBackend().on("score", {"score": 1}, respond=lambda r: {})
    with pytest.raises(ValueError):
        ScriptedBackend().on("score")


def test_record_then_replay_round_trip(tmp_path):
    live = ScriptedBackend().on("score", {"score": 0.7, "rationale": "solid"})
    recorder = RecordingBackend(live, tmp_path)
    request = req(payload={"argument": "a", "claim": "c"})
    recorded = recorder.complete(request)

    replay = ReplayBackend(tmp_path)
    replayed = replay.complete(request)
    assert replayed.fields == recorded.fields

    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    doc = json.loads(files[0].read_text())
    assert doc["purpose"] == "score"
    assert doc["payload"]["argument"] == "a"


def test_replay_miss_names_purpose_and_digest(tmp_path):
    request = req()
    with pytest.raises(ReplayMiss, match="score"):
        ReplayBackend(tmp_path).complete(request)


def test_replay_distinguishes_payloads(tmp_path):
    live = ScriptedBackend().on("score", respond=lambda r: {"score": r.payload["n"]})
    recorder = RecordingBackend(live, tmp_path)
    recorder.complete(req(payload={"n": 0.3}))
    recorder.complete(req(payload={"n": 0.8}))
    replay = ReplayBackend(tmp_path)
    assert replay.complete(req(payload={"n": 0.3})).fields["score"] == 0.3
    assert replay.complete(req(payload={"n": 0.8})).fields["score"] == 0.8


# ---------------------------------------------------------------- parsing


def test_extract_json_object_plain():
    assert extract_json_object('{"a": 1}') == {"a": 1}


def test_extract_json_object_fenced_with_prose():
    text = 'Sure, here you go:\n```json\n{"score": 0.7}\n```\nHope that helps.'
    assert extract_json_object(text) == {"score": 0.7}


def test_extract_json_object_rejects_non_object():
    with pytest.raises(BackendError):
        extract_json_object("[1, 2]")
    with pytest.raises(BackendError):
        extract_json_object("no json here")
    with pytest.raises(BackendError):
        extract_json_object('{"broken": ')


# ------------------------------------------------------------------- http


def completion_body(content):
    return json.dumps({"choices": [{"message": {"content": content}}]})


def test_http_backend_happy_path(monkeypatch):
    seen = {}

    def transport(url, headers, body):
        seen["url"] = url
        seen["headers"] = dict(headers)
        seen["body"] = body
        return 200, completion_body('{"score": 0.65, "rationale": "ok"}')

    monkeypatch.setenv("CLAIMCOURT_API_KEY", "k-123")
    backend = HttpBackend("https://models.example/v1", "arbiter-large", transport=transport, retry_wait=0)
    out = backend.complete(req(payload={"argument": "a"}))
    assert out.fields == {"score": 0.65, "rationale": "ok"}
    assert seen["url"] == "https://models.example/v1/chat/completions"
    assert seen["headers"]["Authorization"] == "Bearer k-123"
    assert seen["body"]["model"] == "arbiter-large"
    assert seen["body"]["temperature"] == 0


def test_http_backend_retries_transient_then_succeeds():
    statuses = iter([(500, "boom"), (429, "slow down"), (200, completion_body('{"score": 0.4}'))])

    backend = HttpBackend(
        "https://models.example/v1", "m", transport=lambda *a: next(statuses), retry_wait=0
    )
    assert backend.complete(req()).fields["score"] == 0.4


def test_http_backend_gives_up_after_retries():
    backend = HttpBackend(
        "https://models.example/v1",
        "m",
        transport=lambda *a: (503, "down"),
        max_retries=1,
        retry_wait=0,
    )
    with pytest.raises(BackendError, match="after 2 attempts"):
        backend.complete(req())


def test_http_backend_hard_client_error_does_not_retry():
    calls = []

    def transport(url, headers, body):
        calls.append(1)
        return 401, "unauthorized"

    backend = HttpBackend("https://models.example/v1", "m", transport=transport, retry_wait=0)
    with pytest.raises(BackendError, match="401"):
        backend.complete(req())
    assert len(calls) == 1


def test_http_backend_retries_malformed_completion():
    bodies = iter([(200, "not json"), (200, completion_body('{"score": 0.9}'))])
    backend = HttpBackend(
        "https://models.example/v1", "m", transport=lambda *a: next(bodies), retry_wait=0
    )
    assert backend.complete(req()).fields["score"] == 0.9


# ------------------------------------------------------------------- demo


def test_demo_backend_is_deterministic():
    a = DemoBackend(seed=7).complete(req(payload={"argument": "x", "claim": "c"}))
    b = DemoBackend(seed=7).complete(req(payload={"argument": "x", "claim": "c"}))
    assert a.fields == b.fields


def test_demo_backend_seed_changes_output():
    request = req(payload={"argument": "x", "claim": "c"})
    scores = {DemoBackend(seed=s).complete(request).fields["score"] for s in range(6)}
    assert len(scores) > 1


def test_demo_select_returns_subset_of_available_roles():
    roles = ["Judge", "Prosecutor", "Paralegal", "Legal Analyst"]
    out = DemoBackend().complete(
        BackendRequest("select", {"available_roles": roles, "stance": "support"})
    )
    chosen = out.fields["roles"]
    assert 2 <= len(chosen) <= 3
    assert set(chosen) <= set(roles)
    assert chosen == sorted(chosen)


def test_demo_generate_produces_bounded_arguments_with_known_evidence():
    out = DemoBackend().complete(
        BackendRequest(
            "generate",
            {
                "claim": "The statement is inadmissible hearsay.",
                "stance": "attack",
                "role": "Prosecutor",
                "passages": [{"id": "doc:0", "text": "t"}, {"id": "doc:800", "text": "u"}],
            },
        )
    )
    arguments = out.fields["arguments"]
    assert 1 <= len(arguments) <= 3
    for a in arguments:
        assert a["text"]
        assert set(a["evidence"]) <= {"doc:0", "doc:800"}


def test_demo_score_in_rubric_range():
    for i in range(12):
        out = DemoBackend().complete(req(payload={"argument": f"a{i}", "claim": "c"}))
        assert 0.1 <= out.fields["score"] <= 1.0


def test_demo_relate_covers_all_pairs():
    pairs = [
        {"a": {"id": "arg-1", "stance": "support"}, "b": {"id": "arg-2", "stance": "attack"}},
        {"a": {"id": "arg-1", "stance": "support"}, "b": {"id": "arg-3", "stance": "support"}},
    ]
    out = DemoBackend().complete(BackendRequest("relate", {"pairs": pairs, "claim": "c"}))
    verdicts = out.fields["verdicts"]
    assert [v["pair"] for v in verdicts] == [["arg-1", "arg-2"], ["arg-1", "arg-3"]]
    for v in verdicts:
        assert v["label"] in ("attack", "support", "neutral")
        assert 0.0 <= v["confidence"] <= 1.0


def test_demo_judge_answers_yes_or_no():
    out = DemoBackend().complete(
        BackendRequest("judge", {"claim": "c", "strength": 0.503, "arguments_summary": ""})
    )
    assert out.fields["answer"] in ("yes", "no")


def test_demo_proposals_reference_existing_nodes():
    graph = {
        "claim": {"id": "claim", "text": "c", "base_strength": 0.5},
        "arguments": [
            {"id": "arg-a", "stance": "support"},
            {"id": "arg-b", "stance": "attack"},
        ],
        "edges": [],
    }
    out = DemoBackend().complete(
        BackendRequest(
            "generate",
            {"claim": "c", "contestation_type": "factual", "graph": graph},
            schema="contest_proposals",
        )
    )
    for proposal in out.fields["proposals"]:
        assert proposal["node_id"] in ("arg-a", "arg-b")
        if proposal["kind"] == "set_base_strength":
            assert 0.1 <= proposal["new_strength"] <= 1.0


def test_base_class_requires_complete_override():
    with pytest.raises(NotImplementedError):
        TextModelBackend().complete(req())


def test_response_defaults():
    r = BackendResponse(fields={"a": 1})
    assert r.raw == ""
