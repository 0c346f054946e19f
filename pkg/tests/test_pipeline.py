from dataclasses import replace

import pytest

from claimcourt.backends import (
    DemoBackend,
    RecordingBackend,
    ReplayBackend,
    ScriptedBackend,
)
from claimcourt.pipeline import (
    PIPELINE_STAGES,
    BackendRouter,
    ConfigError,
    PipelineConfig,
    PipelineError,
    build_backend,
    case_id_for,
    run_case,
)
from claimcourt.qbaf import Stance
from claimcourt.store import CaseStore

CLAIM = "The defendant's statement is inadmissible hearsay."

CORPUS = {
    "transcript": (
        "The witness testified that a bystander told her the driver ran the red "
        "light. The statement was offered to prove the driver in fact ran the "
        "light. Defense counsel objected on hearsay grounds and the court took "
        "the objection under advisement pending briefing."
    ),
    "brief": (
        "An out-of-court statement offered for the truth of the matter asserted "
        "is hearsay and inadmissible unless an exception applies. The present "
        "sense impression and excited utterance exceptions both require timing "
        "evidence that the record does not contain."
    ),
}


def demo_config(**overrides):
    base = PipelineConfig(backends={"default": {"kind": "demo", "seed": 3}})
    return replace(base, **overrides) if overrides else base


def scripted_router():
    def select(req):
        stance = req.payload["stance"]
        role = "Private Practice Lawyer" if stance == "support" else "Prosecutor"
        return {"roles": [role]}

    def generate(req):
        stance = req.payload["stance"]
        return {
            "arguments": [
                {"text": f"The record shows a {stance} point about admissibility."},
                {"text": f"A second {stance} point grounded in the objection."},
            ]
        }

    def score(req):
        return {"score": 0.8 if req.payload["stance"] == "support" else 0.6}

    def relate(req):
        return {
            "verdicts": [
                {"pair": [p["a"]["id"], p["b"]["id"]], "label": "neutral", "confidence": 0.9}
                for p in req.payload["pairs"]
            ]
        }

    backend = (
        ScriptedBackend()
        .on("select", respond=select)
        .on("generate", respond=generate)
        .on("score", respond=score)
        .on("relate", respond=relate)
        .on("adjudicate", fields={"winner": "tie", "rationale": "evenly matched"})
        .on("judge", fields={"answer": "yes", "rationale": "scripted"})
    )
    return BackendRouter({"default": backend}), backend


class TestConfig:
    def test_round_trip(self):
        config = demo_config(relation_mode="heuristic", retrieval_k=3, max_workers=2)
        assert PipelineConfig.from_doc(config.to_doc()) == config

    def test_defaults_are_stable(self):
        doc = PipelineConfig().to_doc()
        assert doc["relation_mode"] == "model"
        assert doc["relation_batch_size"] == 10
        assert doc["relation_confidence_threshold"] == 0.6
        assert doc["retrieval_k"] == 5
        assert doc["decision"]["band_low"] == 0.49

    def test_validation(self):
        with pytest.raises(ConfigError, match="relation_mode"):
            PipelineConfig(relation_mode="vibes")
        with pytest.raises(ConfigError, match="default"):
            PipelineConfig(backends={"judge": {"kind": "demo"}})
        with pytest.raises(ConfigError, match="max_workers"):
            PipelineConfig(max_workers=0)

    def test_build_backend_kinds(self, tmp_path):
        assert isinstance(build_backend({"kind": "demo"}), DemoBackend)
        assert isinstance(
            build_backend({"kind": "replay", "fixtures_dir": tmp_path}), ReplayBackend
        )
        recording = build_backend(
            {"kind": "record", "inner": {"kind": "demo"}, "fixtures_dir": tmp_path}
        )
        assert isinstance(recording, RecordingBackend)
        with pytest.raises(ConfigError, match="unknown backend kind"):
            build_backend({"kind": "psychic"})
        with pytest.raises(ConfigError, match="fixtures_dir"):
            build_backend({"kind": "replay"})

    def test_router_shares_identical_specs(self):
        config = demo_config()
        config = replace(
            config,
            backends={
                "default": {"kind": "demo", "seed": 3},
                "judge": {"kind": "demo", "seed": 3},
                "score": {"kind": "demo", "seed": 9},
            },
        )
        router = BackendRouter.from_config(config)
        assert router.for_purpose("judge") is router.for_purpose("select")
        assert router.for_purpose("score") is not router.for_purpose("judge")


class TestRunCase:
    def test_full_demo_run_covers_every_stage(self):
        record = run_case(CLAIM, demo_config(), corpus=CORPUS)
        stages = [t["stage"] for t in record.trace]
        assert stages == list(PIPELINE_STAGES)
        assert record.graph.arguments
        assert record.decision.answer.value in ("yes", "no")
        assert 0.0 <= record.strengths.claim_strength() <= 1.0
        assert record.config == demo_config().to_doc()

    def test_case_id_is_deterministic(self):
        first = run_case(CLAIM, demo_config(), corpus=CORPUS)
        second = run_case(CLAIM, demo_config(), corpus=CORPUS)
        assert first.case_id == second.case_id
        assert first.canonical_form() == second.canonical_form()
        assert first.case_id == case_id_for(first.task, demo_config())

    def test_different_claim_different_id(self):
        first = run_case(CLAIM, demo_config(), corpus=CORPUS)
        second = run_case("The contract is enforceable.", demo_config(), corpus=CORPUS)
        assert first.case_id != second.case_id

    def test_clash_resolution_stage_absent_when_disabled(self):
        record = run_case(
            CLAIM, demo_config(clash_resolution_enabled=False), corpus=CORPUS
        )
        stages = [t["stage"] for t in record.trace]
        assert "clash_resolution" not in stages
        assert stages == [s for s in PIPELINE_STAGES if s != "clash_resolution"]

    def test_heuristic_relation_mode(self):
        record = run_case(CLAIM, demo_config(relation_mode="heuristic"), corpus=CORPUS)
        relations = next(t for t in record.trace if t["stage"] == "relations")
        assert relations["mode"] == "heuristic"
        n = len(record.graph.arguments)
        assert relations["edges"] == n * (n - 1)

    def test_retrieval_feeds_context(self):
        record = run_case(CLAIM, demo_config(), corpus=CORPUS)
        retrieval = record.trace[0]
        assert retrieval["corpus_documents"] == 2
        assert retrieval["retrieved"]  # hearsay vocabulary overlaps the corpus
        assert record.task.context.passages

    def test_empty_corpus_still_runs(self):
        record = run_case(CLAIM, demo_config(), corpus={})
        assert record.trace[0]["retrieved"] == []
        assert record.decision is not None

    def test_store_roundtrip_and_idempotent_rerun(self, tmp_path):
        store = CaseStore(tmp_path)
        first = run_case(CLAIM, demo_config(), corpus=CORPUS, store=store)
        second = run_case(CLAIM, demo_config(), corpus=CORPUS, store=store)
        assert store.list_cases() == [first.case_id]
        assert second.case_id == first.case_id
        assert store.load_case(first.case_id).canonical_form() == first.canonical_form()

    def test_blank_claim_rejected(self):
        with pytest.raises(ConfigError, match="claim"):
            run_case("   ", demo_config())

    def test_parallel_run_matches_serial(self):
        serial = run_case(CLAIM, demo_config(max_workers=1), corpus=CORPUS)
        parallel = run_case(CLAIM, demo_config(max_workers=4), corpus=CORPUS)
        assert serial.graph.to_doc() == parallel.graph.to_doc()
        assert serial.strengths.to_doc() == parallel.strengths.to_doc()
        # configs differ only in worker count, which the id must respect
        assert serial.case_id != parallel.case_id


class TestScriptedRuns:
    def test_scripted_run_produces_expected_graph(self):
        router, backend = scripted_router()
        record = run_case(CLAIM, demo_config(), corpus={}, router=router)
        ids = {a.id for a in record.graph.arguments}
        assert ids == {
            "arg-private-practice-lawyer-support-1",
            "arg-private-practice-lawyer-support-2",
            "arg-prosecutor-attack-1",
            "arg-prosecutor-attack-2",
        }
        # all verdicts neutral: no inter-argument edges, only stance edges
        assert len(record.graph.edges) == 4
        assert backend.call_count("relate") == 1

    def test_generation_failure_skips_agent(self):
        router, _ = scripted_router()
        failing = (
            ScriptedBackend()
            .on("select", respond=lambda r: {"roles": ["Paralegal"]})
            .on(
                "generate",
                fields={"arguments": []},
                when=lambda p: p["stance"] == "attack",
            )
            .on(
                "generate",
                respond=lambda r: {"arguments": [{"text": "a supporting point"}]},
            )
            .on("score", fields={"score": 0.7})
            .on("relate", respond=lambda r: {"verdicts": []})
            .on("adjudicate", fields={"winner": "tie"})
            .on("judge", fields={"answer": "yes", "rationale": ""})
        )
        record = run_case(CLAIM, demo_config(), corpus={}, router=BackendRouter({"default": failing}))
        generation = next(t for t in record.trace if t["stage"] == "generation")
        assert generation["failures"] == [
            {
                "stance": "attack",
                "role": "Paralegal",
                "error": "Paralegal produced zero usable arguments for attack",
            }
        ]
        assert all(a.stance is Stance.SUPPORT for a in record.graph.arguments)

    def test_all_agents_failing_aborts(self):
        backend = (
            ScriptedBackend()
            .on("select", respond=lambda r: {"roles": ["Paralegal"]})
            .on("generate", fields={"arguments": []})
        )
        with pytest.raises(PipelineError) as exc:
            run_case(CLAIM, demo_config(), corpus={}, router=BackendRouter({"default": backend}))
        assert exc.value.stage == "generation"

    def test_unusable_score_drops_argument(self):
        backend = (
            ScriptedBackend()
            .on("select", respond=lambda r: {"roles": ["Paralegal"]})
            .on(
                "generate",
                respond=lambda r: {
                    "arguments": [{"text": "keep me"}, {"text": "drop me"}]
                },
            )
            .on("score", fields={"score": "strong"}, when=lambda p: p["argument"] == "drop me")
            .on("score", fields={"score": 0.7})
            .on("relate", respond=lambda r: {"verdicts": [
                {"pair": [p["a"]["id"], p["b"]["id"]], "label": "neutral", "confidence": 1.0}
                for p in r.payload["pairs"]
            ]})
            .on("adjudicate", fields={"winner": "tie"})
            .on("judge", fields={"answer": "yes", "rationale": ""})
        )
        record = run_case(CLAIM, demo_config(), corpus={}, router=BackendRouter({"default": backend}))
        scoring = next(t for t in record.trace if t["stage"] == "scoring")
        assert len(scoring["dropped"]) == 2  # "drop me" drafted for both stances
        assert {a.text for a in record.graph.arguments} == {"keep me"}

    def test_missing_backend_purpose_is_stage_tagged(self):
        backend = ScriptedBackend()  # nothing scripted at all
        with pytest.raises(PipelineError) as exc:
            run_case(CLAIM, demo_config(), corpus={}, router=BackendRouter({"default": backend}))
        assert exc.value.stage == "team_selection"

    def test_record_then_replay_reproduces_case(self, tmp_path):
        fixtures = tmp_path / "fixtures"
        record_config = PipelineConfig(
            backends={
                "default": {
                    "kind": "record",
                    "inner": {"kind": "demo", "seed": 3},
                    "fixtures_dir": str(fixtures),
                }
            }
        )
        recorded = run_case(CLAIM, record_config, corpus=CORPUS)
        replay_config = PipelineConfig(
            backends={"default": {"kind": "replay", "fixtures_dir": str(fixtures)}}
        )
        replayed = run_case(CLAIM, replay_config, corpus=CORPUS)
        # ids differ (config is part of the address) but content agrees
        assert replayed.graph.to_doc() == recorded.graph.to_doc()
        assert replayed.strengths.to_doc() == recorded.strengths.to_doc()
        assert replayed.decision.to_doc() == recorded.decision.to_doc()
