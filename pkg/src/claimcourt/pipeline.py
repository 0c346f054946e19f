"""End-to-end case construction: claim in, decided CaseRecord out.

Stages run in a fixed order — retrieve, select teams, generate, score,
relate, clash-resolve, build graph, solve, decide — and each enabled stage
leaves exactly one entry in the record's trace. Content-level failures
(one agent drafting nothing, one argument getting an unusable score) are
absorbed and logged in the trace; infrastructure failures abort with a
stage-tagged error.

Case ids are content addresses over task + configuration, so rerunning an
identical case yields an identical id and the store's write-once rule
turns the rerun into a no-op.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Any, Callable, Mapping, Sequence, TypeVar

from claimcourt.agents import (
    AgentProfile,
    GenerationError,
    LegalTask,
    ScoringError,
    SelectionError,
    default_pool,
    generate_arguments,
    score_argument,
    select_team,
)
from claimcourt.arena import ArenaParams, run_arena
from claimcourt.backends import (
    BackendError,
    DemoBackend,
    HttpBackend,
    RecordingBackend,
    ReplayBackend,
    TextModelBackend,
)
from claimcourt.canonical import canonical_json, content_digest
from claimcourt.contestation import CaseRecord, arguments_summary
from claimcourt.decision import DecisionParams, decide
from claimcourt.qbaf import Argument, SolverParams, Stance, build_graph, solve_equilibrium
from claimcourt.relations import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_CONFIDENCE_THRESHOLD,
    heuristic_relations,
    run_model_relations,
)
from claimcourt.retrieval import (
    ChunkParams,
    assemble_context,
    index_corpus,
    load_corpus_dir,
    retrieve,
)

logger = logging.getLogger(__name__)

PIPELINE_STAGES = (
    "retrieval",
    "team_selection",
    "generation",
    "scoring",
    "relations",
    "clash_resolution",
    "graph",
    "solver",
    "decision",
)

DEFAULT_RETRIEVAL_K = 5


class ConfigError(ValueError):
    code = "CONFIG_INVALID"


class PipelineError(RuntimeError):
    """Unrecoverable failure, tagged with the stage that hit it."""

    def __init__(self, stage: str, message: str) -> None:
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


# ------------------------------------------------------------ configuration


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a run depends on, serializable into the case record."""

    backends: Mapping[str, Mapping[str, Any]] = field(
        default_factory=lambda: {"default": {"kind": "demo", "seed": 0}}
    )
    relation_mode: str = "model"  # "model" | "heuristic"
    relation_batch_size: int = DEFAULT_BATCH_SIZE
    relation_confidence_threshold: float = DEFAULT_CONFIDENCE_THRESHOLD
    clash_resolution_enabled: bool = True
    arena: ArenaParams = field(default_factory=ArenaParams)
    solver: SolverParams = field(default_factory=SolverParams)
    decision: DecisionParams = field(default_factory=DecisionParams)
    retrieval_k: int = DEFAULT_RETRIEVAL_K
    chunk: ChunkParams = field(default_factory=ChunkParams)
    corpus_dir: str | None = None
    review_threshold: float = 0.1
    seed: int = 0
    max_workers: int = 1

    def __post_init__(self) -> None:
        if self.relation_mode not in ("model", "heuristic"):
            raise ConfigError(f"relation_mode must be model or heuristic, got {self.relation_mode!r}")
        if "default" not in self.backends:
            raise ConfigError("backends must include a 'default' entry")
        if self.retrieval_k < 0:
            raise ConfigError(f"retrieval_k must be >= 0, got {self.retrieval_k}")
        if self.review_threshold < 0:
            raise ConfigError(f"review_threshold must be >= 0, got {self.review_threshold}")
        if self.max_workers < 1:
            raise ConfigError(f"max_workers must be >= 1, got {self.max_workers}")

    def to_doc(self) -> dict[str, Any]:
        return {
            "backends": {name: dict(doc) for name, doc in sorted(self.backends.items())},
            "relation_mode": self.relation_mode,
            "relation_batch_size": self.relation_batch_size,
            "relation_confidence_threshold": self.relation_confidence_threshold,
            "clash_resolution_enabled": self.clash_resolution_enabled,
            "arena": self.arena.to_doc(),
            "solver": self.solver.to_doc(),
            "decision": self.decision.to_doc(),
            "retrieval_k": self.retrieval_k,
            "chunk": {"window": self.chunk.window, "overlap": self.chunk.overlap},
            "corpus_dir": self.corpus_dir,
            "review_threshold": self.review_threshold,
            "seed": self.seed,
            "max_workers": self.max_workers,
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "PipelineConfig":
        chunk_doc = doc.get("chunk", {})
        base = cls()
        return cls(
            backends=doc.get("backends", dict(base.backends)),
            relation_mode=doc.get("relation_mode", base.relation_mode),
            relation_batch_size=doc.get("relation_batch_size", base.relation_batch_size),
            relation_confidence_threshold=doc.get(
                "relation_confidence_threshold", base.relation_confidence_threshold
            ),
            clash_resolution_enabled=doc.get(
                "clash_resolution_enabled", base.clash_resolution_enabled
            ),
            arena=ArenaParams.from_doc(doc.get("arena", {})),
            solver=SolverParams.from_doc(doc.get("solver", {})),
            decision=DecisionParams.from_doc(doc.get("decision", {})),
            retrieval_k=doc.get("retrieval_k", base.retrieval_k),
            chunk=ChunkParams(
                window=chunk_doc.get("window", base.chunk.window),
                overlap=chunk_doc.get("overlap", base.chunk.overlap),
            ),
            corpus_dir=doc.get("corpus_dir"),
            review_threshold=doc.get("review_threshold", base.review_threshold),
            seed=doc.get("seed", base.seed),
            max_workers=doc.get("max_workers", base.max_workers),
        )


def build_backend(doc: Mapping[str, Any]) -> TextModelBackend:
    kind = doc.get("kind")
    if kind == "demo":
        return DemoBackend(seed=doc.get("seed", 0))
    if kind == "replay":
        if "fixtures_dir" not in doc:
            raise ConfigError("replay backend needs fixtures_dir")
        return ReplayBackend(doc["fixtures_dir"])
    if kind == "record":
        if "inner" not in doc or "fixtures_dir" not in doc:
            raise ConfigError("record backend needs inner and fixtures_dir")
        return RecordingBackend(build_backend(doc["inner"]), doc["fixtures_dir"])
    if kind == "http":
        missing = [k for k in ("endpoint", "model") if k not in doc]
        if missing:
            raise ConfigError(f"http backend needs {', '.join(missing)}")
        return HttpBackend(
            endpoint=doc["endpoint"],
            model=doc["model"],
            api_key_env=doc.get("api_key_env", "CLAIMCOURT_API_KEY"),
            timeout=doc.get("timeout", 60.0),
            max_retries=doc.get("max_retries", 2),
        )
    raise ConfigError(f"unknown backend kind {kind!r}")


class BackendRouter:
    """Per-purpose backend lookup; identical specs share one instance."""

    def __init__(self, mapping: Mapping[str, TextModelBackend]) -> None:
        if "default" not in mapping:
            raise ConfigError("router needs a default backend")
        self._mapping = dict(mapping)

    def for_purpose(self, purpose: str) -> TextModelBackend:
        return self._mapping.get(purpose, self._mapping["default"])

    @classmethod
    def from_config(cls, config: PipelineConfig) -> "BackendRouter":
        instances: dict[str, TextModelBackend] = {}
        mapping = {}
        for name, doc in config.backends.items():
            key = canonical_json(dict(doc))
            if key not in instances:
                instances[key] = build_backend(doc)
            mapping[name] = instances[key]
        return cls(mapping)


# ------------------------------------------------------------------ running


T = TypeVar("T")
U = TypeVar("U")


def _ordered_map(fn: Callable[[T], U], items: Sequence[T], max_workers: int) -> list[U]:
    """Run fn over items, results in input order regardless of worker count."""
    if max_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))


def case_id_for(task: LegalTask, config: PipelineConfig) -> str:
    digest = content_digest({"task": task.to_doc(), "config": config.to_doc()})
    return f"case-{digest[:12]}"


def _load_corpus(
    corpus: Mapping[str, str] | None, config: PipelineConfig
) -> Mapping[str, str]:
    if corpus is not None:
        return corpus
    if config.corpus_dir:
        return load_corpus_dir(config.corpus_dir)
    return {}


def run_case(
    claim: str,
    config: PipelineConfig,
    *,
    task_id: str = "case",
    metadata: Mapping[str, Any] | None = None,
    corpus: Mapping[str, str] | None = None,
    store: Any = None,
    router: BackendRouter | None = None,
) -> CaseRecord:
    """Drive every stage for one claim and freeze the result.

    Passing a store persists the record (idempotently, by content id); a
    prebuilt router lets callers share backend instances across cases.
    """
    if not claim or not claim.strip():
        raise ConfigError("claim must be non-empty")
    router = router or BackendRouter.from_config(config)
    trace: list[dict[str, Any]] = []

    # retrieval
    documents = _load_corpus(corpus, config)
    index = index_corpus(documents, config.chunk)
    hits = retrieve(index, claim, k=config.retrieval_k)
    context = assemble_context(hits)
    task = LegalTask(
        task_id=task_id, claim=claim, context=context, metadata=dict(metadata or {})
    )
    trace.append(
        {
            "stage": "retrieval",
            "corpus_documents": len(documents),
            "passages_indexed": len(index),
            "retrieved": [p.passage_id for p in hits],
            "k": config.retrieval_k,
        }
    )

    # team selection, one team per side
    teams: dict[Stance, list[AgentProfile]] = {}
    pool = default_pool()
    for stance in (Stance.SUPPORT, Stance.ATTACK):
        try:
            teams[stance] = select_team(pool, task, stance, router.for_purpose("select"))
        except (SelectionError, BackendError) as exc:
            raise PipelineError("team_selection", str(exc)) from exc
    trace.append(
        {
            "stage": "team_selection",
            "support": [a.role for a in teams[Stance.SUPPORT]],
            "attack": [a.role for a in teams[Stance.ATTACK]],
        }
    )

    # generation, tolerant of individual agents producing nothing
    assignments = [
        (stance, agent) for stance in (Stance.SUPPORT, Stance.ATTACK) for agent in teams[stance]
    ]

    def _generate(assignment: tuple[Stance, AgentProfile]):
        stance, agent = assignment
        try:
            return generate_arguments(agent, task, stance, router.for_purpose("generate")), None
        except GenerationError as exc:
            return [], {"stance": stance.value, "role": agent.role, "error": str(exc)}

    drafted: list[Argument] = []
    by_agent: dict[str, int] = {}
    generation_failures: list[dict[str, str]] = []
    try:
        results = _ordered_map(_generate, assignments, config.max_workers)
    except BackendError as exc:
        raise PipelineError("generation", str(exc)) from exc
    for (stance, agent), (arguments, failure) in zip(assignments, results):
        if failure:
            generation_failures.append(failure)
            continue
        drafted.extend(arguments)
        by_agent[f"{stance.value}:{agent.role}"] = len(arguments)
    if not drafted:
        raise PipelineError("generation", "no agent produced any argument")
    trace.append(
        {
            "stage": "generation",
            "arguments": len(drafted),
            "by_agent": by_agent,
            "failures": generation_failures,
        }
    )

    # scoring, dropping arguments whose grade is unusable
    def _score(argument: Argument):
        try:
            value = score_argument(argument, task, router.for_purpose("score"))
            return replace(argument, base_strength=value), None
        except ScoringError as exc:
            return None, {"id": argument.id, "error": str(exc)}

    scored: list[Argument] = []
    dropped: list[dict[str, str]] = []
    try:
        score_results = _ordered_map(_score, drafted, config.max_workers)
    except BackendError as exc:
        raise PipelineError("scoring", str(exc)) from exc
    for argument, failure in score_results:
        if failure:
            dropped.append(failure)
        else:
            scored.append(argument)
    if not scored:
        raise PipelineError("scoring", "every argument was dropped during scoring")
    trace.append({"stage": "scoring", "scored": len(scored), "dropped": dropped})

    # relations between arguments
    if config.relation_mode == "heuristic":
        edges = heuristic_relations(scored)
        trace.append({"stage": "relations", "mode": "heuristic", "edges": len(edges)})
    else:
        run = run_model_relations(
            scored,
            router.for_purpose("relate"),
            batch_size=config.relation_batch_size,
            conf_threshold=config.relation_confidence_threshold,
        )
        edges = list(run.edges)
        trace.append({"stage": "relations", "mode": "model", **run.to_trace()})

    # clash resolution is optional and leaves no trace entry when disabled
    final_arguments: Sequence[Argument] = scored
    if config.clash_resolution_enabled:
        arena = run_arena(scored, task, config.arena, router.for_purpose("adjudicate"))
        final_arguments = arena.arguments
        trace.append({"stage": "clash_resolution", **arena.to_trace()})

    graph = build_graph(claim, final_arguments, edges)
    trace.append(
        {"stage": "graph", "arguments": len(graph.arguments), "edges": len(graph.edges)}
    )

    strengths = solve_equilibrium(graph, config.solver)
    trace.append(
        {
            "stage": "solver",
            "iterations": strengths.iterations,
            "residual": strengths.residual,
            "converged": strengths.converged,
            "claim_strength": strengths.claim_strength(),
        }
    )

    decision = decide(
        strengths.claim_strength(),
        config.decision,
        task,
        router.for_purpose("judge"),
        arguments_summary=arguments_summary(graph, strengths),
    )
    trace.append({"stage": "decision", **decision.to_doc()})

    record = CaseRecord(
        case_id=case_id_for(task, config),
        task=task,
        graph=graph,
        strengths=strengths,
        decision=decision,
        trace=tuple(trace),
        config=config.to_doc(),
        created_at=datetime.now(timezone.utc).isoformat(),
    )
    if store is not None:
        store.save_case(record)
    return record
