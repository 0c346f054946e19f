"""Contestable argumentation engine for legal claims.

Agent teams draft support and attack arguments, a bipolar argumentation
graph propagates their scores into a claim strength, borderline outcomes
escalate to a judge, and humans can contest any step with audited edits.
"""

from claimcourt.bench import TASKS, LabeledExample, MetricsReport, evaluate, load_task
from claimcourt.contestation import (
    AuditEntry,
    CaseRecord,
    ContestationError,
    ContestationSession,
    ContestationType,
    EditKind,
    EditOp,
    apply_edit,
    argument_card,
    dashboard,
    open_session,
    participation_summary,
    recompute,
)
from claimcourt.decision import Answer, DecidedBy, Decision, DecisionParams, decide
from claimcourt.pipeline import (
    BackendRouter,
    ConfigError,
    PipelineConfig,
    PipelineError,
    run_case,
)
from claimcourt.qbaf import (
    CLAIM_ID,
    Argument,
    ClaimNode,
    Edge,
    EdgeOrigin,
    GraphError,
    QbafGraph,
    RelationKind,
    SolverParams,
    Stance,
    StrengthMap,
    build_graph,
    solve_equilibrium,
    validate,
)
from claimcourt.store import CaseStore

__all__ = [
    "CLAIM_ID",
    "Answer",
    "Argument",
    "AuditEntry",
    "BackendRouter",
    "CaseRecord",
    "CaseStore",
    "ClaimNode",
    "ConfigError",
    "ContestationError",
    "ContestationSession",
    "ContestationType",
    "DecidedBy",
    "Decision",
    "DecisionParams",
    "Edge",
    "EdgeOrigin",
    "EditKind",
    "EditOp",
    "GraphError",
    "LabeledExample",
    "MetricsReport",
    "PipelineConfig",
    "PipelineError",
    "QbafGraph",
    "RelationKind",
    "SolverParams",
    "Stance",
    "StrengthMap",
    "TASKS",
    "apply_edit",
    "argument_card",
    "build_graph",
    "dashboard",
    "decide",
    "evaluate",
    "load_task",
    "open_session",
    "participation_summary",
    "recompute",
    "run_case",
    "solve_equilibrium",
    "validate",
]
