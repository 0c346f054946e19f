"""Human contestation: the decision as an editable, auditable object.

A finished case is frozen into a CaseRecord. Opening a ContestationSession
copies its graph into a working state that humans revise through typed edit
operations; every applied edit recomputes the equilibrium under the case's
original configuration and appends an audit entry recording who changed
what and how the claim strength moved. Backend-proposed revisions are
staged as pending proposals and touch nothing until explicitly accepted.
"""

from __future__ import annotations

import logging
import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

from claimcourt.agents import SCORE_CEILING, SCORE_FLOOR, LegalTask
from claimcourt.backends import BackendError, BackendRequest, TextModelBackend
from claimcourt.canonical import canonical_json
from claimcourt.decision import Decision, DecisionParams, decide
from claimcourt.qbaf import (
    CLAIM_ID,
    Argument,
    Edge,
    EdgeOrigin,
    QbafGraph,
    RelationKind,
    SolverParams,
    Stance,
    StrengthMap,
    build_graph,
    solve_equilibrium,
    stance_kind,
)
from claimcourt.retrieval import EvidencePassage, Provenance

logger = logging.getLogger(__name__)

DEFAULT_REVIEW_THRESHOLD = 0.1


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ContestationError(ValueError):
    """Invalid contestation input; ``code`` is machine-readable."""

    code = "EDIT_INVALID"


class UnknownNodeError(ContestationError):
    code = "EDIT_UNKNOWN_NODE"


class StaleNodeError(ContestationError):
    """The node existed but was rejected earlier in this session."""

    code = "EDIT_STALE_NODE"


class ProposalNotFoundError(ContestationError):
    code = "PROPOSAL_NOT_FOUND"


# ------------------------------------------------------------- case record


@dataclass(frozen=True)
class CaseRecord:
    """Immutable snapshot of one completed pipeline run."""

    case_id: str
    task: LegalTask
    graph: QbafGraph
    strengths: StrengthMap
    decision: Decision
    trace: tuple[Mapping[str, Any], ...]
    config: Mapping[str, Any]
    created_at: str

    def to_doc(self) -> dict[str, Any]:
        return {**self.canonical_doc(), "created_at": self.created_at}

    def canonical_doc(self) -> dict[str, Any]:
        """Everything except the timestamp; the determinism comparison form."""
        return {
            "case_id": self.case_id,
            "task": self.task.to_doc(),
            "graph": self.graph.to_doc(),
            "strengths": self.strengths.to_doc(),
            "decision": self.decision.to_doc(),
            "trace": [dict(t) for t in self.trace],
            "config": dict(self.config),
        }

    def canonical_form(self) -> str:
        return canonical_json(self.canonical_doc())

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "CaseRecord":
        return cls(
            case_id=doc["case_id"],
            task=LegalTask.from_doc(doc["task"]),
            graph=QbafGraph.from_doc(doc["graph"]),
            strengths=StrengthMap.from_doc(doc["strengths"]),
            decision=Decision.from_doc(doc["decision"]),
            trace=tuple(doc.get("trace", ())),
            config=dict(doc.get("config", {})),
            created_at=doc.get("created_at", ""),
        )

    def stage_trace(self, stage: str) -> Mapping[str, Any] | None:
        for entry in self.trace:
            if entry.get("stage") == stage:
                return entry
        return None


# ------------------------------------------------------------------- edits


class ContestationType(str, Enum):
    FACTUAL = "factual"
    LEGAL_RULE = "legal_rule"
    PRECEDENT = "precedent"
    MISSING_EXCEPTION = "missing_exception"
    PROCEDURAL_FAIRNESS = "procedural_fairness"


class EditKind(str, Enum):
    ACCEPT_ARGUMENT = "accept_argument"
    REJECT_ARGUMENT = "reject_argument"
    EDIT_ARGUMENT_TEXT = "edit_argument_text"
    ADD_ARGUMENT = "add_argument"
    SET_BASE_STRENGTH = "set_base_strength"
    SET_RELATION = "set_relation"


@dataclass(frozen=True)
class EditOp:
    """One typed revision to the working graph.

    Only the fields its kind needs are set; the rest stay None so every
    edit serializes to the same stable document shape.
    """

    kind: EditKind
    actor: str
    contestation_type: ContestationType
    rationale: str = ""
    timestamp: str = field(default_factory=_now)
    node_id: str | None = None
    new_text: str | None = None
    argument: Argument | None = None
    new_strength: float | None = None
    source: str | None = None
    target: str | None = None
    relation: str | None = None
    remove: bool = False

    def to_doc(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "actor": self.actor,
            "contestation_type": self.contestation_type.value,
            "rationale": self.rationale,
            "timestamp": self.timestamp,
            "node_id": self.node_id,
            "new_text": self.new_text,
            "argument": self.argument.to_doc() if self.argument else None,
            "new_strength": self.new_strength,
            "source": self.source,
            "target": self.target,
            "relation": self.relation,
            "remove": self.remove,
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "EditOp":
        try:
            kind = EditKind(doc["kind"])
            ctype = ContestationType(doc["contestation_type"])
        except (KeyError, ValueError) as exc:
            raise ContestationError(f"unparseable edit: {exc}") from exc
        argument = None
        if doc.get("argument") is not None:
            try:
                argument = Argument.from_doc(doc["argument"])
            except (KeyError, ValueError) as exc:
                raise ContestationError(f"unparseable argument in edit: {exc}") from exc
        return cls(
            kind=kind,
            actor=str(doc.get("actor", "")),
            contestation_type=ctype,
            rationale=str(doc.get("rationale", "")),
            timestamp=str(doc.get("timestamp") or _now()),
            node_id=doc.get("node_id"),
            new_text=doc.get("new_text"),
            argument=argument,
            new_strength=doc.get("new_strength"),
            source=doc.get("source"),
            target=doc.get("target"),
            relation=doc.get("relation"),
            remove=bool(doc.get("remove", False)),
        )


@dataclass(frozen=True)
class AuditEntry:
    """One applied edit and its measured effect on the claim."""

    seq: int
    actor: str
    edit: EditOp
    sigma_phi_before: float
    sigma_phi_after: float
    decision_after: Mapping[str, Any] | None  # only when the decision changed
    review_required: bool

    def to_doc(self) -> dict[str, Any]:
        return {
            "seq": self.seq,
            "actor": self.actor,
            "edit": self.edit.to_doc(),
            "sigma_phi_before": self.sigma_phi_before,
            "sigma_phi_after": self.sigma_phi_after,
            "decision_after": dict(self.decision_after) if self.decision_after else None,
            "review_required": self.review_required,
        }

    def to_json_line(self) -> str:
        return canonical_json(self.to_doc())

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "AuditEntry":
        return cls(
            seq=doc["seq"],
            actor=doc["actor"],
            edit=EditOp.from_doc(doc["edit"]),
            sigma_phi_before=doc["sigma_phi_before"],
            sigma_phi_after=doc["sigma_phi_after"],
            decision_after=doc.get("decision_after"),
            review_required=doc["review_required"],
        )


@dataclass
class Proposal:
    """A backend-suggested edit waiting for an explicit human verdict."""

    proposal_id: str
    edit: EditOp
    status: str = "pending"  # pending | accepted | rejected

    def to_doc(self) -> dict[str, Any]:
        return {"proposal_id": self.proposal_id, "edit": self.edit.to_doc(), "status": self.status}

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "Proposal":
        return cls(
            proposal_id=doc["proposal_id"],
            edit=EditOp.from_doc(doc["edit"]),
            status=doc.get("status", "pending"),
        )


# ----------------------------------------------------------------- session


class ContestationSession:
    """Single-writer working copy of a case; all mutation goes through
    :func:`apply_edit` so the audit log can never miss a change."""

    def __init__(self, case: CaseRecord, session_id: str | None = None) -> None:
        self.session_id = session_id or f"sess-{uuid.uuid4().hex[:12]}"
        self.case = case
        self.arguments: list[Argument] = list(case.graph.arguments)
        # claim-directed edges are rebuilt from stances; keep only the rest
        self.relations: list[Edge] = [e for e in case.graph.edges if e.target != CLAIM_ID]
        self.strengths: StrengthMap = case.strengths
        self.decision: Decision = case.decision
        self.accepted: set[str] = set()
        self.removed: set[str] = set()
        self.proposals: dict[str, Proposal] = {}
        self.audit: list[AuditEntry] = []
        self.review_required = False
        self.user_passages: list[EvidencePassage] = []
        self.lock = threading.RLock()

    # -- derived state

    def graph(self) -> QbafGraph:
        return build_graph(self.case.graph.claim.text, self.arguments, self.relations)

    def argument_by_id(self, node_id: str) -> Argument:
        for a in self.arguments:
            if a.id == node_id:
                return a
        if node_id in self.removed:
            raise StaleNodeError(f"argument {node_id!r} was rejected in this session")
        raise UnknownNodeError(f"unknown node {node_id!r}")

    def known_passage_ids(self) -> set[str]:
        return set(self.case.task.context.ids()) | {p.passage_id for p in self.user_passages}

    def solver_params(self) -> SolverParams:
        return SolverParams.from_doc(self.case.config.get("solver", {}))

    def decision_params(self) -> DecisionParams:
        return DecisionParams.from_doc(self.case.config.get("decision", {}))

    def review_threshold(self) -> float:
        return float(self.case.config.get("review_threshold", DEFAULT_REVIEW_THRESHOLD))

    # -- serialization

    def to_doc(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "case_id": self.case.case_id,
            "arguments": [a.to_doc() for a in self.arguments],
            "relations": [e.to_doc() for e in self.relations],
            "strengths": self.strengths.to_doc(),
            "decision": self.decision.to_doc(),
            "accepted": sorted(self.accepted),
            "removed": sorted(self.removed),
            "proposals": [self.proposals[pid].to_doc() for pid in sorted(self.proposals)],
            "audit": [entry.to_doc() for entry in self.audit],
            "review_required": self.review_required,
            "user_passages": [p.to_doc() for p in self.user_passages],
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any], case: CaseRecord) -> "ContestationSession":
        if doc["case_id"] != case.case_id:
            raise ContestationError(
                f"session belongs to case {doc['case_id']!r}, not {case.case_id!r}"
            )
        session = cls(case, session_id=doc["session_id"])
        session.arguments = [Argument.from_doc(d) for d in doc["arguments"]]
        session.relations = [Edge.from_doc(d) for d in doc["relations"]]
        session.strengths = StrengthMap.from_doc(doc["strengths"])
        session.decision = Decision.from_doc(doc["decision"])
        session.accepted = set(doc.get("accepted", ()))
        session.removed = set(doc.get("removed", ()))
        session.proposals = {
            p["proposal_id"]: Proposal.from_doc(p) for p in doc.get("proposals", ())
        }
        session.audit = [AuditEntry.from_doc(d) for d in doc.get("audit", ())]
        session.review_required = doc.get("review_required", False)
        session.user_passages = [
            EvidencePassage.from_doc(d) for d in doc.get("user_passages", ())
        ]
        return session


def open_session(case: CaseRecord, session_id: str | None = None) -> ContestationSession:
    """Working copy of the case: identical strengths, empty audit log."""
    return ContestationSession(case, session_id=session_id)


# ----------------------------------------------------------- edit application


def _validate_and_mutate(session: ContestationSession, edit: EditOp) -> None:
    kind = edit.kind

    if kind is EditKind.ACCEPT_ARGUMENT:
        session.argument_by_id(_require(edit.node_id, "node_id"))
        session.accepted.add(edit.node_id)
        return

    if kind is EditKind.REJECT_ARGUMENT:
        node_id = _require(edit.node_id, "node_id")
        if node_id == CLAIM_ID:
            raise ContestationError("the claim itself cannot be rejected")
        session.argument_by_id(node_id)
        session.arguments = [a for a in session.arguments if a.id != node_id]
        session.relations = [
            e for e in session.relations if node_id not in (e.source, e.target)
        ]
        session.removed.add(node_id)
        session.accepted.discard(node_id)
        return

    if kind is EditKind.EDIT_ARGUMENT_TEXT:
        node_id = _require(edit.node_id, "node_id")
        new_text = (edit.new_text or "").strip()
        if not new_text:
            raise ContestationError("replacement text must be non-empty")
        current = session.argument_by_id(node_id)
        session.arguments = [
            replace(a, text=new_text) if a.id == node_id else a for a in session.arguments
        ]
        del current
        return

    if kind is EditKind.ADD_ARGUMENT:
        argument = edit.argument
        if argument is None:
            raise ContestationError("add_argument requires an argument")
        if not argument.id or argument.id == CLAIM_ID:
            raise ContestationError(f"argument id {argument.id!r} is not usable")
        used = {a.id for a in session.arguments} | session.removed | {CLAIM_ID}
        if argument.id in used:
            raise ContestationError(f"argument id {argument.id!r} already used in this session")
        if not argument.text.strip():
            raise ContestationError("new argument needs text")
        if argument.base_strength is None or not (
            SCORE_FLOOR <= argument.base_strength <= SCORE_CEILING
        ):
            raise ContestationError(
                f"new argument strength must lie in [{SCORE_FLOOR}, {SCORE_CEILING}], "
                f"got {argument.base_strength!r}"
            )
        unknown_refs = set(argument.evidence_refs) - session.known_passage_ids()
        if unknown_refs:
            raise ContestationError(
                f"evidence refs do not resolve: {', '.join(sorted(unknown_refs))}"
            )
        session.arguments.append(argument)
        return

    if kind is EditKind.SET_BASE_STRENGTH:
        node_id = _require(edit.node_id, "node_id")
        if node_id == CLAIM_ID:
            raise ContestationError("the claim's base strength is fixed")
        session.argument_by_id(node_id)
        if edit.new_strength is None or not (
            SCORE_FLOOR <= edit.new_strength <= SCORE_CEILING
        ):
            raise ContestationError(
                f"strength must lie in [{SCORE_FLOOR}, {SCORE_CEILING}], got {edit.new_strength!r}"
            )
        session.arguments = [
            replace(a, base_strength=edit.new_strength) if a.id == node_id else a
            for a in session.arguments
        ]
        return

    if kind is EditKind.SET_RELATION:
        _apply_set_relation(session, edit)
        return

    raise ContestationError(f"unsupported edit kind {kind!r}")


def _apply_set_relation(session: ContestationSession, edit: EditOp) -> None:
    source = _require(edit.source, "source")
    target = _require(edit.target, "target")
    if source == target:
        raise ContestationError("a relation cannot connect a node to itself")
    source_arg = session.argument_by_id(source)

    if target == CLAIM_ID:
        if edit.remove:
            raise ContestationError(
                "every argument keeps exactly one stance edge to the claim; "
                "reject the argument to detach it"
            )
        kind = _parse_kind(edit.relation)
        if kind is not stance_kind(source_arg.stance):
            flipped = Stance.ATTACK if source_arg.stance is Stance.SUPPORT else Stance.SUPPORT
            session.arguments = [
                replace(a, stance=flipped) if a.id == source else a for a in session.arguments
            ]
        return

    session.argument_by_id(target)
    pair = {source, target}
    session.relations = [
        e for e in session.relations if {e.source, e.target} != pair
    ]
    if edit.remove:
        return
    kind = _parse_kind(edit.relation)
    # both directions at once keeps the edge set symmetric
    for src, dst in ((source, target), (target, source)):
        session.relations.append(
            Edge(source=src, target=dst, kind=kind, confidence=1.0, origin=EdgeOrigin.HUMAN)
        )


def _require(value: str | None, name: str) -> str:
    if not value:
        raise ContestationError(f"edit is missing {name}")
    return value


def _parse_kind(value: str | None) -> RelationKind:
    try:
        return RelationKind(str(value))
    except ValueError:
        raise ContestationError(
            f"relation must be one of attack/support (or remove=true), got {value!r}"
        ) from None


def recompute(
    session: ContestationSession, backend: TextModelBackend | None = None
) -> tuple[StrengthMap, Decision]:
    """Re-run propagation and the decision rule under the case's own config."""
    with session.lock:
        graph = session.graph()
        strengths = solve_equilibrium(graph, session.solver_params())
        decision = decide(
            strengths.claim_strength(),
            session.decision_params(),
            session.case.task,
            backend,
            arguments_summary=arguments_summary(graph, strengths),
        )
        session.strengths = strengths
        session.decision = decision
        return strengths, decision


def apply_edit(
    session: ContestationSession,
    edit: EditOp,
    backend: TextModelBackend | None = None,
) -> AuditEntry:
    """Validate, mutate, recompute, audit; strictly sequential per session."""
    with session.lock:
        sigma_before = session.strengths.claim_strength()
        decision_before = session.decision

        _validate_and_mutate(session, edit)
        strengths, decision = recompute(session, backend)
        sigma_after = strengths.claim_strength()

        changed = decision.answer is not decision_before.answer
        if changed or abs(sigma_after - sigma_before) > session.review_threshold():
            session.review_required = True  # sticky until a human signs off

        entry = AuditEntry(
            seq=len(session.audit) + 1,
            actor=edit.actor,
            edit=edit,
            sigma_phi_before=sigma_before,
            sigma_phi_after=sigma_after,
            decision_after=decision.to_doc() if changed else None,
            review_required=session.review_required,
        )
        session.audit.append(entry)
        return entry


def audit_log(session: ContestationSession) -> list[AuditEntry]:
    with session.lock:
        return list(session.audit)


def dump_audit_jsonl(entries: Iterable[AuditEntry]) -> str:
    return "".join(entry.to_json_line() + "\n" for entry in entries)


def load_audit_jsonl(text: str) -> list[AuditEntry]:
    import json

    return [AuditEntry.from_doc(json.loads(line)) for line in text.splitlines() if line.strip()]


# ------------------------------------------------------------- proposals


_CONTEST_INSTRUCTIONS = {
    ContestationType.FACTUAL: (
        "Challenge the factual basis: find assertions unsupported or contradicted "
        "by the record and propose corrected text or adjusted strengths."
    ),
    ContestationType.LEGAL_RULE: (
        "Challenge the governing rule: find arguments applying the wrong rule or "
        "misstating its elements and propose corrections or replacements."
    ),
    ContestationType.PRECEDENT: (
        "Challenge the precedent fit: find reliance on distinguishable or "
        "superseded authority and propose rebuttal arguments."
    ),
    ContestationType.MISSING_EXCEPTION: (
        "Find an exception or defense the graph misses and propose adding it as "
        "a new argument, citing the supplied materials where possible."
    ),
    ContestationType.PROCEDURAL_FAIRNESS: (
        "Challenge procedural fairness: find process defects in how the arguments "
        "treat the parties and propose argument or relation changes."
    ),
}


def add_user_materials(
    session: ContestationSession, materials: Sequence[str]
) -> list[EvidencePassage]:
    """Register user-supplied texts as citable evidence passages."""
    added = []
    with session.lock:
        for text in materials:
            if not text.strip():
                continue
            n = len(session.user_passages) + 1
            passage = EvidencePassage(
                passage_id=f"user-{n}:0",
                doc_id=f"user-{n}",
                text=text,
                score=0.0,
                provenance=Provenance.USER_SUBMITTED,
            )
            session.user_passages.append(passage)
            added.append(passage)
    return added


def run_contestation_prompt(
    session: ContestationSession,
    ctype: ContestationType,
    user_claim: str,
    backend: TextModelBackend,
    materials: Sequence[str] = (),
) -> list[Proposal]:
    """Ask the backend for revisions under the user's challenge.

    Proposals are parsed into EditOps and parked as pending; nothing is
    applied here. Backend failure degrades to an empty list.
    """
    with session.lock:
        added = add_user_materials(session, materials)
        payload = {
            "claim": session.case.task.claim,
            "contestation_type": ctype.value,
            "user_claim": user_claim,
            "instructions": _CONTEST_INSTRUCTIONS[ctype],
            "graph": session.graph().to_doc(),
            "strengths": session.strengths.to_doc(),
            "materials": [p.to_doc() for p in added],
        }
        request = BackendRequest("generate", payload, schema="contest_proposals")
        try:
            fields = backend.complete(request).fields
        except BackendError as exc:
            logger.warning("contestation prompt failed, no proposals: %s", exc)
            return []

        raw = fields.get("proposals")
        if not isinstance(raw, list):
            logger.warning("contestation response had no proposal list: %r", fields)
            return []

        created: list[Proposal] = []
        for item in raw:
            if not isinstance(item, Mapping):
                continue
            doc = {
                **item,
                "contestation_type": ctype.value,
                "actor": f"proposal:{ctype.value}",
            }
            try:
                edit = EditOp.from_doc(doc)
            except ContestationError as exc:
                logger.warning("skipping unparseable proposal %r: %s", item, exc)
                continue
            pid = f"p-{len(session.proposals) + 1}"
            proposal = Proposal(proposal_id=pid, edit=edit)
            session.proposals[pid] = proposal
            created.append(proposal)
        return created


def accept_proposal(
    session: ContestationSession,
    proposal_id: str,
    actor: str,
    backend: TextModelBackend | None = None,
) -> AuditEntry:
    """Apply a pending proposal as an edit owned by the accepting human."""
    with session.lock:
        proposal = session.proposals.get(proposal_id)
        if proposal is None:
            raise ProposalNotFoundError(f"no proposal {proposal_id!r}")
        if proposal.status != "pending":
            raise ContestationError(f"proposal {proposal_id!r} is already {proposal.status}")
        entry = apply_edit(session, replace(proposal.edit, actor=actor), backend)
        proposal.status = "accepted"
        return entry


def reject_proposal(session: ContestationSession, proposal_id: str) -> Proposal:
    with session.lock:
        proposal = session.proposals.get(proposal_id)
        if proposal is None:
            raise ProposalNotFoundError(f"no proposal {proposal_id!r}")
        if proposal.status != "pending":
            raise ContestationError(f"proposal {proposal_id!r} is already {proposal.status}")
        proposal.status = "rejected"
        return proposal


# ------------------------------------------------------ dashboard artifacts


def arguments_summary(graph: QbafGraph, strengths: StrengthMap, top: int = 3) -> str:
    """Strongest arguments per side, for judge prompts and dashboards."""
    sides = {Stance.SUPPORT: [], Stance.ATTACK: []}
    for a in graph.arguments:
        sides[a.stance].append(a)
    lines = []
    for stance, label in ((Stance.SUPPORT, "Supporting"), (Stance.ATTACK, "Attacking")):
        ranked = sorted(sides[stance], key=lambda a: (-strengths[a.id], a.id))[:top]
        for a in ranked:
            lines.append(f"{label} ({strengths[a.id]:.3f}): {a.text}")
    return "\n".join(lines)


def participation_summary(case: CaseRecord) -> list[dict[str, Any]]:
    """Per-agent contribution rows: argument counts, clashes, adjustments."""
    role_of = {a.id: a.author_role for a in case.graph.arguments}
    rows: dict[str, dict[str, Any]] = {}
    for a in case.graph.arguments:
        row = rows.setdefault(
            a.author_role,
            {
                "role": a.author_role,
                "arguments": 0,
                "supports": 0,
                "attacks": 0,
                "clashes": 0,
                "clash_wins": 0,
                "clash_ties": 0,
                "net_adjustment": 0.0,
            },
        )
        row["arguments"] += 1
        row["supports" if a.stance is Stance.SUPPORT else "attacks"] += 1

    arena = case.stage_trace("clash_resolution")
    if arena:
        for outcome in arena.get("outcomes", ()):
            winner = outcome.get("winner")
            for side in ("supporter", "attacker"):
                role = role_of.get(outcome.get(side))
                if role is None or role not in rows:
                    continue
                rows[role]["clashes"] += 1
                if winner == side:
                    rows[role]["clash_wins"] += 1
                elif winner == "tie":
                    rows[role]["clash_ties"] += 1
        for arg_id, delta in arena.get("adjustments", {}).items():
            role = role_of.get(arg_id)
            if role in rows:
                rows[role]["net_adjustment"] += delta["after"] - delta["before"]
    for row in rows.values():
        row["net_adjustment"] = round(row["net_adjustment"], 6)
    return [rows[role] for role in sorted(rows)]


def _card(
    graph: QbafGraph,
    strengths: StrengthMap,
    passages: Mapping[str, EvidencePassage],
    node_id: str,
) -> dict[str, Any]:
    if node_id == CLAIM_ID:
        raise ContestationError("the claim has no argument card; read the dashboard header")
    if not graph.has_node(node_id):
        raise UnknownNodeError(f"unknown node {node_id!r}")
    argument = graph.argument(node_id)
    sigma = strengths[node_id]
    supporters = sorted(
        e.source for e in graph.in_edges(node_id) if e.kind is RelationKind.SUPPORT
    )
    attackers = sorted(
        e.source for e in graph.in_edges(node_id) if e.kind is RelationKind.ATTACK
    )
    supports_claim = argument.stance is Stance.SUPPORT
    influence = (
        f"{'Supports' if supports_claim else 'Attacks'} the claim with propagated "
        f"strength {sigma:.3f}: it contributes {'+' if supports_claim else '-'}{sigma:.3f} "
        f"to the claim's incoming energy, so removing it would "
        f"{'lower' if supports_claim else 'raise'} the claim's strength."
    )
    evidence = []
    for ref in argument.evidence_refs:
        passage = passages.get(ref)
        evidence.append(
            {"passage_id": ref, "text": passage.text if passage else None}
        )
    return {
        "id": argument.id,
        "text": argument.text,
        "stance": argument.stance.value,
        "author_role": argument.author_role,
        "evidence": evidence,
        "scores": {"base_strength": argument.base_strength, "propagated_strength": sigma},
        "neighborhood": {"supporters": supporters, "attackers": attackers},
        "influence": influence,
    }


def argument_card(case: CaseRecord, node_id: str) -> dict[str, Any]:
    passages = {p.passage_id: p for p in case.task.context.passages}
    return _card(case.graph, case.strengths, passages, node_id)


def session_argument_card(session: ContestationSession, node_id: str) -> dict[str, Any]:
    with session.lock:
        if node_id in session.removed:
            raise StaleNodeError(f"argument {node_id!r} was rejected in this session")
        passages = {p.passage_id: p for p in session.case.task.context.passages}
        passages.update({p.passage_id: p for p in session.user_passages})
        return _card(session.graph(), session.strengths, passages, node_id)


def dashboard(case: CaseRecord) -> dict[str, Any]:
    """Everything the review surface needs for one case, in one document."""
    return {
        "case_id": case.case_id,
        "claim": case.task.claim,
        "claim_strength": case.strengths.claim_strength(),
        "decision": case.decision.to_doc(),
        "participation": participation_summary(case),
        "cards": [argument_card(case, a.id) for a in case.graph.arguments],
        "arguments_summary": arguments_summary(case.graph, case.strengths),
    }
