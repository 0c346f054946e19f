"""Legal agent pool, team selection, argument generation, rubric scoring.

Ten fixed role profiles grouped into four functional categories form the
pool. For each case a backend call picks the support team and the attack
team from the pool, each selected agent drafts up to five arguments, and a
separate scoring call grades every argument against a strict rubric that
penalizes generic reasoning.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Mapping

from claimcourt.backends import BackendRequest, TextModelBackend
from claimcourt.qbaf import Argument, Stance
from claimcourt.retrieval import CaseContext

logger = logging.getLogger(__name__)

ADJUDICATION = "Adjudication"
LITIGATION = "Litigation & Advocacy"
ADVISORY = "Advisory & Transactional"
RESEARCH = "Research & Support"

MAX_ARGUMENTS_PER_AGENT = 5
SCORE_FLOOR = 0.1
SCORE_CEILING = 1.0

# Graded bands with a deliberately harsh floor: generic prose lands low,
# only case-specific precision with authority reaches the top.
SCORING_RUBRIC = """\
Score the argument on this scale and return the number:
0.1-0.2: the legal analysis is wrong or misreads which elements matter.
0.3-0.4: partly right but generic, or missing a critical component.
0.5-0.6: sound reasoning with minor gaps or too little case-specific grounding.
0.7-0.8: strong reasoning tied to the specific facts and the correct rule.
0.9-1.0: exceptional precision, airtight logic, authoritative citations.
Penalize boilerplate; reward engagement with this record."""


class AgentError(RuntimeError):
    """An agent-layer call failed in a way the caller must handle."""


class SelectionError(AgentError):
    pass


class GenerationError(AgentError):
    pass


class ScoringError(AgentError):
    pass


@dataclass(frozen=True)
class AgentProfile:
    role: str
    category: str
    expertise_areas: tuple[str, ...]
    focus_priorities: tuple[str, ...]
    argument_style: str

    def __post_init__(self) -> None:
        if not self.expertise_areas:
            raise ValueError(f"profile {self.role!r} has no expertise areas")


@dataclass(frozen=True)
class AgentPool:
    profiles: tuple[AgentProfile, ...]

    def __post_init__(self) -> None:
        roles = [p.role for p in self.profiles]
        if len(roles) != len(set(roles)):
            raise ValueError("duplicate role in agent pool")

    def roles(self) -> tuple[str, ...]:
        return tuple(sorted(p.role for p in self.profiles))

    def get(self, role: str) -> AgentProfile:
        for p in self.profiles:
            if p.role == role:
                return p
        raise SelectionError(f"role {role!r} is not in the pool")

    def by_category(self) -> dict[str, tuple[str, ...]]:
        grouped: dict[str, list[str]] = {}
        for p in self.profiles:
            grouped.setdefault(p.category, []).append(p.role)
        return {cat: tuple(sorted(rs)) for cat, rs in grouped.items()}


def default_pool() -> AgentPool:
    """The ten standing roles, grouped by what they do for a case."""
    return AgentPool(
        profiles=(
            AgentProfile(
                role="Judge",
                category=ADJUDICATION,
                expertise_areas=("doctrinal synthesis", "standards of review", "remedies"),
                focus_priorities=("neutral application of the rule", "internal consistency"),
                argument_style="measured, rule-first, resolves tension between authorities",
            ),
            AgentProfile(
                role="Law Clerk / Judicial Clerk",
                category=ADJUDICATION,
                expertise_areas=("precedent research", "procedural posture", "record review"),
                focus_priorities=("controlling authority", "what the record actually shows"),
                argument_style="cite-heavy memorandum prose, flags open questions",
            ),
            AgentProfile(
                role="Private Practice Lawyer",
                category=LITIGATION,
                expertise_areas=("civil litigation", "contract disputes", "client advocacy"),
                focus_priorities=("strongest theory for the client", "practical exposure"),
                argument_style="persuasive and fact-forward, concedes nothing material",
            ),
            AgentProfile(
                role="Prosecutor",
                category=LITIGATION,
                expertise_areas=("criminal law", "evidence", "burdens of proof"),
                focus_priorities=("element-by-element proof", "admissibility"),
                argument_style="methodical element walkthroughs anchored to the record",
            ),
            AgentProfile(
                role="Public Defender",
                category=LITIGATION,
                expertise_areas=("criminal defense", "constitutional protections", "suppression"),
                focus_priorities=("reasonable doubt", "procedural fairness for the accused"),
                argument_style="pressure-tests every inference the other side needs",
            ),
            AgentProfile(
                role="Corporate Counsel",
                category=ADVISORY,
                expertise_areas=("corporate governance", "commercial contracts", "risk allocation"),
                focus_priorities=("enforceability", "downstream business consequences"),
                argument_style="transactional framing, reads terms against their purpose",
            ),
            AgentProfile(
                role="Compliance Officer",
                category=ADVISORY,
                expertise_areas=("regulatory regimes", "internal controls", "reporting duties"),
                focus_priorities=("regulatory exposure", "duty triggers and safe harbors"),
                argument_style="checklist-driven, maps conduct onto specific obligations",
            ),
            AgentProfile(
                role="IP Attorney",
                category=ADVISORY,
                expertise_areas=("intellectual property", "licensing", "trade secrets"),
                focus_priorities=("scope of protected rights", "infringement boundaries"),
                argument_style="claim-construction mindset, precise about scope language",
            ),
            AgentProfile(
                role="Legal Analyst",
                category=RESEARCH,
                expertise_areas=("case law synthesis", "statutory interpretation", "legal research"),
                focus_priorities=("fit between facts and doctrine", "counter-authority"),
                argument_style="balanced survey that names the strongest objection",
            ),
            AgentProfile(
                role="Paralegal",
                category=RESEARCH,
                expertise_areas=("record assembly", "citation verification", "filing practice"),
                focus_priorities=("factual accuracy", "documentary support"),
                argument_style="grounds every assertion in a specific exhibit or passage",
            ),
        )
    )


# Deterministic teams used when the selector returns nothing.
FALLBACK_TEAMS: Mapping[Stance, tuple[str, ...]] = {
    Stance.SUPPORT: ("Legal Analyst", "Private Practice Lawyer"),
    Stance.ATTACK: ("Legal Analyst", "Prosecutor"),
}


@dataclass(frozen=True)
class LegalTask:
    """One claim to argue, with its evidentiary context."""

    task_id: str
    claim: str
    context: CaseContext = CaseContext()
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.claim.strip():
            raise ValueError("task claim must be non-empty")

    def to_doc(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "claim": self.claim,
            "context": self.context.to_doc(),
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "LegalTask":
        return cls(
            task_id=doc["task_id"],
            claim=doc["claim"],
            context=CaseContext.from_doc(doc.get("context", {})),
            metadata=dict(doc.get("metadata", {})),
        )


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")


def select_team(
    pool: AgentPool,
    task: LegalTask,
    stance: Stance,
    backend: TextModelBackend,
) -> list[AgentProfile]:
    """Pick the agents who will argue one side of the claim.

    The backend chooses from the pool by matching expertise against the case;
    an empty choice falls back to a fixed per-stance team so a case can never
    strand without advocates.
    """
    if not pool.profiles:
        raise SelectionError("agent pool is empty")
    payload = {
        "task_id": task.task_id,
        "claim": task.claim,
        "stance": stance.value,
        "available_roles": list(pool.roles()),
        "profiles": {
            p.role: {"category": p.category, "expertise": list(p.expertise_areas)}
            for p in pool.profiles
        },
        "context_summary": task.context.summary()[:2000],
    }
    response = backend.complete(BackendRequest("select", payload, schema="team"))
    roles = response.fields.get("roles")
    if not isinstance(roles, list) or not all(isinstance(r, str) for r in roles):
        raise SelectionError(f"selector returned no usable role list: {response.fields!r}")

    unknown = sorted(set(roles) - set(pool.roles()))
    if unknown:
        raise SelectionError(f"selector returned unknown roles: {', '.join(unknown)}")
    if not roles:
        roles = list(FALLBACK_TEAMS[stance])
        logger.warning("selector returned no roles for %s; using fallback team %s", stance.value, roles)
    return [pool.get(role) for role in sorted(set(roles))]


def generate_arguments(
    agent: AgentProfile,
    task: LegalTask,
    stance: Stance,
    backend: TextModelBackend,
) -> list[Argument]:
    """Draft this agent's arguments for the requested side.

    Returns 1-5 unscored Arguments; more than five get truncated, none at
    all is a GenerationError the pipeline can absorb per agent.
    """
    payload = {
        "claim": task.claim,
        "stance": stance.value,
        "role": agent.role,
        "expertise": list(agent.expertise_areas),
        "priorities": list(agent.focus_priorities),
        "style": agent.argument_style,
        "passages": [{"id": p.passage_id, "text": p.text} for p in task.context.passages],
        "max_arguments": MAX_ARGUMENTS_PER_AGENT,
    }
    response = backend.complete(BackendRequest("generate", payload, schema="arguments"))
    raw_items = response.fields.get("arguments")
    if not isinstance(raw_items, list):
        raise GenerationError(
            f"{agent.role} produced no argument list for {stance.value}: {response.fields!r}"
        )

    known_ids = set(task.context.ids())
    drafted: list[Argument] = []
    for item in raw_items:
        if not isinstance(item, Mapping):
            continue
        text = str(item.get("text", "")).strip()
        if not text:
            continue
        evidence = tuple(
            ref for ref in item.get("evidence", ()) if isinstance(ref, str) and ref in known_ids
        )
        drafted.append(
            Argument(
                id=f"arg-{_slug(agent.role)}-{stance.value}-{len(drafted) + 1}",
                text=text,
                stance=stance,
                author_role=agent.role,
                evidence_refs=evidence,
                base_strength=None,
            )
        )
    if not drafted:
        raise GenerationError(f"{agent.role} produced zero usable arguments for {stance.value}")
    if len(drafted) > MAX_ARGUMENTS_PER_AGENT:
        logger.warning(
            "%s produced %d arguments; keeping the first %d",
            agent.role,
            len(drafted),
            MAX_ARGUMENTS_PER_AGENT,
        )
        drafted = drafted[:MAX_ARGUMENTS_PER_AGENT]
    return drafted


def score_argument(
    argument: Argument,
    task: LegalTask,
    backend: TextModelBackend,
) -> float:
    """Grade one argument against the rubric; result lies in [0.1, 1.0]."""
    if not argument.text.strip():
        raise ScoringError(f"argument {argument.id!r} has empty text")
    payload = {
        "claim": task.claim,
        "argument": argument.text,
        "stance": argument.stance.value,
        "author_role": argument.author_role,
        "rubric": SCORING_RUBRIC,
        "context_summary": task.context.summary()[:2000],
    }
    response = backend.complete(BackendRequest("score", payload, schema="rubric_score"))
    value = response.fields.get("score")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScoringError(f"non-numeric score for {argument.id!r}: {value!r}")
    score = float(value)
    if not SCORE_FLOOR <= score <= SCORE_CEILING:
        clamped = min(max(score, SCORE_FLOOR), SCORE_CEILING)
        logger.warning(
            "score %.3f for %s outside [%.1f, %.1f]; clamped to %.3f",
            score,
            argument.id,
            SCORE_FLOOR,
            SCORE_CEILING,
            clamped,
        )
        score = clamped
    return score
