"""Final decision rule with uncertainty-aware escalation.

Outside the uncertainty band the answer is mechanical: yes when the claim's
propagated strength clears the threshold. Inside the band the strength is
too close to call, so the case escalates to a judge backend whose answer is
binding. A dead judge degrades back to the mechanical rule so every case
still gets a label.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from claimcourt.agents import LegalTask
from claimcourt.backends import BackendError, BackendRequest, TextModelBackend

logger = logging.getLogger(__name__)


class Answer(str, Enum):
    YES = "yes"
    NO = "no"


class DecidedBy(str, Enum):
    THRESHOLD = "threshold"
    FINAL_JUDGE = "final_judge"
    HUMAN_REVIEW = "human_review"


@dataclass(frozen=True)
class DecisionParams:
    threshold: float = 0.5
    band_low: float = 0.49
    band_high: float = 0.51
    uae_enabled: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must be in (0, 1), got {self.threshold}")
        if not 0.0 <= self.band_low <= self.band_high <= 1.0:
            raise ValueError(f"band [{self.band_low}, {self.band_high}] is not within [0, 1]")

    def in_band(self, strength: float) -> bool:
        return self.band_low <= strength <= self.band_high

    def to_doc(self) -> dict:
        return {
            "threshold": self.threshold,
            "band_low": self.band_low,
            "band_high": self.band_high,
            "uae_enabled": self.uae_enabled,
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "DecisionParams":
        return cls(
            threshold=doc.get("threshold", 0.5),
            band_low=doc.get("band_low", 0.49),
            band_high=doc.get("band_high", 0.51),
            uae_enabled=doc.get("uae_enabled", True),
        )


@dataclass(frozen=True)
class Decision:
    answer: Answer
    claim_strength: float
    escalated: bool
    decided_by: DecidedBy
    judge_rationale: str | None = None

    def __post_init__(self) -> None:
        if self.escalated != (self.decided_by is not DecidedBy.THRESHOLD):
            raise ValueError("escalated must mark exactly the non-threshold decisions")

    def to_doc(self) -> dict:
        return {
            "answer": self.answer.value,
            "claim_strength": self.claim_strength,
            "escalated": self.escalated,
            "decided_by": self.decided_by.value,
            "judge_rationale": self.judge_rationale,
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "Decision":
        return cls(
            answer=Answer(doc["answer"]),
            claim_strength=doc["claim_strength"],
            escalated=doc["escalated"],
            decided_by=DecidedBy(doc["decided_by"]),
            judge_rationale=doc.get("judge_rationale"),
        )


def threshold_answer(strength: float, threshold: float) -> Answer:
    return Answer.YES if strength >= threshold else Answer.NO


def decide(
    strength: float,
    params: DecisionParams,
    task: LegalTask,
    backend: TextModelBackend | None = None,
    arguments_summary: str = "",
) -> Decision:
    """Turn a propagated claim strength into a binding yes/no decision.

    The band check runs first: a borderline strength goes to the judge even
    when it already clears the threshold. ``arguments_summary`` gives the
    judge the case beyond the bare claim text.
    """
    if not 0.0 <= strength <= 1.0:
        raise ValueError(f"claim strength {strength} outside [0, 1]")

    if params.uae_enabled and params.in_band(strength) and backend is not None:
        payload = {
            "claim": task.claim,
            "strength": strength,
            "context_summary": task.context.summary()[:2000],
            "arguments_summary": arguments_summary,
            "question": (
                "The aggregate strength is too close to call. Analyze the case "
                "independently and issue a binding yes or no ruling on the claim."
            ),
        }
        request = BackendRequest("judge", payload, schema="ruling")
        try:
            fields = backend.complete(request).fields
            answer = Answer(str(fields["answer"]).lower())
            rationale = str(fields.get("rationale", ""))
            return Decision(
                answer=answer,
                claim_strength=strength,
                escalated=True,
                decided_by=DecidedBy.FINAL_JUDGE,
                judge_rationale=rationale,
            )
        except (BackendError, KeyError, ValueError, TypeError) as exc:
            logger.warning("final judge unusable, falling back to threshold rule: %s", exc)

    return Decision(
        answer=threshold_answer(strength, params.threshold),
        claim_strength=strength,
        escalated=False,
        decided_by=DecidedBy.THRESHOLD,
    )
