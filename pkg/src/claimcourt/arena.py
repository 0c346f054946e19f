"""Clash detection and arena adjudication for near-tied opposing arguments.

When a supporter and an attacker land within a small score gap, the rubric
alone cannot separate them. Each such clash goes to an adjudicator backend
head-to-head; every participant's base strength is then adjusted once from
its aggregate win rate, nudging genuinely stronger arguments apart before
graph propagation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping, Sequence

from claimcourt.agents import SCORE_CEILING, SCORE_FLOOR, LegalTask
from claimcourt.backends import BackendError, BackendRequest, TextModelBackend
from claimcourt.qbaf import Argument, Stance

logger = logging.getLogger(__name__)


class ArenaError(RuntimeError):
    pass


class ClashWinner(str, Enum):
    SUPPORTER = "supporter"
    ATTACKER = "attacker"
    TIE = "tie"


@dataclass(frozen=True)
class ArenaParams:
    clash_gap: float = 0.2  # two opposing scores closer than this clash
    adjustment: float = 0.15  # full-win strength delta

    def __post_init__(self) -> None:
        if self.clash_gap <= 0:
            raise ValueError(f"clash gap must be positive, got {self.clash_gap}")
        if self.adjustment < 0:
            raise ValueError(f"adjustment must be non-negative, got {self.adjustment}")

    def to_doc(self) -> dict:
        return {"clash_gap": self.clash_gap, "adjustment": self.adjustment}

    @classmethod
    def from_doc(cls, doc: Mapping) -> "ArenaParams":
        return cls(
            clash_gap=doc.get("clash_gap", 0.2),
            adjustment=doc.get("adjustment", 0.15),
        )


@dataclass(frozen=True)
class Clash:
    supporter: Argument
    attacker: Argument
    score_gap: float

    def __post_init__(self) -> None:
        if self.supporter.stance is not Stance.SUPPORT:
            raise ArenaError(f"{self.supporter.id!r} is not a supporter")
        if self.attacker.stance is not Stance.ATTACK:
            raise ArenaError(f"{self.attacker.id!r} is not an attacker")

    def participants(self) -> tuple[str, str]:
        return (self.supporter.id, self.attacker.id)

    def to_doc(self) -> dict:
        return {
            "supporter": self.supporter.id,
            "attacker": self.attacker.id,
            "score_gap": self.score_gap,
        }


@dataclass(frozen=True)
class ClashOutcome:
    clash: Clash
    winner: ClashWinner
    rationale: str = ""

    def to_doc(self) -> dict:
        return {**self.clash.to_doc(), "winner": self.winner.value, "rationale": self.rationale}


def detect_clashes(arguments: Sequence[Argument], clash_gap: float) -> list[Clash]:
    """Every supporter-attacker pair whose base scores sit within the gap."""
    if clash_gap <= 0:
        raise ArenaError(f"clash gap must be positive, got {clash_gap}")
    for a in arguments:
        if a.base_strength is None:
            raise ArenaError(f"argument {a.id!r} is unscored")
    supporters = sorted((a for a in arguments if a.stance is Stance.SUPPORT), key=lambda a: a.id)
    attackers = sorted((a for a in arguments if a.stance is Stance.ATTACK), key=lambda a: a.id)
    clashes = []
    for s in supporters:
        for a in attackers:
            gap = abs(s.base_strength - a.base_strength)
            if gap < clash_gap:
                clashes.append(Clash(supporter=s, attacker=a, score_gap=gap))
    return clashes


def adjudicate(clash: Clash, task: LegalTask, backend: TextModelBackend) -> ClashOutcome:
    """Put one clash to the adjudicator; unusable verdicts degrade to a tie."""
    payload = {
        "claim": task.claim,
        "context_summary": task.context.summary()[:2000],
        "question": (
            "Which argument is stronger on this record, judged by case-specific "
            "facts and the governing legal standards?"
        ),
        "supporter": {"id": clash.supporter.id, "text": clash.supporter.text},
        "attacker": {"id": clash.attacker.id, "text": clash.attacker.text},
    }
    request = BackendRequest("adjudicate", payload, schema="clash_verdict")
    try:
        fields = backend.complete(request).fields
        winner = ClashWinner(str(fields["winner"]).lower())
        rationale = str(fields.get("rationale", ""))
    except (BackendError, KeyError, ValueError, TypeError) as exc:
        logger.warning(
            "adjudication of (%s vs %s) unusable, recording a tie: %s",
            clash.supporter.id,
            clash.attacker.id,
            exc,
        )
        return ClashOutcome(clash=clash, winner=ClashWinner.TIE, rationale="adjudicator failure")
    return ClashOutcome(clash=clash, winner=winner, rationale=rationale)


def win_rate(argument_id: str, outcomes: Sequence[ClashOutcome]) -> float:
    """Share of the argument's clashes it won, ties counting half."""
    wins = 0.0
    participations = 0
    for outcome in outcomes:
        if argument_id not in outcome.clash.participants():
            continue
        participations += 1
        if outcome.winner is ClashWinner.TIE:
            wins += 0.5
        elif outcome.winner is ClashWinner.SUPPORTER and argument_id == outcome.clash.supporter.id:
            wins += 1.0
        elif outcome.winner is ClashWinner.ATTACKER and argument_id == outcome.clash.attacker.id:
            wins += 1.0
    if participations == 0:
        raise ArenaError(f"argument {argument_id!r} participated in no clashes")
    return wins / participations


def adjust_strength(tau: float, rate: float, adjustment: float) -> float:
    """Shift a base strength by the win-rate signal, clamped to rubric bounds.

    A perfect record adds the full adjustment, a winless one subtracts it,
    and an even record leaves the strength untouched.
    """
    shifted = tau + adjustment * (2.0 * rate - 1.0)
    return min(max(shifted, SCORE_FLOOR), SCORE_CEILING)


@dataclass(frozen=True)
class ArenaResult:
    arguments: tuple[Argument, ...]
    clashes: tuple[Clash, ...]
    outcomes: tuple[ClashOutcome, ...]
    adjustments: Mapping[str, tuple[float, float]]  # id -> (before, after)

    def to_trace(self) -> dict:
        return {
            "clashes": len(self.clashes),
            "outcomes": [o.to_doc() for o in self.outcomes],
            "adjustments": {
                aid: {"before": before, "after": after}
                for aid, (before, after) in sorted(self.adjustments.items())
            },
        }


def run_arena(
    arguments: Sequence[Argument],
    task: LegalTask,
    params: ArenaParams,
    backend: TextModelBackend,
) -> ArenaResult:
    """One full arena round: detect, adjudicate, adjust each participant once.

    Non-participants pass through untouched: byte-identical objects, so an
    empty round is a strict no-op.
    """
    clashes = detect_clashes(arguments, params.clash_gap)
    outcomes = tuple(adjudicate(clash, task, backend) for clash in clashes)

    participants = {aid for o in outcomes for aid in o.clash.participants()}
    adjustments: dict[str, tuple[float, float]] = {}
    adjusted: list[Argument] = []
    for argument in arguments:
        if argument.id not in participants:
            adjusted.append(argument)
            continue
        rate = win_rate(argument.id, outcomes)
        new_tau = adjust_strength(argument.base_strength, rate, params.adjustment)
        adjustments[argument.id] = (argument.base_strength, new_tau)
        adjusted.append(replace(argument, base_strength=new_tau))
    return ArenaResult(
        arguments=tuple(adjusted),
        clashes=tuple(clashes),
        outcomes=outcomes,
        adjustments=adjustments,
    )


def apply_clash_resolution(
    arguments: Sequence[Argument],
    task: LegalTask,
    params: ArenaParams,
    backend: TextModelBackend,
) -> list[Argument]:
    return list(run_arena(arguments, task, params, backend).arguments)
