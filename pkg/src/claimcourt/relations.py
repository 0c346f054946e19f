"""Inter-argument relation identification, heuristic or model-classified.

Heuristic mode wires same-stance arguments as mutual supporters and
opposite-stance arguments as mutual attackers. Model mode asks a backend to
classify each unordered pair as attack, support, or neutral with a
confidence; low-confidence verdicts are demoted to neutral and surviving
relations become edges in both directions. Pairs go to the backend in
batches to bound call count.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from claimcourt.backends import BackendError, BackendRequest, TextModelBackend
from claimcourt.qbaf import Argument, Edge, EdgeOrigin, RelationKind, Stance

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 10
DEFAULT_CONFIDENCE_THRESHOLD = 0.6


class VerdictLabel(str, Enum):
    ATTACK = "attack"
    SUPPORT = "support"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class RelationVerdict:
    """Classification of one unordered argument pair, ids in canonical order."""

    first: str
    second: str
    label: VerdictLabel
    confidence: float

    def __post_init__(self) -> None:
        if self.first >= self.second:
            raise ValueError(f"pair ({self.first!r}, {self.second!r}) not in canonical order")

    def to_doc(self) -> dict:
        return {
            "pair": [self.first, self.second],
            "label": self.label.value,
            "confidence": self.confidence,
        }


@dataclass(frozen=True)
class BatchPlan:
    batches: tuple[tuple[tuple[int, int], ...], ...]
    batch_size: int

    @property
    def pair_count(self) -> int:
        return sum(len(b) for b in self.batches)


def canonical_pairs(ids: Sequence[str]) -> list[tuple[str, str]]:
    """All unordered pairs with members sorted, pairs in lexicographic order."""
    ordered = sorted(ids)
    return [(ordered[i], ordered[j]) for i in range(len(ordered)) for j in range(i + 1, len(ordered))]


def heuristic_relations(arguments: Sequence[Argument]) -> list[Edge]:
    """Stance-parity wiring: same stance supports, opposite stance attacks."""
    by_id = {a.id: a for a in arguments}
    edges: list[Edge] = []
    for first, second in canonical_pairs(list(by_id)):
        same = by_id[first].stance is by_id[second].stance
        kind = RelationKind.SUPPORT if same else RelationKind.ATTACK
        for src, dst in ((first, second), (second, first)):
            edges.append(
                Edge(source=src, target=dst, kind=kind, confidence=1.0, origin=EdgeOrigin.HEURISTIC)
            )
    return edges


def plan_batches(n_arguments: int, batch_size: int = DEFAULT_BATCH_SIZE) -> BatchPlan:
    """Split the C(n, 2) index pairs into ceil(C(n,2)/b) batches of size b."""
    if n_arguments < 0:
        raise ValueError(f"argument count must be non-negative, got {n_arguments}")
    if batch_size < 1:
        raise ValueError(f"batch size must be at least 1, got {batch_size}")
    pairs = [(i, j) for i in range(n_arguments) for j in range(i + 1, n_arguments)]
    batches = tuple(
        tuple(pairs[start : start + batch_size]) for start in range(0, len(pairs), batch_size)
    )
    return BatchPlan(batches=batches, batch_size=batch_size)


@dataclass(frozen=True)
class RelationRun:
    """Everything one model-mode run produced, for edges and for the trace."""

    verdicts: tuple[RelationVerdict, ...]
    demoted: tuple[RelationVerdict, ...]  # raw sub-threshold verdicts, pre-demotion
    failed_pairs: tuple[tuple[str, str], ...]
    edges: tuple[Edge, ...]
    backend_calls: int

    def to_trace(self) -> dict:
        return {
            "pairs": len(self.verdicts),
            "verdicts": [v.to_doc() for v in self.verdicts],
            "demoted": [v.to_doc() for v in self.demoted],
            "failed_pairs": [list(p) for p in self.failed_pairs],
            "edges": len(self.edges),
            "backend_calls": self.backend_calls,
        }


def _parse_batch(
    fields: dict, expected: Sequence[tuple[str, str]]
) -> dict[tuple[str, str], tuple[VerdictLabel, float]]:
    verdicts = fields.get("verdicts")
    if not isinstance(verdicts, list):
        raise BackendError(f"relation response lacks a verdict list: {fields!r}")
    parsed: dict[tuple[str, str], tuple[VerdictLabel, float]] = {}
    for item in verdicts:
        try:
            a, b = item["pair"]
            key = (a, b) if a < b else (b, a)
            label = VerdictLabel(str(item["label"]).lower())
            confidence = float(item["confidence"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BackendError(f"malformed verdict {item!r}: {exc}") from exc
        if not 0.0 <= confidence <= 1.0:
            raise BackendError(f"verdict confidence {confidence} outside [0, 1]")
        parsed[key] = (label, confidence)
    missing = [p for p in expected if p not in parsed]
    if missing:
        raise BackendError(f"verdicts missing for pairs: {missing}")
    return parsed


def run_model_relations(
    arguments: Sequence[Argument],
    backend: TextModelBackend,
    batch_size: int = DEFAULT_BATCH_SIZE,
    conf_threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
) -> RelationRun:
    """Classify every pair through the backend; full report for the trace.

    A batch whose response cannot be parsed is retried once; if the retry
    also fails, its pairs default to neutral (no edge) rather than falling
    back to stance heuristics.
    """
    by_id = {a.id: a for a in arguments}
    ordered_ids = sorted(by_id)
    plan = plan_batches(len(ordered_ids), batch_size)

    verdicts: list[RelationVerdict] = []
    demoted: list[RelationVerdict] = []
    failed: list[tuple[str, str]] = []
    calls = 0

    for batch in plan.batches:
        pairs = [(ordered_ids[i], ordered_ids[j]) for i, j in batch]
        payload = {
            "labels": [label.value for label in VerdictLabel],
            "pairs": [
                {
                    "a": {"id": a, "text": by_id[a].text, "stance": by_id[a].stance.value},
                    "b": {"id": b, "text": by_id[b].text, "stance": by_id[b].stance.value},
                }
                for a, b in pairs
            ],
        }
        request = BackendRequest("relate", payload, schema="relation_verdicts")
        parsed = None
        for attempt in (1, 2):
            calls += 1
            try:
                parsed = _parse_batch(backend.complete(request).fields, pairs)
                break
            except BackendError as exc:
                if attempt == 1:
                    logger.warning("relation batch unparseable, retrying once: %s", exc)
                else:
                    logger.warning("relation batch failed twice; pairs default to neutral: %s", exc)

        for a, b in pairs:
            if parsed is None:
                failed.append((a, b))
                verdicts.append(RelationVerdict(a, b, VerdictLabel.NEUTRAL, 0.0))
                continue
            label, confidence = parsed[(a, b)]
            if label is not VerdictLabel.NEUTRAL and confidence < conf_threshold:
                demoted.append(RelationVerdict(a, b, label, confidence))
                label = VerdictLabel.NEUTRAL
            verdicts.append(RelationVerdict(a, b, label, confidence))

    edges: list[Edge] = []
    for verdict in verdicts:
        if verdict.label is VerdictLabel.NEUTRAL:
            continue
        kind = RelationKind(verdict.label.value)
        for src, dst in ((verdict.first, verdict.second), (verdict.second, verdict.first)):
            edges.append(
                Edge(
                    source=src,
                    target=dst,
                    kind=kind,
                    confidence=verdict.confidence,
                    origin=EdgeOrigin.MODEL,
                )
            )
    return RelationRun(
        verdicts=tuple(verdicts),
        demoted=tuple(demoted),
        failed_pairs=tuple(failed),
        edges=tuple(edges),
        backend_calls=calls,
    )


def model_relations(
    arguments: Sequence[Argument],
    backend: TextModelBackend,
    batch_size: int = DEFAULT_BATCH_SIZE,
    conf_threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
) -> list[Edge]:
    """Edge list of a model-mode run; see run_model_relations for the report."""
    return list(run_model_relations(arguments, backend, batch_size, conf_threshold).edges)


def expected_call_count(n_arguments: int, batch_size: int = DEFAULT_BATCH_SIZE) -> int:
    """Backend calls one run needs when nothing is retried."""
    n_pairs = math.comb(n_arguments, 2)
    return math.ceil(n_pairs / batch_size)
