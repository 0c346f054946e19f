"""Bipolar argumentation graphs and quadratic-energy strength propagation.

A graph couples one central claim node with argument nodes that support or
attack it. Every node carries a base strength in [0, 1]. Directed support and
attack edges feed a saturating quadratic energy model; the solver finds the
equilibrium strength of every node, again in [0, 1], by damped fixed-point
iteration.

Graphs and strength maps are immutable values: solving never mutates its
input and is safe to run concurrently on distinct graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

CLAIM_ID = "claim"
CLAIM_BASE_STRENGTH = 0.5

# Model-classified relations below this confidence must be demoted to neutral
# before an edge is ever constructed.
MODEL_CONFIDENCE_FLOOR = 0.6


class GraphError(ValueError):
    """Graph construction or lookup violated an invariant."""


class Stance(str, Enum):
    SUPPORT = "support"
    ATTACK = "attack"


class RelationKind(str, Enum):
    ATTACK = "attack"
    SUPPORT = "support"


class EdgeOrigin(str, Enum):
    HEURISTIC = "heuristic"
    MODEL = "model"
    HUMAN = "human"
    CONSTRUCTION = "construction"


def stance_kind(stance: Stance) -> RelationKind:
    """Edge kind an argument's stance induces toward the claim."""
    return RelationKind.SUPPORT if stance is Stance.SUPPORT else RelationKind.ATTACK


@dataclass(frozen=True)
class Argument:
    """A claim-directed argument node.

    ``base_strength`` is None until the argument has been scored; graph
    construction requires a scored argument.
    """

    id: str
    text: str
    stance: Stance
    author_role: str
    evidence_refs: tuple[str, ...] = ()
    base_strength: float | None = None

    def to_doc(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "text": self.text,
            "stance": self.stance.value,
            "author_role": self.author_role,
            "evidence_refs": list(self.evidence_refs),
            "base_strength": self.base_strength,
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "Argument":
        return cls(
            id=doc["id"],
            text=doc["text"],
            stance=Stance(doc["stance"]),
            author_role=doc["author_role"],
            evidence_refs=tuple(doc.get("evidence_refs", ())),
            base_strength=doc.get("base_strength"),
        )


@dataclass(frozen=True)
class Edge:
    """Directed support/attack edge between two nodes."""

    source: str
    target: str
    kind: RelationKind
    confidence: float = 1.0
    origin: EdgeOrigin = EdgeOrigin.HUMAN

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.source, self.target, self.kind.value)

    def to_doc(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "kind": self.kind.value,
            "confidence": self.confidence,
            "origin": self.origin.value,
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "Edge":
        return cls(
            source=doc["source"],
            target=doc["target"],
            kind=RelationKind(doc["kind"]),
            confidence=doc.get("confidence", 1.0),
            origin=EdgeOrigin(doc.get("origin", EdgeOrigin.HUMAN.value)),
        )


@dataclass(frozen=True)
class ClaimNode:
    """The distinguished claim node. Its id is reserved."""

    text: str
    id: str = CLAIM_ID
    base_strength: float = CLAIM_BASE_STRENGTH

    def to_doc(self) -> dict[str, Any]:
        return {"id": self.id, "text": self.text, "base_strength": self.base_strength}

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "ClaimNode":
        return cls(
            text=doc["text"],
            id=doc.get("id", CLAIM_ID),
            base_strength=doc.get("base_strength", CLAIM_BASE_STRENGTH),
        )


@dataclass(frozen=True)
class QbafGraph:
    """Immutable bipolar argumentation graph.

    Construct through :func:`build_graph`, which enforces the invariants;
    the raw constructor is lenient so that loaded documents can be checked
    with :func:`validate` instead of failing midway.
    """

    claim: ClaimNode
    arguments: tuple[Argument, ...] = ()
    edges: tuple[Edge, ...] = ()

    @cached_property
    def arguments_by_id(self) -> Mapping[str, Argument]:
        return {a.id: a for a in self.arguments}

    @cached_property
    def node_ids(self) -> frozenset[str]:
        return frozenset([self.claim.id, *(a.id for a in self.arguments)])

    @cached_property
    def incoming(self) -> Mapping[str, tuple[Edge, ...]]:
        by_target: dict[str, list[Edge]] = {nid: [] for nid in self.node_ids}
        for edge in self.edges:
            if edge.target in by_target:
                by_target[edge.target].append(edge)
        return {nid: tuple(edges) for nid, edges in by_target.items()}

    def has_node(self, node_id: str) -> bool:
        return node_id in self.node_ids

    def argument(self, node_id: str) -> Argument:
        try:
            return self.arguments_by_id[node_id]
        except KeyError:
            raise GraphError(f"unknown argument id: {node_id!r}") from None

    def in_edges(self, node_id: str) -> tuple[Edge, ...]:
        if node_id not in self.node_ids:
            raise GraphError(f"unknown node id: {node_id!r}")
        return self.incoming.get(node_id, ())

    def tau_of(self, node_id: str) -> float:
        if node_id == self.claim.id:
            return self.claim.base_strength
        arg = self.argument(node_id)
        if arg.base_strength is None:
            raise GraphError(f"argument {node_id!r} has no base strength")
        return arg.base_strength

    def to_doc(self) -> dict[str, Any]:
        return {
            "claim": self.claim.to_doc(),
            "arguments": [a.to_doc() for a in self.arguments],
            "edges": [e.to_doc() for e in self.edges],
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "QbafGraph":
        return cls(
            claim=ClaimNode.from_doc(doc["claim"]),
            arguments=tuple(Argument.from_doc(d) for d in doc.get("arguments", ())),
            edges=tuple(Edge.from_doc(d) for d in doc.get("edges", ())),
        )


@dataclass(frozen=True)
class StrengthMap:
    """Equilibrium strengths plus solver convergence metadata."""

    values: Mapping[str, float]
    iterations: int
    residual: float
    converged: bool

    def __getitem__(self, node_id: str) -> float:
        return self.values[node_id]

    def get(self, node_id: str, default: float | None = None) -> float | None:
        return self.values.get(node_id, default)

    def claim_strength(self) -> float:
        return self.values[CLAIM_ID]

    def to_doc(self) -> dict[str, Any]:
        return {
            "strengths": {nid: self.values[nid] for nid in sorted(self.values)},
            "iterations": self.iterations,
            "residual": self.residual,
            "converged": self.converged,
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "StrengthMap":
        return cls(
            values=dict(doc["strengths"]),
            iterations=doc["iterations"],
            residual=doc["residual"],
            converged=doc["converged"],
        )


@dataclass(frozen=True)
class SolverParams:
    """Damped fixed-point iteration parameters.

    Damping handles the two-cycles created by bidirectional relations;
    plain iteration can oscillate on them.
    """

    damping: float = 0.5
    tolerance: float = 1e-6
    max_iterations: int = 1000

    def __post_init__(self) -> None:
        if not 0.0 < self.damping <= 1.0:
            raise ValueError(f"damping must be in (0, 1], got {self.damping}")
        if self.tolerance <= 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")

    def to_doc(self) -> dict[str, Any]:
        return {
            "damping": self.damping,
            "tolerance": self.tolerance,
            "max_iterations": self.max_iterations,
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "SolverParams":
        return cls(
            damping=doc.get("damping", 0.5),
            tolerance=doc.get("tolerance", 1e-6),
            max_iterations=doc.get("max_iterations", 1000),
        )


@dataclass(frozen=True)
class Diagnostic:
    """One invariant violation found by :func:`validate`."""

    code: str
    subject: str
    message: str


def build_graph(
    claim_text: str,
    arguments: Sequence[Argument],
    relations: Iterable[Edge] = (),
) -> QbafGraph:
    """Assemble a validated graph from scored arguments and relations.

    The claim node is created with base strength 0.5. Each argument gets a
    construction edge to the claim matching its stance. Supplied relations
    must connect known nodes; re-adding an existing (source, target, kind)
    triple is idempotent.
    """
    if not claim_text:
        raise GraphError("claim text must be non-empty")

    seen: set[str] = set()
    for arg in arguments:
        if arg.id == CLAIM_ID:
            raise GraphError(f"argument id {CLAIM_ID!r} is reserved for the claim")
        if arg.id in seen:
            raise GraphError(f"duplicate argument id: {arg.id!r}")
        seen.add(arg.id)
        if not arg.text:
            raise GraphError(f"argument {arg.id!r} has empty text")
        if arg.base_strength is None:
            raise GraphError(f"argument {arg.id!r} has no base strength")
        if not 0.0 <= arg.base_strength <= 1.0:
            raise GraphError(
                f"argument {arg.id!r} base strength {arg.base_strength} outside [0, 1]"
            )

    claim = ClaimNode(text=claim_text)
    ordered_args = tuple(sorted(arguments, key=lambda a: a.id))
    by_id = {a.id: a for a in ordered_args}

    edges: dict[tuple[str, str, str], Edge] = {}
    for arg in ordered_args:
        edge = Edge(
            source=arg.id,
            target=CLAIM_ID,
            kind=stance_kind(arg.stance),
            confidence=1.0,
            origin=EdgeOrigin.CONSTRUCTION,
        )
        edges[edge.key] = edge

    for rel in relations:
        if rel.source == rel.target:
            raise GraphError(f"self relation on {rel.source!r}")
        if rel.source not in by_id:
            raise GraphError(f"relation source {rel.source!r} is not a known argument")
        if rel.target == CLAIM_ID:
            expected = stance_kind(by_id[rel.source].stance)
            if rel.kind is not expected:
                raise GraphError(
                    f"relation ({rel.source!r} -> claim) has kind {rel.kind.value!r} "
                    f"but the argument's stance requires {expected.value!r}"
                )
            continue  # construction edge already covers it
        if rel.target not in by_id:
            raise GraphError(f"relation target {rel.target!r} is not a known node")
        if not 0.0 <= rel.confidence <= 1.0:
            raise GraphError(f"relation confidence {rel.confidence} outside [0, 1]")
        if rel.origin is EdgeOrigin.MODEL and rel.confidence < MODEL_CONFIDENCE_FLOOR:
            raise GraphError(
                f"model relation confidence {rel.confidence} below "
                f"{MODEL_CONFIDENCE_FLOOR}; demote it instead of storing an edge"
            )
        edges.setdefault(rel.key, rel)

    ordered_edges = tuple(sorted(edges.values(), key=lambda e: e.key))
    return QbafGraph(claim=claim, arguments=ordered_args, edges=ordered_edges)


def energy(graph: QbafGraph, node_id: str, strengths: Mapping[str, float]) -> float:
    """Net incoming energy: supporter strengths minus attacker strengths."""
    total = 0.0
    for edge in graph.in_edges(node_id):
        sigma = strengths[edge.source]
        total += sigma if edge.kind is RelationKind.SUPPORT else -sigma
    return total


def impact(x: float) -> float:
    """Saturating quadratic impact of nonnegative energy; in [0, 1)."""
    clipped = max(x, 0.0)
    squared = clipped * clipped
    return squared / (1.0 + squared)


def local_equilibrium(tau: float, node_energy: float) -> float:
    """Equilibrium strength of one node given its base strength and energy.

    Positive energy pulls the strength up toward 1, negative energy pulls it
    down toward 0, each through the same saturating impact curve. At most one
    of the two impact terms is nonzero, so the result stays in [0, 1].
    """
    if not 0.0 <= tau <= 1.0:
        raise GraphError(f"base strength {tau} outside [0, 1]")
    return tau + (1.0 - tau) * impact(node_energy) - tau * impact(-node_energy)


def _impact_array(x: np.ndarray) -> np.ndarray:
    clipped = np.maximum(x, 0.0)
    squared = clipped * clipped
    return squared / (1.0 + squared)


def solve_equilibrium(graph: QbafGraph, params: SolverParams | None = None) -> StrengthMap:
    """Solve for equilibrium strengths by damped synchronous iteration.

    Starts from the base strengths, so nodes without incoming edges are at
    their fixed point immediately and keep their base strength exactly.
    Never raises on non-convergence: the last iterate is returned with
    ``converged=False`` and callers decide policy.
    """
    params = params or SolverParams()
    order = [graph.claim.id, *sorted(a.id for a in graph.arguments)]
    index = {nid: i for i, nid in enumerate(order)}
    tau = np.array([graph.tau_of(nid) for nid in order], dtype=float)

    n = len(order)
    support = np.zeros((n, n))
    attack = np.zeros((n, n))
    for edge in graph.edges:
        matrix = support if edge.kind is RelationKind.SUPPORT else attack
        matrix[index[edge.target], index[edge.source]] = 1.0

    sigma = tau.copy()
    iterations = 0
    residual = 0.0
    converged = False
    for step in range(params.max_iterations + 1):
        node_energy = support @ sigma - attack @ sigma
        target = (
            tau
            + (1.0 - tau) * _impact_array(node_energy)
            - tau * _impact_array(-node_energy)
        )
        residual = float(np.max(np.abs(target - sigma)))
        iterations = step
        if residual <= params.tolerance:
            converged = True
            break
        if step == params.max_iterations:
            break
        # sigma + damping * (target - sigma): exact no-op where target == sigma,
        # which keeps leaf strengths bit-identical to their base strengths.
        sigma = sigma + params.damping * (target - sigma)

    values = {
        nid: float(min(max(sigma[i], 0.0), 1.0)) for nid, i in index.items()
    }
    return StrengthMap(
        values=values, iterations=iterations, residual=residual, converged=converged
    )


def validate(graph: QbafGraph) -> list[Diagnostic]:
    """Report every invariant violation in the graph without mutating it."""
    diags: list[Diagnostic] = []
    seen: set[str] = set()
    for arg in graph.arguments:
        if arg.id in seen or arg.id == graph.claim.id:
            diags.append(Diagnostic("duplicate-id", arg.id, f"duplicate node id {arg.id!r}"))
        seen.add(arg.id)
        if not arg.text:
            diags.append(Diagnostic("empty-text", arg.id, f"argument {arg.id!r} has empty text"))
        if arg.base_strength is None:
            diags.append(
                Diagnostic("unset-strength", arg.id, f"argument {arg.id!r} has no base strength")
            )
        elif not 0.0 <= arg.base_strength <= 1.0:
            diags.append(
                Diagnostic(
                    "strength-range",
                    arg.id,
                    f"base strength {arg.base_strength} outside [0, 1]",
                )
            )
    if not 0.0 <= graph.claim.base_strength <= 1.0:
        diags.append(
            Diagnostic(
                "strength-range",
                graph.claim.id,
                f"claim base strength {graph.claim.base_strength} outside [0, 1]",
            )
        )

    nodes = graph.node_ids
    seen_edges: set[tuple[str, str, str]] = set()
    stance_edges: dict[str, RelationKind] = {}
    for edge in graph.edges:
        subject = f"{edge.source}->{edge.target}"
        if edge.source == edge.target:
            diags.append(Diagnostic("self-loop", subject, "edge connects a node to itself"))
        for endpoint in (edge.source, edge.target):
            if endpoint not in nodes:
                diags.append(
                    Diagnostic("dangling-edge", subject, f"endpoint {endpoint!r} is not a node")
                )
        if edge.key in seen_edges:
            diags.append(Diagnostic("duplicate-edge", subject, "duplicate (source, target, kind)"))
        seen_edges.add(edge.key)
        if not 0.0 <= edge.confidence <= 1.0:
            diags.append(
                Diagnostic("confidence-range", subject, f"confidence {edge.confidence} outside [0, 1]")
            )
        elif edge.origin is EdgeOrigin.MODEL and edge.confidence < MODEL_CONFIDENCE_FLOOR:
            diags.append(
                Diagnostic(
                    "confidence-floor",
                    subject,
                    f"model edge confidence {edge.confidence} below {MODEL_CONFIDENCE_FLOOR}",
                )
            )
        if edge.target == graph.claim.id and edge.source not in stance_edges:
            stance_edges[edge.source] = edge.kind

    for arg in graph.arguments:
        expected = stance_kind(arg.stance)
        actual = stance_edges.get(arg.id)
        if actual is not expected:
            diags.append(
                Diagnostic(
                    "stance-edge",
                    arg.id,
                    f"argument {arg.id!r} needs a {expected.value} edge to the claim",
                )
            )
    return diags
