/**
 * Shapes API documents into render-ready view models.
 *
 * Nothing here computes argument strengths, deltas, or decisions: every
 * number and verdict is copied from a server response. The only arithmetic
 * is visual encoding (node radii, label truncation), which never feeds back
 * into a displayed value.
 */

import type {
  ArgumentCardDoc,
  DashboardDoc,
  DecisionDoc,
  ParticipationRowDoc,
  SessionStateDoc,
  Stance,
} from "./types.js";

export interface CaseHeaderView {
  caseId: string;
  claim: string;
  claimStrength: string;
  answer: string;
  decidedBy: string;
  escalated: boolean;
  judgeRationale: string | null;
  reviewRequired: boolean;
  editsApplied: number;
}

export interface GraphNodeView {
  id: string;
  label: string;
  kind: Stance | "claim";
  radius: number;
  strength: string;
}

export interface GraphEdgeView {
  source: string;
  target: string;
  kind: Stance;
  color: string;
}

export interface GraphView {
  nodes: GraphNodeView[];
  edges: GraphEdgeView[];
}

export interface DashboardViewModel {
  header: CaseHeaderView;
  participation: ParticipationRowDoc[];
  cards: ArgumentCardDoc[];
  graph: GraphView;
  argumentsSummary: string;
}

export const EDGE_COLORS: Record<Stance, string> = {
  support: "#2e7d32",
  attack: "#c62828",
};

/** Display formatting for a server-provided strength. */
export function formatStrength(value: number): string {
  return value.toFixed(4);
}

/** Presentation-only size encoding: stronger nodes draw bigger. */
export function nodeRadius(strength: number): number {
  const clamped = Math.min(1, Math.max(0, strength));
  return 8 + Math.round(22 * clamped);
}

export function describeDecision(decision: DecisionDoc): string {
  const route = decision.escalated ? "final judge" : "threshold rule";
  return `${decision.answer} (via ${route})`;
}

function truncate(text: string, limit: number): string {
  return text.length <= limit ? text : `${text.slice(0, limit - 1)}…`;
}

export function toGraphView(doc: DashboardDoc): GraphView {
  const nodes: GraphNodeView[] = [
    {
      id: "claim",
      label: truncate(doc.claim, 48),
      kind: "claim",
      radius: nodeRadius(doc.claim_strength),
      strength: formatStrength(doc.claim_strength),
    },
  ];
  const edges: GraphEdgeView[] = [];
  const known = new Set(["claim", ...doc.cards.map((c) => c.id)]);
  const seen = new Set<string>();

  const addEdge = (source: string, target: string, kind: Stance) => {
    const key = `${source}->${target}:${kind}`;
    if (seen.has(key) || !known.has(source) || !known.has(target)) return;
    seen.add(key);
    edges.push({ source, target, kind, color: EDGE_COLORS[kind] });
  };

  for (const card of doc.cards) {
    nodes.push({
      id: card.id,
      label: truncate(card.text, 48),
      kind: card.stance,
      radius: nodeRadius(card.scores.propagated_strength),
      strength: formatStrength(card.scores.propagated_strength),
    });
    addEdge(card.id, "claim", card.stance);
    for (const supporter of card.neighborhood.supporters) {
      addEdge(supporter, card.id, "support");
    }
    for (const attacker of card.neighborhood.attackers) {
      addEdge(attacker, card.id, "attack");
    }
  }
  return { nodes, edges };
}

/**
 * Session state, when present, wins over the stored case values: the header
 * must always show the latest recompute the server performed.
 */
export function toDashboardViewModel(
  doc: DashboardDoc,
  session?: SessionStateDoc | null,
): DashboardViewModel {
  const strength = session ? session.claim_strength : doc.claim_strength;
  const decision = session ? session.decision : doc.decision;
  return {
    header: {
      caseId: doc.case_id,
      claim: doc.claim,
      claimStrength: formatStrength(strength),
      answer: decision.answer,
      decidedBy: decision.decided_by,
      escalated: decision.escalated,
      judgeRationale: decision.judge_rationale,
      reviewRequired: session?.review_required ?? false,
      editsApplied: session?.edits_applied ?? 0,
    },
    participation: doc.participation,
    cards: doc.cards,
    graph: toGraphView(doc),
    argumentsSummary: doc.arguments_summary,
  };
}
