/** Hand-built server documents for renderer and client tests. */

import type {
  ArgumentCardDoc,
  AuditEntryDoc,
  DashboardDoc,
  DecisionDoc,
  SessionStateDoc,
} from "../src/types.js";

export const decisionYes: DecisionDoc = {
  answer: "yes",
  claim_strength: 0.8231,
  escalated: false,
  decided_by: "threshold",
  judge_rationale: null,
};

export const decisionNo: DecisionDoc = {
  answer: "no",
  claim_strength: 0.1904,
  escalated: false,
  decided_by: "threshold",
  judge_rationale: null,
};

export const decisionEscalated: DecisionDoc = {
  answer: "no",
  claim_strength: 0.5012,
  escalated: true,
  decided_by: "final_judge",
  judge_rationale: "The tenancy exception is dispositive on these facts.",
};

export const supportCard: ArgumentCardDoc = {
  id: "a-sup-1",
  text: "Clause 9 requires 24 hours written notice before entry.",
  stance: "support",
  author_role: "advocate",
  evidence: [
    { passage_id: "lease:0", text: "Landlord shall give 24 hours notice." },
    { passage_id: "incident:1", text: "No notice was posted or delivered." },
  ],
  scores: { base_strength: 0.72, propagated_strength: 0.8105 },
  neighborhood: { supporters: ["a-sup-2"], attackers: ["a-att-1"] },
  influence: "Strongest direct support; removing it drops the claim below the bar.",
};

export const attackCard: ArgumentCardDoc = {
  id: "a-att-1",
  text: "Entry was for emergency repair, which the lease exempts from notice.",
  stance: "attack",
  author_role: "skeptic",
  evidence: [],
  scores: { base_strength: 0.55, propagated_strength: 0.4312 },
  neighborhood: { supporters: [], attackers: [] },
  influence: "Main counterweight; its removal would flip the outcome.",
};

export const dashboardDoc: DashboardDoc = {
  case_id: "case-f00d",
  claim: "The landlord's entry without notice breached the lease.",
  claim_strength: 0.654321,
  decision: { ...decisionYes, claim_strength: 0.654321 },
  participation: [
    {
      role: "advocate",
      arguments: 2,
      supports: 2,
      attacks: 0,
      clashes: 1,
      clash_wins: 1,
      clash_ties: 0,
      net_adjustment: 0.15,
    },
    {
      role: "skeptic",
      arguments: 1,
      supports: 0,
      attacks: 1,
      clashes: 1,
      clash_wins: 0,
      clash_ties: 0,
      net_adjustment: -0.15,
    },
  ],
  cards: [supportCard, attackCard],
  arguments_summary: "2 supporting, 1 attacking",
};

export const sessionDoc: SessionStateDoc = {
  session_id: "sess-0123abcd",
  case_id: "case-f00d",
  claim_strength: 0.7421,
  decision: { ...decisionYes, claim_strength: 0.7421 },
  review_required: true,
  edits_applied: 2,
  pending_proposals: [],
  accepted: ["a-sup-1"],
  removed: ["a-att-1"],
};

export const auditEntries: AuditEntryDoc[] = [
  {
    seq: 1,
    actor: "reviewer",
    edit: {
      kind: "reject_argument",
      actor: "reviewer",
      contestation_type: "factual",
      rationale: "The repair was scheduled, not an emergency.",
      timestamp: "2026-08-18T10:00:00Z",
      node_id: "a-att-1",
      new_text: null,
      argument: null,
      new_strength: null,
      source: null,
      target: null,
      relation: null,
      remove: false,
    },
    sigma_phi_before: 0.4467,
    sigma_phi_after: 0.8335,
    decision_after: { ...decisionYes, claim_strength: 0.8335 },
    review_required: true,
  },
  {
    seq: 2,
    actor: "reviewer",
    edit: {
      kind: "set_base_strength",
      actor: "reviewer",
      contestation_type: "legal_rule",
      rationale: "",
      timestamp: "2026-08-18T10:05:00Z",
      node_id: "a-sup-1",
      new_text: null,
      argument: null,
      new_strength: 1.0,
      source: null,
      target: null,
      relation: null,
      remove: false,
    },
    sigma_phi_before: 0.8335,
    sigma_phi_after: 0.9538,
    decision_after: null,
    review_required: false,
  },
];
