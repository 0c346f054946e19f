/**
 * Wire types for the case service API (/api/v1).
 *
 * These mirror the server's JSON documents field for field. The client never
 * derives strengths or decisions from them; it only displays what arrived.
 */

export type Stance = "support" | "attack";
export type Answer = "yes" | "no";
export type DecidedBy = "threshold" | "final_judge" | "human_review";
export type RelationKind = "support" | "attack";

export type ContestationType =
  | "factual"
  | "legal_rule"
  | "precedent"
  | "missing_exception"
  | "procedural_fairness";

export type EditKind =
  | "accept_argument"
  | "reject_argument"
  | "edit_argument_text"
  | "add_argument"
  | "set_base_strength"
  | "set_relation";

export interface DecisionDoc {
  answer: Answer;
  claim_strength: number;
  escalated: boolean;
  decided_by: DecidedBy;
  judge_rationale: string | null;
}

export interface EvidenceDoc {
  passage_id: string;
  text: string;
}

export interface CardScoresDoc {
  base_strength: number;
  propagated_strength: number;
}

export interface CardNeighborhoodDoc {
  supporters: string[];
  attackers: string[];
}

export interface ArgumentCardDoc {
  id: string;
  text: string;
  stance: Stance;
  author_role: string;
  evidence: EvidenceDoc[];
  scores: CardScoresDoc;
  neighborhood: CardNeighborhoodDoc;
  influence: string;
}

export interface ParticipationRowDoc {
  role: string;
  arguments: number;
  supports: number;
  attacks: number;
  clashes: number;
  clash_wins: number;
  clash_ties: number;
  net_adjustment: number;
}

export interface DashboardDoc {
  case_id: string;
  claim: string;
  claim_strength: number;
  decision: DecisionDoc;
  participation: ParticipationRowDoc[];
  cards: ArgumentCardDoc[];
  arguments_summary: string;
}

export interface CaseCreatedDoc {
  case_id: string;
  claim_strength: number;
  decision: DecisionDoc;
}

export interface SessionStateDoc {
  session_id: string;
  case_id: string;
  claim_strength: number;
  decision: DecisionDoc;
  review_required: boolean;
  edits_applied: number;
  pending_proposals: string[];
  accepted: string[];
  removed: string[];
}

export interface ArgumentDoc {
  id: string;
  text: string;
  stance: Stance;
  author_role: string;
  evidence_refs: string[];
  base_strength: number | null;
}

/** Outgoing edit operation. Unused slots may be omitted; the server fills nulls. */
export interface EditDoc {
  kind: EditKind;
  actor: string;
  contestation_type: ContestationType;
  rationale?: string;
  node_id?: string | null;
  new_text?: string | null;
  argument?: ArgumentDoc | null;
  new_strength?: number | null;
  source?: string | null;
  target?: string | null;
  relation?: RelationKind | null;
  remove?: boolean;
}

/** Body accepted by the edit endpoints; the server fills timestamp. */
export interface EditRequestDoc {
  kind: EditKind;
  contestation_type: ContestationType;
  actor?: string;
  rationale?: string;
  node_id?: string;
  new_text?: string;
  argument?: ArgumentDoc;
  new_strength?: number;
  source?: string;
  target?: string;
  relation?: RelationKind;
  remove?: boolean;
}

export interface AuditEntryDoc {
  seq: number;
  actor: string;
  edit: EditDoc & { timestamp: string };
  sigma_phi_before: number;
  sigma_phi_after: number;
  decision_after: DecisionDoc | null;
  review_required: boolean;
}

export interface AuditLogDoc {
  entries: AuditEntryDoc[];
}

export interface EditAppliedDoc extends SessionStateDoc {
  audit_entry: AuditEntryDoc;
}

export interface PreviewDoc {
  preview: true;
  claim_strength: number;
  decision: DecisionDoc;
  review_required: boolean;
  sigma_phi_before: number;
  sigma_phi_after: number;
}

export interface ProposalDoc {
  proposal_id: string;
  edit: EditDoc;
  status: "pending" | "accepted" | "rejected";
}

export interface ProposalsDoc {
  proposals: ProposalDoc[];
}

export interface ContestRequestDoc {
  contestation_type: ContestationType;
  statement: string;
  materials?: string[];
}

export interface ApiErrorDoc {
  code: string;
  message: string;
}
