/**
 * Contestation wizard: a small state machine that walks a reviewer from
 * "something is wrong here" to a structured contest request. Pure state
 * transitions; rendering and event wiring live elsewhere.
 */

import type { ContestRequestDoc, ContestationType, ProposalDoc } from "./types.js";

export interface WizardPrompt {
  id: string;
  question: string;
}

export interface WizardTypeInfo {
  type: ContestationType;
  label: string;
  prompts: WizardPrompt[];
}

export const CONTESTATION_TYPES: WizardTypeInfo[] = [
  {
    type: "factual",
    label: "A factual claim is wrong",
    prompts: [
      { id: "which-fact", question: "Which stated fact is wrong?" },
      { id: "correct-fact", question: "What is actually the case?" },
    ],
  },
  {
    type: "legal_rule",
    label: "The wrong rule was applied",
    prompts: [
      { id: "rule-cited", question: "Which rule was applied incorrectly?" },
      { id: "rule-correct", question: "What should govern instead?" },
    ],
  },
  {
    type: "precedent",
    label: "A precedent was missed or misread",
    prompts: [
      { id: "case-name", question: "Which decision is on point?" },
      { id: "holding", question: "What does it hold that matters here?" },
    ],
  },
  {
    type: "missing_exception",
    label: "An exception applies",
    prompts: [
      { id: "exception", question: "Which exception was overlooked?" },
      { id: "trigger", question: "What facts trigger it?" },
    ],
  },
  {
    type: "procedural_fairness",
    label: "The process was unfair",
    prompts: [
      { id: "defect", question: "What procedural step was defective?" },
      { id: "impact", question: "How did it affect the outcome?" },
    ],
  },
];

export interface WizardState {
  selectedType: ContestationType | null;
  statement: string;
  answers: Record<string, string>;
  materials: string[];
  proposals: ProposalDoc[];
}

export function initialWizardState(): WizardState {
  return {
    selectedType: null,
    statement: "",
    answers: {},
    materials: [],
    proposals: [],
  };
}

export function promptsFor(type: ContestationType): WizardPrompt[] {
  const info = CONTESTATION_TYPES.find((t) => t.type === type);
  return info ? info.prompts : [];
}

/** Switching type discards answers written for the previous type's prompts. */
export function selectType(state: WizardState, type: ContestationType): WizardState {
  if (state.selectedType === type) return state;
  return { ...state, selectedType: type, answers: {} };
}

export function setStatement(state: WizardState, statement: string): WizardState {
  return { ...state, statement };
}

export function answerPrompt(state: WizardState, promptId: string, answer: string): WizardState {
  return { ...state, answers: { ...state.answers, [promptId]: answer } };
}

export function attachMaterial(state: WizardState, text: string): WizardState {
  const trimmed = text.trim();
  if (!trimmed) return state;
  return { ...state, materials: [...state.materials, trimmed] };
}

export function removeMaterial(state: WizardState, index: number): WizardState {
  if (index < 0 || index >= state.materials.length) return state;
  return { ...state, materials: state.materials.filter((_, i) => i !== index) };
}

export function canSubmit(state: WizardState): boolean {
  return state.selectedType !== null && state.statement.trim().length > 0;
}

/**
 * Fold the guided answers into the free-text statement so the engine sees a
 * single coherent objection, and pass supporting materials through untouched.
 */
export function buildContestRequest(state: WizardState): ContestRequestDoc {
  if (!canSubmit(state) || state.selectedType === null) {
    throw new Error("wizard is not ready to submit");
  }
  const parts = [state.statement.trim()];
  for (const prompt of promptsFor(state.selectedType)) {
    const answer = state.answers[prompt.id]?.trim();
    if (answer) parts.push(`${prompt.question} ${answer}`);
  }
  const request: ContestRequestDoc = {
    contestation_type: state.selectedType,
    statement: parts.join(" "),
  };
  if (state.materials.length > 0) {
    request.materials = [...state.materials];
  }
  return request;
}

export function withProposals(state: WizardState, proposals: ProposalDoc[]): WizardState {
  return { ...state, proposals: [...proposals] };
}

export function withoutProposal(state: WizardState, proposalId: string): WizardState {
  return {
    ...state,
    proposals: state.proposals.filter((p) => p.proposal_id !== proposalId),
  };
}
