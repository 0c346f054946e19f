/**
 * Browser entry point. Holds UI state, delegates events, and re-renders from
 * the pure builders in render.ts. Every number on screen comes from a server
 * response; this module never computes a strength, a delta, or a decision.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  escapeHtml,
  renderApiError,
  renderAuditTimeline,
  renderCard,
  renderDecisionBanner,
  renderDelta,
  renderGraph,
  renderHeader,
  renderParticipation,
} from "./render.js";
import type {
  AuditEntryDoc,
  DashboardDoc,
  DecisionDoc,
  PreviewDoc,
  SessionStateDoc,
} from "./types.js";
import { toDashboardViewModel } from "./viewmodel.js";
import {
  CONTESTATION_TYPES,
  answerPrompt,
  attachMaterial,
  buildContestRequest,
  canSubmit,
  initialWizardState,
  promptsFor,
  removeMaterial,
  selectType,
  setStatement,
  withProposals,
  withoutProposal,
  type WizardState,
} from "./wizard.js";

interface AppState {
  caseId: string | null;
  dashboard: DashboardDoc | null;
  session: SessionStateDoc | null;
  audit: AuditEntryDoc[];
  expandedCardId: string | null;
  bannerHtml: string;
  previewHtml: string;
  errorHtml: string;
  busy: boolean;
  wizard: WizardState;
  wizardOpen: boolean;
}

function renderPreviewPanel(preview: PreviewDoc): string {
  return (
    `<div class="preview-panel">Preview (not applied): ` +
    renderDelta(preview.sigma_phi_before, preview.sigma_phi_after) +
    ` would decide <strong>${escapeHtml(preview.decision.answer)}</strong>` +
    (preview.review_required ? ` <span class="review-badge">review</span>` : "") +
    ` <button type="button" data-action="clear-preview">dismiss</button></div>`
  );
}

function renderWizardPanel(state: WizardState, open: boolean): string {
  if (!open) {
    return `<button type="button" data-action="open-wizard" class="open-wizard">Contest this outcome</button>`;
  }
  const typeButtons = CONTESTATION_TYPES.map(
    (info) =>
      `<button type="button" data-action="wizard-select-type" data-type="${info.type}"` +
      ` class="${state.selectedType === info.type ? "selected" : ""}">${escapeHtml(info.label)}</button>`,
  ).join("\n    ");
  const prompts = state.selectedType
    ? promptsFor(state.selectedType)
        .map(
          (p) =>
            `<label>${escapeHtml(p.question)}<input data-prompt-id="${p.id}"` +
            ` value="${escapeHtml(state.answers[p.id] ?? "")}"></label>`,
        )
        .join("\n    ")
    : "";
  const materials = state.materials
    .map(
      (m, i) =>
        `<li>${escapeHtml(m)} <button type="button" data-action="wizard-remove-material"` +
        ` data-index="${i}">remove</button></li>`,
    )
    .join("");
  const proposals = state.proposals
    .map(
      (p) =>
        `<li class="proposal" data-proposal-id="${escapeHtml(p.proposal_id)}">` +
        `<span class="proposal-kind">${escapeHtml(p.edit.kind)}</span> ` +
        `${p.edit.rationale ? escapeHtml(p.edit.rationale) : ""} ` +
        `<button type="button" data-action="proposal-accept" data-proposal-id="${escapeHtml(p.proposal_id)}">accept</button>` +
        `<button type="button" data-action="proposal-reject" data-proposal-id="${escapeHtml(p.proposal_id)}">reject</button></li>`,
    )
    .join("");
  return `
<div class="wizard">
  <h3>Contest the outcome</h3>
  <div class="wizard-types">
    ${typeButtons}
  </div>
  <label>What is wrong?<textarea id="wizard-statement">${escapeHtml(state.statement)}</textarea></label>
  <div class="wizard-prompts">
    ${prompts}
  </div>
  <div class="wizard-materials">
    <input id="wizard-material" placeholder="supporting material">
    <button type="button" data-action="wizard-add-material">attach</button>
    <ul>${materials}</ul>
  </div>
  <button type="button" data-action="wizard-submit" ${canSubmit(state) ? "" : "disabled"}>submit</button>
  <button type="button" data-action="close-wizard">close</button>
  ${state.proposals.length > 0 ? `<ul class="proposal-list">${proposals}</ul>` : ""}
</div>`;
}

export class App {
  private readonly root: HTMLElement;
  private readonly client: ApiClient;
  private state: AppState = {
    caseId: null,
    dashboard: null,
    session: null,
    audit: [],
    expandedCardId: null,
    bannerHtml: "",
    previewHtml: "",
    errorHtml: "",
    busy: false,
    wizard: initialWizardState(),
    wizardOpen: false,
  };

  constructor(root: HTMLElement, client: ApiClient) {
    this.root = root;
    this.client = client;
    root.addEventListener("click", (event) => {
      void this.onClick(event);
    });
    root.addEventListener("input", (event) => this.onInput(event));
  }

  render(): void {
    const s = this.state;
    if (!s.dashboard) {
      this.root.innerHTML = `
<section class="case-picker">
  <h1>Claim review</h1>
  ${s.errorHtml}
  <label>Case id<input id="case-id-input" placeholder="existing case id"></label>
  <button type="button" data-action="load-case" ${s.busy ? "disabled" : ""}>open</button>
</section>`;
      return;
    }
    const vm = toDashboardViewModel(s.dashboard, s.session ?? undefined);
    const cards = vm.cards
      .map(
        (card) => `
<div class="card-slot">
  ${renderCard(card, card.id === s.expandedCardId)}
  <div class="card-actions">
    <button type="button" data-action="toggle-card" data-node-id="${escapeHtml(card.id)}">
      ${card.id === s.expandedCardId ? "collapse" : "expand"}</button>
    <button type="button" data-action="preview-reject" data-node-id="${escapeHtml(card.id)}">preview reject</button>
    <button type="button" data-action="apply-reject" data-node-id="${escapeHtml(card.id)}">reject</button>
    <button type="button" data-action="apply-boost" data-node-id="${escapeHtml(card.id)}">set strength 1.0</button>
  </div>
</div>`,
      )
      .join("\n");
    this.root.innerHTML = `
${s.errorHtml}
${renderHeader(vm)}
${s.bannerHtml}
${s.previewHtml}
<section class="graph-panel">${renderGraph(vm.graph)}</section>
<section class="participation-panel">
  <h2>Participation</h2>
  ${renderParticipation(vm.participation)}
</section>
<section class="cards-panel">
  <h2>Arguments (${escapeHtml(vm.argumentsSummary)})</h2>
  ${cards}
</section>
<section class="wizard-panel">
  ${renderWizardPanel(s.wizard, s.wizardOpen)}
</section>
<section class="audit-panel">
  <h2>Audit log</h2>
  ${renderAuditTimeline(s.audit)}
</section>`;
  }

  private async onClick(event: Event): Promise<void> {
    const target = event.target;
    if (!(target instanceof Element)) return;
    const button = target.closest("[data-action]");
    if (!(button instanceof HTMLElement)) return;
    const action = button.dataset["action"];
    const nodeId = button.dataset["nodeId"];
    try {
      switch (action) {
        case "load-case":
          await this.loadCase(this.inputValue("case-id-input"));
          break;
        case "toggle-card":
          this.state.expandedCardId =
            this.state.expandedCardId === nodeId ? null : (nodeId ?? null);
          this.render();
          break;
        case "preview-reject":
          if (nodeId) await this.previewReject(nodeId);
          break;
        case "apply-reject":
          if (nodeId)
            await this.applyEdit({
              kind: "reject_argument",
              contestation_type: "factual",
              actor: "reviewer",
              node_id: nodeId,
            });
          break;
        case "apply-boost":
          if (nodeId)
            await this.applyEdit({
              kind: "set_base_strength",
              contestation_type: "factual",
              actor: "reviewer",
              node_id: nodeId,
              new_strength: 1.0,
            });
          break;
        case "clear-preview":
          this.state.previewHtml = "";
          this.render();
          break;
        case "open-wizard":
          this.state.wizardOpen = true;
          this.render();
          break;
        case "close-wizard":
          this.state.wizardOpen = false;
          this.render();
          break;
        case "wizard-select-type": {
          const type = button.dataset["type"];
          if (type) {
            this.state.wizard = selectType(
              this.state.wizard,
              type as WizardState["selectedType"] & string,
            );
            this.render();
          }
          break;
        }
        case "wizard-add-material":
          this.state.wizard = attachMaterial(this.state.wizard, this.inputValue("wizard-material"));
          this.render();
          break;
        case "wizard-remove-material": {
          const index = Number(button.dataset["index"]);
          this.state.wizard = removeMaterial(this.state.wizard, index);
          this.render();
          break;
        }
        case "wizard-submit":
          await this.submitContest();
          break;
        case "proposal-accept":
        case "proposal-reject": {
          const proposalId = button.dataset["proposalId"];
          if (proposalId) await this.resolveProposal(proposalId, action === "proposal-accept");
          break;
        }
        case "retry":
          this.state.errorHtml = "";
          if (this.state.caseId) await this.loadCase(this.state.caseId);
          else this.render();
          break;
        default:
          break;
      }
    } catch (error) {
      this.showError(error);
    }
  }

  private onInput(event: Event): void {
    const target = event.target;
    if (target instanceof HTMLTextAreaElement && target.id === "wizard-statement") {
      this.state.wizard = setStatement(this.state.wizard, target.value);
      return;
    }
    if (target instanceof HTMLInputElement) {
      const promptId = target.dataset["promptId"];
      if (promptId) {
        this.state.wizard = answerPrompt(this.state.wizard, promptId, target.value);
      }
    }
  }

  private inputValue(id: string): string {
    const el = this.root.querySelector(`#${id}`);
    return el instanceof HTMLInputElement ? el.value.trim() : "";
  }

  async loadCase(caseId: string): Promise<void> {
    if (!caseId) return;
    this.state.busy = true;
    this.render();
    try {
      this.state.dashboard = await this.client.getDashboard(caseId);
      this.state.caseId = caseId;
      this.state.session = null;
      this.state.audit = [];
      this.state.bannerHtml = "";
      this.state.previewHtml = "";
      this.state.errorHtml = "";
    } finally {
      this.state.busy = false;
    }
    this.render();
  }

  private async ensureSession(): Promise<SessionStateDoc> {
    if (this.state.session) return this.state.session;
    if (!this.state.caseId) throw new Error("no case loaded");
    const session = await this.client.openSession(this.state.caseId);
    this.state.session = session;
    return session;
  }

  private currentDecision(): DecisionDoc | null {
    return this.state.session?.decision ?? this.state.dashboard?.decision ?? null;
  }

  async previewReject(nodeId: string): Promise<void> {
    const session = await this.ensureSession();
    const preview = await this.client.previewEdit(session.session_id, {
      kind: "reject_argument",
      contestation_type: "factual",
      actor: "reviewer",
      node_id: nodeId,
    });
    this.state.previewHtml = renderPreviewPanel(preview);
    this.render();
  }

  async applyEdit(edit: Parameters<ApiClient["applyEdit"]>[1]): Promise<void> {
    const session = await this.ensureSession();
    const before = this.currentDecision();
    const applied = await this.client.applyEdit(session.session_id, edit);
    this.state.session = applied;
    this.state.previewHtml = "";
    if (before) {
      this.state.bannerHtml = renderDecisionBanner(before, applied.decision);
    }
    const [dashboard, audit] = await Promise.all([
      this.client.getSessionDashboard(applied.session_id),
      this.client.getAudit(applied.session_id),
    ]);
    this.state.dashboard = dashboard;
    this.state.audit = audit.entries;
    this.render();
  }

  private async submitContest(): Promise<void> {
    const session = await this.ensureSession();
    const request = buildContestRequest(this.state.wizard);
    const response = await this.client.contest(session.session_id, request);
    this.state.wizard = withProposals(this.state.wizard, response.proposals);
    this.render();
  }

  private async resolveProposal(proposalId: string, accept: boolean): Promise<void> {
    const session = await this.ensureSession();
    const result = accept
      ? await this.client.acceptProposal(session.session_id, proposalId, "reviewer")
      : await this.client.rejectProposal(session.session_id, proposalId, "reviewer");
    this.state.wizard = withoutProposal(this.state.wizard, proposalId);
    if (accept && "audit_entry" in result) {
      const before = this.currentDecision();
      this.state.session = result;
      if (before) this.state.bannerHtml = renderDecisionBanner(before, result.decision);
      const [dashboard, audit] = await Promise.all([
        this.client.getSessionDashboard(session.session_id),
        this.client.getAudit(session.session_id),
      ]);
      this.state.dashboard = dashboard;
      this.state.audit = audit.entries;
    }
    this.render();
  }

  private showError(error: unknown): void {
    if (error instanceof ApiError) {
      this.state.errorHtml = renderApiError(error.code, error.message);
    } else {
      this.state.errorHtml = renderApiError("UI_ERROR", String(error));
    }
    this.render();
  }
}

export function mount(root: HTMLElement, client: ApiClient): App {
  const app = new App(root, client);
  app.render();
  return app;
}

declare global {
  interface Window {
    __claimcourtApp?: App;
  }
}

if (typeof document !== "undefined") {
  const rootEl = document.getElementById("app");
  if (rootEl) {
    window.__claimcourtApp = mount(rootEl, new ApiClient(window.location.origin));
  }
}
