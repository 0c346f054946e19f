/**
 * Thin fetch wrapper over the case service.
 *
 * Every method maps to exactly one endpoint and returns the parsed JSON
 * unchanged. Error bodies ({code, message}) become ApiError instances so
 * callers can branch on the server's error code rather than status text.
 */

import type {
  AuditLogDoc,
  ArgumentCardDoc,
  CaseCreatedDoc,
  ContestRequestDoc,
  DashboardDoc,
  EditAppliedDoc,
  EditRequestDoc,
  PreviewDoc,
  ProposalsDoc,
  SessionStateDoc,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface CreateCaseRequest {
  claim: string;
  task_id?: string;
  metadata?: Record<string, unknown>;
  corpus?: Record<string, string>;
  config?: Record<string, unknown>;
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchImpl?: FetchLike,
  ) {
    // bind so a bare window.fetch keeps its receiver
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}/api/v1${path}`, init);
    const text = await response.text();
    let doc: unknown = null;
    if (text) {
      try {
        doc = JSON.parse(text);
      } catch {
        doc = null;
      }
    }
    if (!response.ok) {
      const err = (doc ?? {}) as Partial<{ code: string; message: string }>;
      throw new ApiError(
        response.status,
        err.code ?? "HTTP_ERROR",
        err.message ?? `request failed with status ${response.status}`,
      );
    }
    return doc as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  createCase(body: CreateCaseRequest): Promise<CaseCreatedDoc> {
    return this.request("POST", "/cases", body);
  }

  getDashboard(caseId: string): Promise<DashboardDoc> {
    return this.request("GET", `/cases/${encodeURIComponent(caseId)}/dashboard`);
  }

  getCard(caseId: string, nodeId: string): Promise<ArgumentCardDoc> {
    return this.request(
      "GET",
      `/cases/${encodeURIComponent(caseId)}/cards/${encodeURIComponent(nodeId)}`,
    );
  }

  openSession(caseId: string): Promise<SessionStateDoc> {
    return this.request("POST", `/cases/${encodeURIComponent(caseId)}/sessions`, {});
  }

  getSession(sessionId: string): Promise<SessionStateDoc> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  getSessionDashboard(sessionId: string): Promise<DashboardDoc> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}/dashboard`);
  }

  applyEdit(sessionId: string, edit: EditRequestDoc): Promise<EditAppliedDoc> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/edits`, edit);
  }

  previewEdit(sessionId: string, edit: EditRequestDoc): Promise<PreviewDoc> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/preview`, edit);
  }

  contest(sessionId: string, body: ContestRequestDoc): Promise<ProposalsDoc> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/contest`, body);
  }

  getProposals(sessionId: string): Promise<ProposalsDoc> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}/proposals`);
  }

  acceptProposal(sessionId: string, proposalId: string, actor: string): Promise<EditAppliedDoc> {
    return this.request(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/proposals/${encodeURIComponent(proposalId)}/accept`,
      { actor },
    );
  }

  rejectProposal(sessionId: string, proposalId: string, actor: string): Promise<SessionStateDoc> {
    return this.request(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/proposals/${encodeURIComponent(proposalId)}/reject`,
      { actor },
    );
  }

  getAudit(sessionId: string): Promise<AuditLogDoc> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}/audit`);
  }
}
