/**
 * Pure HTML builders. Every function returns a string; DOM wiring lives in
 * app.ts. Keeping these pure makes the no-client-side-math invariant easy to
 * test: feed a document in, assert the server's numbers come out verbatim.
 */

import type {
  ArgumentCardDoc,
  AuditEntryDoc,
  DecisionDoc,
  ParticipationRowDoc,
} from "./types.js";
import type { DashboardViewModel, GraphView } from "./viewmodel.js";
import { describeDecision, formatStrength } from "./viewmodel.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const STANCE_LABEL = { support: "supports", attack: "attacks" } as const;

export function renderHeader(vm: DashboardViewModel): string {
  const h = vm.header;
  const badges: string[] = [];
  if (h.escalated) {
    badges.push(
      `<span class="escalation-badge" title="${escapeHtml(h.judgeRationale ?? "")}">` +
        `judge ruling${h.judgeRationale ? `: ${escapeHtml(h.judgeRationale)}` : ""}</span>`,
    );
  }
  if (h.reviewRequired) {
    badges.push(`<span class="review-badge">review required</span>`);
  }
  return `
<header class="case-header">
  <p class="case-id">${escapeHtml(h.caseId)}</p>
  <h1 class="claim-text">${escapeHtml(h.claim)}</h1>
  <p class="verdict">
    <span class="claim-strength">${escapeHtml(h.claimStrength)}</span>
    <span class="decision-answer decision-${escapeHtml(h.answer)}">${escapeHtml(h.answer)}</span>
    <span class="decided-by">${escapeHtml(h.decidedBy)}</span>
    ${badges.join("\n    ")}
  </p>
</header>`;
}

export function renderParticipation(rows: ParticipationRowDoc[]): string {
  if (rows.length === 0) {
    return `<p class="participation-empty">No agent participation recorded.</p>`;
  }
  const body = rows
    .map(
      (r) => `
    <tr>
      <td>${escapeHtml(r.role)}</td>
      <td>${r.arguments}</td>
      <td>${r.supports}</td>
      <td>${r.attacks}</td>
      <td>${r.clashes}</td>
      <td>${r.clash_wins}</td>
      <td>${r.clash_ties}</td>
      <td>${formatStrength(r.net_adjustment)}</td>
    </tr>`,
    )
    .join("");
  return `
<table class="participation">
  <thead>
    <tr><th>role</th><th>args</th><th>sup</th><th>att</th>
        <th>clashes</th><th>wins</th><th>ties</th><th>net adj</th></tr>
  </thead>
  <tbody>${body}
  </tbody>
</table>`;
}

/**
 * One argument card. The five field groups are always present; the
 * neighborhood and influence groups sit inside a <details> element that the
 * expanded flag opens.
 */
export function renderCard(card: ArgumentCardDoc, expanded = false): string {
  const evidence =
    card.evidence.length === 0
      ? `<li class="evidence-empty">no passages cited</li>`
      : card.evidence
          .map(
            (e) =>
              `<li><span class="passage-id">${escapeHtml(e.passage_id)}</span> ` +
              `${escapeHtml(e.text)}</li>`,
          )
          .join("\n      ");
  const neighbors = (ids: string[]) =>
    ids.length === 0
      ? `<li class="neighbor-none">none</li>`
      : ids.map((id) => `<li class="neighbor">${escapeHtml(id)}</li>`).join("");
  return `
<article class="card stance-${card.stance}" data-node-id="${escapeHtml(card.id)}">
  <div class="card-text">
    <span class="stance-chip">${STANCE_LABEL[card.stance]}</span>
    <span class="author-role">${escapeHtml(card.author_role)}</span>
    <p>${escapeHtml(card.text)}</p>
  </div>
  <ul class="card-evidence">
      ${evidence}
  </ul>
  <dl class="card-scores">
    <dt>base strength</dt><dd class="base-strength">${formatStrength(card.scores.base_strength)}</dd>
    <dt>propagated</dt><dd class="propagated-strength">${formatStrength(card.scores.propagated_strength)}</dd>
  </dl>
  <details class="card-neighborhood"${expanded ? " open" : ""}>
    <summary>neighborhood</summary>
    <p>supported by</p><ul>${neighbors(card.neighborhood.supporters)}</ul>
    <p>attacked by</p><ul>${neighbors(card.neighborhood.attackers)}</ul>
  </details>
  <details class="card-influence"${expanded ? " open" : ""}>
    <summary>why it matters</summary>
    <p>${escapeHtml(card.influence)}</p>
  </details>
</article>`;
}

export function renderGraph(graph: GraphView): string {
  const width = 640;
  const height = 420;
  const cx = width / 2;
  const cy = height / 2;
  const ring = Math.min(cx, cy) - 60;
  const positions = new Map<string, { x: number; y: number }>();
  positions.set("claim", { x: cx, y: cy });
  const others = graph.nodes.filter((n) => n.id !== "claim");
  others.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / Math.max(others.length, 1);
    positions.set(node.id, {
      x: Math.round(cx + ring * Math.cos(angle)),
      y: Math.round(cy + ring * Math.sin(angle)),
    });
  });

  const lines = graph.edges
    .map((edge) => {
      const a = positions.get(edge.source);
      const b = positions.get(edge.target);
      if (!a || !b) return "";
      return (
        `<line class="edge edge-${edge.kind}" x1="${a.x}" y1="${a.y}" ` +
        `x2="${b.x}" y2="${b.y}" stroke="${edge.color}" />`
      );
    })
    .join("\n  ");
  const circles = graph.nodes
    .map((node) => {
      const p = positions.get(node.id)!;
      return (
        `<g class="node node-${node.kind}" data-node-id="${escapeHtml(node.id)}">` +
        `<circle cx="${p.x}" cy="${p.y}" r="${node.radius}"><title>` +
        `${escapeHtml(node.label)} (${escapeHtml(node.strength)})</title></circle></g>`
      );
    })
    .join("\n  ");
  return `
<svg class="case-graph" viewBox="0 0 ${width} ${height}" role="img">
  ${lines}
  ${circles}
</svg>`;
}

/** Before/after strengths exactly as the server reported them. */
export function renderDelta(before: number, after: number): string {
  return (
    `<span class="sigma-delta"><span class="sigma-before">${formatStrength(before)}</span>` +
    ` → <span class="sigma-after">${formatStrength(after)}</span></span>`
  );
}

/** Banner announcing a changed outcome; empty string when nothing changed. */
export function renderDecisionBanner(previous: DecisionDoc, current: DecisionDoc): string {
  if (previous.answer === current.answer) return "";
  return (
    `<div class="decision-banner">Outcome changed: ` +
    `<strong>${escapeHtml(previous.answer)}</strong> → ` +
    `<strong>${escapeHtml(current.answer)}</strong> ` +
    `at claim strength <span class="claim-strength">${formatStrength(
      current.claim_strength,
    )}</span> — now ${escapeHtml(describeDecision(current))}</div>`
  );
}

/** Entries render in the order given; the server already orders by seq. */
export function renderAuditTimeline(entries: AuditEntryDoc[]): string {
  if (entries.length === 0) {
    return `<p class="audit-empty">No edits yet.</p>`;
  }
  const items = entries
    .map(
      (entry) => `
  <li class="audit-entry" data-seq="${entry.seq}">
    <span class="audit-seq">#${entry.seq}</span>
    <span class="audit-kind">${escapeHtml(entry.edit.kind)}</span>
    <span class="audit-actor">${escapeHtml(entry.actor)}</span>
    ${renderDelta(entry.sigma_phi_before, entry.sigma_phi_after)}
    ${entry.decision_after ? `<span class="audit-flip">outcome: ${escapeHtml(entry.decision_after.answer)}</span>` : ""}
    ${entry.review_required ? `<span class="review-badge">review</span>` : ""}
    ${entry.edit.rationale ? `<p class="audit-rationale">${escapeHtml(entry.edit.rationale)}</p>` : ""}
  </li>`,
    )
    .join("");
  return `<ol class="audit-timeline">${items}\n</ol>`;
}

export function renderDashboard(
  vm: DashboardViewModel,
  options: { expandedCardId?: string | null } = {},
): string {
  const cards = vm.cards
    .map((card) => renderCard(card, card.id === options.expandedCardId))
    .join("\n");
  return `
${renderHeader(vm)}
<section class="graph-panel">${renderGraph(vm.graph)}</section>
<section class="participation-panel">
  <h2>Participation</h2>
  ${renderParticipation(vm.participation)}
</section>
<section class="cards-panel">
  <h2>Arguments</h2>
  ${cards}
</section>`;
}

export function renderApiError(code: string, message: string): string {
  return (
    `<div class="api-error" data-code="${escapeHtml(code)}">` +
    `<strong>${escapeHtml(code)}</strong> ${escapeHtml(message)} ` +
    `<button type="button" data-action="retry">retry</button></div>`
  );
}
