import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderAuditTimeline,
  renderCard,
  renderDashboard,
  renderDecisionBanner,
  renderGraph,
  renderHeader,
} from "../src/render.js";
import { formatStrength, toDashboardViewModel, toGraphView } from "../src/viewmodel.js";
import {
  attackCard,
  auditEntries,
  dashboardDoc,
  decisionEscalated,
  decisionNo,
  decisionYes,
  sessionDoc,
  supportCard,
} from "./fixtures.js";

const CARD_GROUPS = [
  "card-text",
  "card-evidence",
  "card-scores",
  "card-neighborhood",
  "card-influence",
];

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("renderCard", () => {
  it("emits all five field groups for every card", () => {
    for (const card of [supportCard, attackCard]) {
      const html = renderCard(card);
      for (const group of CARD_GROUPS) {
        expect(html, `missing ${group} on ${card.id}`).toContain(`class="${group}"`);
      }
    }
  });

  it("shows the server's scores verbatim", () => {
    const html = renderCard(supportCard);
    expect(html).toContain("0.7200");
    expect(html).toContain("0.8105");
  });

  it("lists evidence passages with their ids, or a placeholder when empty", () => {
    const withEvidence = renderCard(supportCard);
    expect(withEvidence).toContain("lease:0");
    expect(withEvidence).toContain("24 hours notice");
    const withoutEvidence = renderCard(attackCard);
    expect(withoutEvidence).toContain("no passages cited");
  });

  it("names neighborhood members by id", () => {
    const html = renderCard(supportCard);
    expect(html).toContain("a-sup-2");
    expect(html).toContain("a-att-1");
  });

  it("keeps detail groups collapsed by default and opens them when expanded", () => {
    const collapsed = renderCard(supportCard, false);
    expect(collapsed).not.toContain("<details class=\"card-neighborhood\" open");
    const expanded = renderCard(supportCard, true);
    expect(count(expanded, " open>")).toBe(2);
    expect(expanded).toContain('<details class="card-neighborhood" open>');
    expect(expanded).toContain('<details class="card-influence" open>');
  });

  it("escapes argument text", () => {
    const hostile = { ...attackCard, text: '<script>alert("x")</script>' };
    const html = renderCard(hostile);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("renderHeader", () => {
  it("shows claim, strength, and decision", () => {
    const vm = toDashboardViewModel(dashboardDoc);
    const html = renderHeader(vm);
    expect(html).toContain("landlord");
    expect(html).toContain('class="claim-strength"');
    expect(html).toContain("0.6543");
    expect(html).toContain("yes");
    expect(html).not.toContain("escalation-badge");
  });

  it("adds the escalation badge with the judge's rationale when escalated", () => {
    const escalatedDoc = {
      ...dashboardDoc,
      decision: decisionEscalated,
      claim_strength: decisionEscalated.claim_strength,
    };
    const html = renderHeader(toDashboardViewModel(escalatedDoc));
    expect(html).toContain("escalation-badge");
    expect(html).toContain("tenancy exception");
  });

  it("prefers session state over the stored case", () => {
    const vm = toDashboardViewModel(dashboardDoc, sessionDoc);
    const html = renderHeader(vm);
    expect(html).toContain(formatStrength(sessionDoc.claim_strength));
    expect(html).toContain("review-badge");
  });
});

describe("renderDecisionBanner", () => {
  it("is empty when the answer is unchanged", () => {
    expect(renderDecisionBanner(decisionYes, { ...decisionYes, claim_strength: 0.9 })).toBe("");
  });

  it("announces a flip with both answers and the new strength", () => {
    const html = renderDecisionBanner(decisionNo, decisionYes);
    expect(html).toContain("decision-banner");
    expect(html).toContain("<strong>no</strong>");
    expect(html).toContain("<strong>yes</strong>");
    expect(html).toContain(formatStrength(decisionYes.claim_strength));
  });
});

describe("renderAuditTimeline", () => {
  it("renders entries in the order given with before/after strengths", () => {
    const html = renderAuditTimeline(auditEntries);
    const first = html.indexOf('data-seq="1"');
    const second = html.indexOf('data-seq="2"');
    expect(first).toBeGreaterThan(-1);
    expect(second).toBeGreaterThan(first);
    expect(html).toContain("0.4467");
    expect(html).toContain("0.8335");
    expect(html).toContain("0.9538");
    expect(html).toContain("reject_argument");
    expect(html).toContain("set_base_strength");
  });

  it("does not reorder entries handed over out of sequence", () => {
    const reversed = [...auditEntries].reverse();
    const html = renderAuditTimeline(reversed);
    expect(html.indexOf('data-seq="2"')).toBeLessThan(html.indexOf('data-seq="1"'));
  });

  it("shows a placeholder when the log is empty", () => {
    expect(renderAuditTimeline([])).toContain("No edits yet");
  });
});

describe("renderGraph", () => {
  it("draws one circle per node sized by the server's strength", () => {
    const graph = toGraphView(dashboardDoc);
    const html = renderGraph(graph);
    expect(count(html, "<circle")).toBe(dashboardDoc.cards.length + 1);
    for (const node of graph.nodes) {
      expect(html).toContain(`r="${node.radius}"`);
    }
  });

  it("colors support and attack edges differently", () => {
    const html = renderGraph(toGraphView(dashboardDoc));
    expect(html).toContain('stroke="#2e7d32"');
    expect(html).toContain('stroke="#c62828"');
  });
});

describe("renderDashboard", () => {
  it("assembles header, graph, participation, and every card", () => {
    const vm = toDashboardViewModel(dashboardDoc);
    const html = renderDashboard(vm);
    expect(html).toContain("case-header");
    expect(html).toContain("case-graph");
    expect(html).toContain("participation");
    for (const group of CARD_GROUPS) {
      expect(count(html, `class="${group}"`)).toBe(dashboardDoc.cards.length);
    }
  });
});

describe("escapeHtml", () => {
  it("neutralises markup and quotes", () => {
    expect(escapeHtml(`<a href="x">'&'</a>`)).toBe(
      "&lt;a href=&quot;x&quot;&gt;&#39;&amp;&#39;&lt;/a&gt;",
    );
  });
});
