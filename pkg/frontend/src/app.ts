/** DOM wiring: mounts the view models onto index.html. Logic lives in the
 * model modules; this layer only renders and forwards clicks. */

import { ConsoleApi } from "./api.js";
import { KnowledgeExplorer } from "./explorer.js";
import { AuditPanel, InsightsPanel, auditVisibleFor } from "./panels.js";
import { ConsoleSession, sessionFromParams } from "./session.js";
import { EventTicker } from "./ticker.js";
import { buildTopologyView } from "./topology.js";
import { ProvisioningWizard } from "./wizard.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setText(id: string, text: string): void {
  el(id).textContent = text;
}

function splitList(raw: string): string[] {
  return raw
    .split(",")
    .map((part) => part.trim())
    .filter(Boolean);
}

class ConsoleApp {
  private readonly api: ConsoleApi;
  private readonly explorer: KnowledgeExplorer;
  private readonly wizard: ProvisioningWizard;
  private readonly auditPanel: AuditPanel;
  private readonly insightsPanel: InsightsPanel;
  private readonly ticker = new EventTicker();
  private tickDurationMs = 100;

  constructor(private readonly session: ConsoleSession) {
    this.api = new ConsoleApi(session);
    this.explorer = new KnowledgeExplorer(this.api);
    this.wizard = new ProvisioningWizard(this.api);
    this.auditPanel = new AuditPanel(this.api);
    this.insightsPanel = new InsightsPanel(this.api);
  }

  async start(): Promise<void> {
    setText("session-info", `${this.session.serverUrl} as ${this.session.selectedRole}`);
    el("audit-panel").hidden = !auditVisibleFor(this.session.selectedRole);
    this.wireExplorer();
    this.wireWizard();
    this.wireTicker();
    await this.explorer.open("/docs").then(() => this.renderExplorer()).catch(() => undefined);
    await this.refresh();
    setInterval(() => void this.refresh(), this.session.pollIntervalMs);
  }

  private async refresh(): Promise<void> {
    try {
      const [summary, insights, metrics] = await Promise.all([
        this.api.summary(),
        this.api.insights(),
        this.api.metrics(),
      ]);
      const view = buildTopologyView(summary, insights.insights, metrics, this.tickDurationMs);
      setText("tick-indicator", `tick ${view.tick}`);
      setText("ue-counts", `${view.ueConnected}/${view.ueTotal} UEs connected`);
      el("freshness-warning").hidden = !view.freshnessWarning;
      const rows = view.cells
        .map(
          (cell) => `
          <tr class="${cell.band}">
            <td>${cell.id}</td>
            <td>${(cell.load * 100).toFixed(0)}%</td>
            <td>${cell.connectedCount}</td>
            <td>${cell.congested ? '<span class="badge">CONGESTION_RISK</span>' : ""}</td>
          </tr>`,
        )
        .join("");
      el("topology-body").innerHTML = rows;
      await this.insightsPanel.refresh();
      el("insights-body").innerHTML = this.insightsPanel.rows
        .map(
          (row) =>
            `<tr><td>${row.type}</td><td>${row.subject}</td><td>${row.firedTick}</td>` +
            `<td>${row.evidenceTicks}</td></tr>`,
        )
        .join("");
      if (auditVisibleFor(this.session.selectedRole)) {
        await this.auditPanel.loadMore();
        el("audit-body").innerHTML = this.auditPanel.rows
          .slice(-25)
          .map(
            (r) =>
              `<tr><td>${r.seq}</td><td>${r.principal}</td><td>${r.method} ${r.path}</td>` +
              `<td>${r.outcome}</td></tr>`,
          )
          .join("");
      }
    } catch (err) {
      setText("status-line", `refresh failed: ${String(err)}`);
    }
  }

  private renderExplorer(): void {
    const doc = this.explorer.current;
    if (!doc) return;
    setText("doc-title", doc.title);
    setText("doc-explanation", doc.explanation);
    const snippetPanel = el<HTMLElement>("doc-snippet");
    snippetPanel.hidden = doc.snippet === null;
    if (doc.snippet !== null) snippetPanel.textContent = doc.snippet;
    setText("breadcrumbs", this.explorer.breadcrumbs.join(" > "));
    el("doc-related").innerHTML = doc.related
      .map((link, i) => `<li><a href="#" data-index="${i}">${link.kind}: ${link.path}</a></li>`)
      .join("");
    el("doc-related")
      .querySelectorAll("a")
      .forEach((anchor) =>
        anchor.addEventListener("click", (event) => {
          event.preventDefault();
          const index = Number((event.currentTarget as HTMLElement).dataset["index"]);
          void this.explorer.click(index).then(() => this.renderExplorer());
        }),
      );
  }

  private wireExplorer(): void {
    el("doc-back").addEventListener("click", () => {
      void this.explorer.back().then(() => this.renderExplorer());
    });
    el("query-run").addEventListener("click", () => {
      const path = el<HTMLInputElement>("query-path").value;
      void this.explorer.queryTester(path).then((pretty) => setText("query-result", pretty));
    });
  }

  private wireWizard(): void {
    const render = () => {
      setText("wizard-step", this.wizard.step);
      el("wizard-recommendations").innerHTML = this.wizard.matches
        .map((svc) => `<li><button data-id="${svc.id}">${svc.id} (${svc.task})</button></li>`)
        .join("");
      el("wizard-recommendations")
        .querySelectorAll("button")
        .forEach((button) =>
          button.addEventListener("click", () => {
            this.wizard.choose((button as HTMLButtonElement).dataset["id"]!);
            render();
          }),
        );
      const error = this.wizard.capacityError;
      el("wizard-headroom").hidden = error === null;
      if (error) {
        setText(
          "wizard-headroom",
          `capacity short (need ${error.needed ?? "?"}): ` +
            Object.entries(error.headroom)
              .map(([sid, h]) => `${sid} free=${h.free}`)
              .join(", "),
        );
      }
      el("wizard-result").hidden = this.wizard.result === null;
      if (this.wizard.result) {
        setText("wizard-endpoint", this.wizard.endpointUrl ?? "");
        setText("wizard-snippet", this.wizard.snippet ?? "");
      }
    };
    el("wizard-submit-profile").addEventListener("click", () => {
      this.wizard.draft = {
        modalities: splitList(el<HTMLInputElement>("wizard-modalities").value),
        realtime: el<HTMLInputElement>("wizard-realtime").checked,
        targetClasses: splitList(el<HTMLInputElement>("wizard-classes").value),
        ueIds: splitList(el<HTMLInputElement>("wizard-ues").value),
      };
      void this.wizard
        .submitProfile()
        .then(render)
        .catch((err) => setText("status-line", String(err)));
    });
    el("wizard-subscribe").addEventListener("click", () => {
      this.wizard.reviseUeIds(splitList(el<HTMLInputElement>("wizard-ues").value));
      void this.wizard.subscribe().then(render);
    });
    el("wizard-back").addEventListener("click", () => {
      this.wizard.back();
      render();
    });
    render();
  }

  private wireTicker(): void {
    void (async () => {
      try {
        const sub = await this.api.request<{ id: string; stream_path: string }>(
          "POST",
          "/subscriptions",
          { event_type: "HANDOVER_COMPLETE" },
        );
        const response = await fetch(`${this.session.serverUrl}${sub.stream_path}`, {
          headers: { authorization: `Bearer ${this.session.token}` },
        });
        const reader = response.body?.getReader();
        if (!reader) return;
        const decoder = new TextDecoder();
        let buffer = "";
        for (;;) {
          const { done, value } = await reader.read();
          if (done) break;
          buffer += decoder.decode(value, { stream: true });
          const lines = buffer.split("\n");
          buffer = lines.pop() ?? "";
          for (const line of lines) this.ticker.push(line);
          el("ticker").innerHTML = this.ticker.events
            .slice(-8)
            .map((e) => `<li>t${e.tick} ${e.type} ${e.subject}</li>`)
            .join("");
        }
      } catch {
        // Stream is decorative; polling keeps the console alive without it.
      }
    })();
  }
}

const session = sessionFromParams(window.location.search);
void new ConsoleApp(session).start();
