/** Audit tail (admin-gated, seq-cursor pagination) and live insights. */

import type { ConsoleApi } from "./api.js";
import type { AuditRecord, Insight, Role } from "./types.js";

export function auditVisibleFor(role: Role): boolean {
  return role === "admin";
}

export class AuditPanel {
  rows: AuditRecord[] = [];
  private cursor = 0;

  constructor(
    private readonly api: ConsoleApi,
    readonly pageSize = 50,
  ) {}

  /** Pull everything past the cursor; returns the freshly added rows. */
  async loadMore(): Promise<AuditRecord[]> {
    const response = await this.api.audit(this.cursor);
    const fresh = response.records;
    this.rows.push(...fresh);
    if (this.rows.length > 0) {
      this.cursor = this.rows[this.rows.length - 1]!.seq;
    }
    return fresh;
  }

  get lastSeq(): number {
    return this.cursor;
  }
}

export interface InsightRow {
  type: string;
  subject: string;
  firedTick: number;
  evidenceTicks: string;
  evidenceValues: string;
}

export class InsightsPanel {
  rows: InsightRow[] = [];

  constructor(private readonly api: ConsoleApi) {}

  async refresh(): Promise<InsightRow[]> {
    const response = await this.api.insights();
    this.rows = response.insights.map((insight: Insight) => ({
      type: insight.insight_type,
      subject: insight.subject,
      firedTick: insight.fired_tick,
      evidenceTicks: insight.evidence.map((e) => e.tick).join(", "),
      evidenceValues: insight.evidence.map((e) => e.value.toFixed(2)).join(", "),
    }));
    return this.rows;
  }
}
