/** Topology view model: per-cell load coloring, congestion badges from
 * live insights, and a freshness warning when snapshots go stale. */

import type { Insight, MetricsPayload, NetworkSummary } from "./types.js";

export type LoadBand = "load-low" | "load-mid" | "load-high";

export interface CellView {
  id: string;
  load: number;
  connectedCount: number;
  band: LoadBand;
  congested: boolean;
}

export interface TopologyView {
  tick: number;
  ueTotal: number;
  ueConnected: number;
  cells: CellView[];
  insightsActive: number;
  freshnessWarning: boolean;
}

export function loadBand(load: number): LoadBand {
  if (load >= 0.8) return "load-high";
  if (load >= 0.5) return "load-mid";
  return "load-low";
}

// Snapshots older than three tick periods mean the clock stalled.
export const FRESHNESS_FACTOR = 3;

export function buildTopologyView(
  summary: NetworkSummary,
  insights: Insight[],
  metrics: MetricsPayload | null,
  tickDurationMs: number,
): TopologyView {
  const congestedSubjects = new Set(
    insights.filter((i) => i.insight_type === "CONGESTION_RISK").map((i) => i.subject),
  );
  const cells = Object.keys(summary.cells)
    .sort()
    .map((id) => {
      const cell = summary.cells[id]!;
      return {
        id,
        load: cell.load,
        connectedCount: cell.connected_count,
        band: loadBand(cell.load),
        congested: congestedSubjects.has(id),
      };
    });
  const age = metrics?.snapshot_age_ms ?? null;
  return {
    tick: summary.tick,
    ueTotal: summary.ue_total,
    ueConnected: summary.ue_connected,
    cells,
    insightsActive: summary.insights_active,
    freshnessWarning: age !== null && age > FRESHNESS_FACTOR * tickDurationMs,
  };
}
