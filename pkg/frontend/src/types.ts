/** Wire types for the knowledge API consumed by the console. */

export interface CellSummary {
  load: number;
  connected_count: number;
}

export interface NetworkSummary {
  tick: number;
  ue_total: number;
  ue_connected: number;
  cells: Record<string, CellSummary>;
  insights_active: number;
}

export interface LiveAttribute {
  tick: number;
  value: unknown;
  unit: string | null;
  doc_link: string;
}

export interface LiveEntity {
  tick: number;
  entity_type: string;
  id: string;
  attributes: Record<string, unknown>;
  doc_link: string;
}

export interface RelatedLink {
  kind: string;
  path: string;
}

export interface KnowledgeDoc {
  path: string;
  title: string;
  explanation: string;
  related: RelatedLink[];
  schema_version: string;
  source_snippet?: string;
  signature?: string;
  live_path?: string;
  semantic_type?: string;
  unit?: string | null;
}

export interface Insight {
  rule_id: string;
  insight_type: string;
  subject: string;
  fired_tick: number;
  evidence: { tick: number; value: number }[];
}

export interface InsightsResponse {
  tick: number;
  insights: Insight[];
}

export interface AuditRecord {
  seq: number;
  wall_time: number;
  sim_tick: number;
  principal: string;
  method: string;
  path: string;
  outcome: number;
  latency_ms: number;
}

export interface AuditResponse {
  records: AuditRecord[];
  next_seq: number;
}

export interface MetricsPayload {
  latest_tick: number;
  snapshot_age_ms: number | null;
  query_count: Record<string, number>;
  latency_ms: Record<string, { p50: number; p99: number }>;
  tick_ms: { p50: number | null; p99: number | null; count: number };
  upstream_subscriptions: Record<string, number>;
  consumer_subscriptions: Record<string, number>;
}

export interface ServiceDescriptor {
  id: string;
  name: string;
  task: string;
  modalities: string[];
  target_classes: string[];
  latency_class: string;
  resource_units: number;
}

export interface RequirementProfile {
  modalities: string[];
  realtime: boolean;
  target_classes: string[];
  ue_ids: string[];
}

export interface MatchResponse {
  profile: RequirementProfile;
  matches: ServiceDescriptor[];
}

export interface ServiceSubscription {
  id: string;
  service_id: string;
  ue_ids: string[];
  edge_server_id: string;
  endpoint_url: string;
  status: string;
  created_tick: number;
  resource_units_total: number;
}

export interface ProvisionResponse {
  subscription: ServiceSubscription;
  integration_snippet: string;
}

export interface ServerHeadroom {
  capacity: number;
  used: number;
  free: number;
}

export type HeadroomReport = Record<string, ServerHeadroom>;

export interface NetworkEvent {
  tick: number;
  type: string;
  subject: string;
  payload: Record<string, unknown>;
}

export type Role = "admin" | "operator" | "tenant" | "readonly";

export const MASKED = "***";
