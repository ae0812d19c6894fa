/** Typed client for the knowledge API; every request carries the session
 * token and every non-2xx response becomes a structured ApiError. */

import type { ConsoleSession } from "./session.js";
import type {
  AuditResponse,
  HeadroomReport,
  InsightsResponse,
  KnowledgeDoc,
  LiveAttribute,
  LiveEntity,
  MatchResponse,
  MetricsPayload,
  NetworkSummary,
  ProvisionResponse,
  RequirementProfile,
  ServiceDescriptor,
  ServiceSubscription,
} from "./types.js";

export class ApiError extends Error {
  readonly code: number;
  readonly path: string;
  readonly headroom?: HeadroomReport;
  readonly needed?: number;

  constructor(code: number, message: string, path: string, extra?: Record<string, unknown>) {
    super(message);
    this.code = code;
    this.path = path;
    if (extra && typeof extra["headroom"] === "object" && extra["headroom"] !== null) {
      this.headroom = extra["headroom"] as HeadroomReport;
    }
    if (extra && typeof extra["needed"] === "number") {
      this.needed = extra["needed"];
    }
  }
}

export class ConsoleApi {
  constructor(private readonly session: ConsoleSession) {}

  async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.session.token) {
      headers["authorization"] = `Bearer ${this.session.token}`;
    }
    if (body !== undefined) {
      headers["content-type"] = "application/json";
    }
    const response = await fetch(`${this.session.serverUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    let payload: unknown = null;
    try {
      payload = text ? JSON.parse(text) : null;
    } catch {
      payload = null;
    }
    if (!response.ok) {
      const record = (payload ?? {}) as Record<string, unknown>;
      const message = typeof record["message"] === "string" ? record["message"] : response.statusText;
      throw new ApiError(response.status, message, path, record);
    }
    return payload as T;
  }

  get<T>(path: string): Promise<T> {
    return this.request<T>("GET", path);
  }

  // -- live ------------------------------------------------------------------

  summary(at?: number): Promise<NetworkSummary> {
    const suffix = at === undefined ? "" : `?at=${at}`;
    return this.get<NetworkSummary>(`/live/network/summary${suffix}`);
  }

  liveEntity(entityType: string, id: string): Promise<LiveEntity> {
    return this.get<LiveEntity>(`/live/${entityType}/${id}`);
  }

  liveAttribute(entityType: string, id: string, attribute: string): Promise<LiveAttribute> {
    return this.get<LiveAttribute>(`/live/${entityType}/${id}/attributes/${attribute}`);
  }

  // -- docs and insights ------------------------------------------------------

  doc(path: string): Promise<KnowledgeDoc> {
    return this.get<KnowledgeDoc>(path);
  }

  insights(subject?: string): Promise<InsightsResponse> {
    const suffix = subject === undefined ? "" : `?subject=${encodeURIComponent(subject)}`;
    return this.get<InsightsResponse>(`/insights/current${suffix}`);
  }

  metrics(): Promise<MetricsPayload> {
    return this.get<MetricsPayload>("/metrics");
  }

  audit(sinceSeq = 0): Promise<AuditResponse> {
    return this.get<AuditResponse>(`/audit?since_seq=${sinceSeq}`);
  }

  // -- catalog -----------------------------------------------------------------

  listServices(): Promise<{ services: ServiceDescriptor[] }> {
    return this.get<{ services: ServiceDescriptor[] }>("/catalog/services");
  }

  match(profile: RequirementProfile): Promise<MatchResponse> {
    return this.request<MatchResponse>("POST", "/catalog/match", profile);
  }

  provision(ueIds: string[], serviceId: string): Promise<ProvisionResponse> {
    return this.request<ProvisionResponse>("POST", "/catalog/subscriptions", {
      ue_ids: ueIds,
      service_id: serviceId,
    });
  }

  subscription(id: string): Promise<ServiceSubscription> {
    return this.get<ServiceSubscription>(`/catalog/subscriptions/${id}`);
  }

  teardown(id: string): Promise<ServiceSubscription> {
    return this.request<ServiceSubscription>("DELETE", `/catalog/subscriptions/${id}`);
  }

  // -- test and fixture helpers ---------------------------------------------------

  tick(count = 1): Promise<{ tick: number }> {
    return this.request<{ tick: number }>("POST", "/sim/tick", { count });
  }
}
