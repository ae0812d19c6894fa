/** Console session: server coordinates, token, role, polling cadence.
 *
 * The console is a pure client; this cache only ever holds data the server
 * can reproduce, and a role change drops it entirely so responses masked
 * for one role never leak into another.
 */

import type { Role } from "./types.js";

export const DEFAULT_POLL_INTERVAL_MS = 1000;

export class ConsoleSession {
  readonly serverUrl: string;
  token: string;
  pollIntervalMs: number;
  private role: Role;
  private cache = new Map<string, unknown>();

  constructor(
    serverUrl: string,
    token: string,
    role: Role = "readonly",
    pollIntervalMs: number = DEFAULT_POLL_INTERVAL_MS,
  ) {
    this.serverUrl = serverUrl.replace(/\/+$/, "");
    this.token = token;
    this.role = role;
    this.pollIntervalMs = pollIntervalMs;
  }

  get selectedRole(): Role {
    return this.role;
  }

  setRole(role: Role, token: string): void {
    this.role = role;
    this.token = token;
    this.cache.clear();
  }

  cacheGet<T>(key: string): T | undefined {
    return this.cache.get(key) as T | undefined;
  }

  cacheSet(key: string, value: unknown): void {
    this.cache.set(key, value);
  }

  get cacheSize(): number {
    return this.cache.size;
  }
}

/** Build a session from URL query parameters: ?server=...&token=...&role=... */
export function sessionFromParams(query: string): ConsoleSession {
  const params = new URLSearchParams(query);
  const server = params.get("server") ?? "http://127.0.0.1:8000";
  const token = params.get("token") ?? "";
  const role = (params.get("role") ?? "readonly") as Role;
  const poll = Number(params.get("poll_ms") ?? DEFAULT_POLL_INTERVAL_MS);
  return new ConsoleSession(server, token, role, poll);
}
