/** Live event ticker fed by the ndjson subscription stream. */

import type { NetworkEvent } from "./types.js";

export type TickerLine = NetworkEvent | { heartbeat: true };

export function parseEventLine(line: string): TickerLine | null {
  const trimmed = line.trim();
  if (!trimmed) return null;
  try {
    const record = JSON.parse(trimmed) as Record<string, unknown>;
    if (record["heartbeat"] === true) return { heartbeat: true };
    if (typeof record["type"] === "string" && typeof record["tick"] === "number") {
      return record as unknown as NetworkEvent;
    }
    return null;
  } catch {
    return null;
  }
}

export class EventTicker {
  readonly events: NetworkEvent[] = [];
  heartbeats = 0;

  constructor(readonly capacity = 50) {}

  push(line: string): void {
    const parsed = parseEventLine(line);
    if (parsed === null) return;
    if ("heartbeat" in parsed) {
      this.heartbeats += 1;
      return;
    }
    this.events.push(parsed);
    while (this.events.length > this.capacity) {
      this.events.shift();
    }
  }

  get latest(): NetworkEvent | null {
    return this.events[this.events.length - 1] ?? null;
  }
}
