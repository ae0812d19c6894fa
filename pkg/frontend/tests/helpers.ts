/** Spawns real knowledge API fixture servers for the console tests. */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import net from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ConsoleApi } from "../src/api.js";
import { ConsoleSession } from "../src/session.js";
import type { Role } from "../src/types.js";

export const TOKENS: Record<Role, string> = {
  admin: "admintok",
  operator: "optok",
  tenant: "tentok",
  readonly: "rotok",
};

const AUTH_TABLE = {
  principals: [
    { token: "admintok", id: "root", role: "admin" },
    { token: "optok", id: "op", role: "operator" },
    { token: "tentok", id: "ten", role: "tenant" },
    { token: "rotok", id: "ro", role: "readonly" },
  ],
};

export interface FixtureServer {
  url: string;
  stop(): Promise<void>;
  api(role?: Role): ConsoleApi;
  session(role?: Role): ConsoleSession;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const server = net.createServer();
    server.listen(0, "127.0.0.1", () => {
      const address = server.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port assigned"));
        return;
      }
      const port = address.port;
      server.close(() => resolve(port));
    });
  });
}

const DEFAULT_SIM_CONFIG = {
  seed: 5,
  ue_count: 5,
  gnbs: 2,
  cells_per_gnb: 2,
};

export async function spawnServer(simConfig: Record<string, unknown> = {}): Promise<FixtureServer> {
  const dir = mkdtempSync(join(tmpdir(), "kpa-console-"));
  const authPath = join(dir, "auth.json");
  writeFileSync(authPath, JSON.stringify(AUTH_TABLE));
  const configPath = join(dir, "sim.json");
  writeFileSync(configPath, JSON.stringify({ ...DEFAULT_SIM_CONFIG, ...simConfig }));

  const port = await freePort();
  const child: ChildProcess = spawn(
    "python3",
    [
      "-m",
      "kpa.cli",
      "serve",
      "--manual-tick",
      "--port",
      String(port),
      "--auth-table",
      authPath,
      "--config",
      configPath,
    ],
    { stdio: "ignore" },
  );

  const url = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 20000;
  for (;;) {
    try {
      await fetch(`${url}/metrics`);
      break;
    } catch {
      if (child.exitCode !== null) throw new Error("fixture server exited during startup");
      if (Date.now() > deadline) {
        child.kill("SIGKILL");
        throw new Error("fixture server did not start");
      }
      await new Promise((r) => setTimeout(r, 100));
    }
  }

  return {
    url,
    api(role: Role = "admin") {
      return new ConsoleApi(new ConsoleSession(url, TOKENS[role], role));
    },
    session(role: Role = "admin") {
      return new ConsoleSession(url, TOKENS[role], role);
    },
    stop() {
      return new Promise<void>((resolve) => {
        child.once("exit", () => resolve());
        child.kill("SIGTERM");
        setTimeout(() => child.kill("SIGKILL"), 3000).unref();
      });
    },
  };
}

/** The congestion fixture shared with the insight tests on the API side:
 * one small cell with demand far beyond capacity. */
export function congestionConfig(): Record<string, unknown> {
  return {
    seed: 4,
    ue_count: 3,
    gnbs: 1,
    cells_per_gnb: 1,
    prb_capacity_per_cell: 20,
    demand_prbs_range: [8, 12],
    area: [200.0, 200.0],
    power_up_schedule: { "1": ["IMSI_1", "IMSI_2", "IMSI_3"] },
  };
}

/** Deterministic PRNG so "random clicks" are reproducible run to run. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}
