// Shared test plumbing: spawn a real cost service on a free port, wait for
// readiness, and pull exact byte spans out of captured wire traffic.

import { spawn, type ChildProcess } from "node:child_process";
import { createServer } from "node:net";
import type { WireEntry } from "../src/api.js";

export interface ServiceHandle {
  base: string;
  stop: () => void;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const addr = srv.address();
      if (addr && typeof addr === "object") {
        const port = addr.port;
        srv.close(() => resolve(port));
      } else {
        srv.close(() => reject(new Error("no port")));
      }
    });
  });
}

export async function startService(extraArgs: string[] = []): Promise<ServiceHandle> {
  const port = await freePort();
  const child: ChildProcess = spawn("ceppc", ["serve", "--port", String(port), ...extraArgs], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  let log = "";
  child.stdout?.on("data", (d: Buffer) => (log += d.toString()));
  child.stderr?.on("data", (d: Buffer) => (log += d.toString()));
  const base = `http://127.0.0.1:${port}`;
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${base}/healthz`);
      if (r.ok) return { base, stop: () => child.kill() };
    } catch {
      // not up yet
    }
    await sleep(150);
  }
  child.kill();
  throw new Error(`cost service did not come up on ${base}\n${log}`);
}

export function sleep(ms: number): Promise<void> {
  return new Promise((r) => setTimeout(r, ms));
}

export async function until(cond: () => boolean, ms = 30_000): Promise<void> {
  const t0 = Date.now();
  while (!cond()) {
    if (Date.now() - t0 > ms) throw new Error("condition not reached in time");
    await sleep(25);
  }
}

// exact bytes of the n-th `"key":<number>` value across the captured traffic
export function wireNumberBytes(log: WireEntry[], key: string): string[] {
  const out: string[] = [];
  const re = new RegExp(`"${key}":(-?[0-9][0-9.eE+-]*)`, "g");
  for (const entry of log) {
    for (const m of entry.text.matchAll(re)) out.push(m[1]!);
  }
  return out;
}

// exact bytes of every `"key":"<string>"` value across the captured traffic
export function wireStringBytes(log: WireEntry[], key: string): string[] {
  const out: string[] = [];
  const re = new RegExp(`"${key}":"([^"]*)"`, "g");
  for (const entry of log) {
    for (const m of entry.text.matchAll(re)) out.push(m[1]!);
  }
  return out;
}
