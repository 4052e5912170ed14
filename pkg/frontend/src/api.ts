// Thin client for the cost service. Every response's raw text is kept in
// `log` so views can show numbers exactly as the server wrote them and
// tests can replay the wire traffic.

import type {
  ApplyBody,
  EditAccepted,
  GraphDoc,
  PreviewBody,
  Proposal,
  SessionCreated,
  SessionState,
  Validation,
} from "./types.js";

export interface WireEntry {
  method: string;
  path: string;
  status: number;
  text: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

interface CallResult {
  status: number;
  text: string;
  body: unknown;
}

export class CostServiceClient {
  readonly log: WireEntry[] = [];

  constructor(
    readonly base: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async call(method: string, path: string, payload?: unknown): Promise<CallResult> {
    const res = await this.fetchImpl(this.base + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: payload === undefined ? undefined : JSON.stringify(payload),
    });
    const text = await res.text();
    this.log.push({ method, path, status: res.status, text });
    let body: unknown = null;
    try {
      body = JSON.parse(text);
    } catch {
      // non-JSON bodies surface through ApiError below
    }
    return { status: res.status, text, body };
  }

  // statuses in `pass` are returned to the caller; anything else throws
  private async expect(method: string, path: string, payload: unknown, pass: number[]): Promise<CallResult> {
    const r = await this.call(method, path, payload);
    if (!pass.includes(r.status)) {
      const detail =
        r.body && typeof r.body === "object" && "detail" in (r.body as Record<string, unknown>)
          ? String((r.body as Record<string, unknown>).detail)
          : r.text.slice(0, 200);
      throw new ApiError(r.status, detail);
    }
    return r;
  }

  async health(): Promise<{ status: string; catalogs: number; sessions: number }> {
    const r = await this.expect("GET", "/healthz", undefined, [200]);
    return r.body as { status: string; catalogs: number; sessions: number };
  }

  async catalogs(): Promise<string[]> {
    const r = await this.expect("GET", "/catalogs", undefined, [200]);
    return r.body as string[];
  }

  async regions(): Promise<string[]> {
    const r = await this.expect("GET", "/regions", undefined, [200]);
    return r.body as string[];
  }

  // 422 (parseable but rule-breaking graph) still creates a session and is
  // handed back to the caller; 400/404/409 throw.
  async createSession(
    ipcg: GraphDoc,
    catalogId: string,
    region?: string,
  ): Promise<{ status: number; body: SessionCreated; text: string }> {
    const payload: Record<string, unknown> = { ipcg, catalog_id: catalogId };
    if (region) payload.region = region;
    const r = await this.expect("POST", "/sessions", payload, [200, 422]);
    return { status: r.status, body: r.body as SessionCreated, text: r.text };
  }

  async getSession(sid: string): Promise<{ body: SessionState; text: string }> {
    const r = await this.expect("GET", `/sessions/${sid}`, undefined, [200]);
    return { body: r.body as SessionState, text: r.text };
  }

  async proposals(sid: string): Promise<{ body: Proposal[]; text: string }> {
    const r = await this.expect("GET", `/sessions/${sid}/proposals`, undefined, [200]);
    return { body: r.body as Proposal[], text: r.text };
  }

  async preview(sid: string, pid: string): Promise<{ body: PreviewBody; text: string }> {
    const r = await this.expect("GET", `/sessions/${sid}/proposals/${pid}/preview`, undefined, [200]);
    return { body: r.body as PreviewBody, text: r.text };
  }

  async apply(sid: string, pid: string): Promise<{ body: ApplyBody; text: string }> {
    const r = await this.expect("POST", `/sessions/${sid}/apply`, { proposal_id: pid }, [200]);
    return { body: r.body as ApplyBody, text: r.text };
  }

  // 422 returns the validation report without replacing the server graph
  async replaceGraph(
    sid: string,
    ipcg: GraphDoc,
  ): Promise<
    | { status: 200; body: EditAccepted; text: string }
    | { status: 422; body: { validation: Validation }; text: string }
  > {
    const r = await this.expect("POST", `/sessions/${sid}/graph`, { ipcg }, [200, 422]);
    if (r.status === 200) return { status: 200, body: r.body as EditAccepted, text: r.text };
    return { status: 422, body: r.body as { validation: Validation }, text: r.text };
  }
}
