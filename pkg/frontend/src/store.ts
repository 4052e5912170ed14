// Session state machine around the cost service. The store never computes
// costs or rewrites anything locally: every mutation round-trips to the
// service and the rendered state is rebuilt from its responses.

import { ApiError, CostServiceClient } from "./api.js";
import type { GraphDoc, PreviewBody, Proposal, Validation } from "./types.js";

export type Phase = "empty" | "busy" | "ready" | "invalid" | "error";

export interface ProposalEntry {
  p: Proposal;
  rejected: boolean;
}

export interface PreviewState {
  body: PreviewBody;
  before: GraphDoc;
}

export class SessionStore {
  phase: Phase = "empty";
  error: string | null = null; // blocking (load failed, service gone)
  notice: string | null = null; // transient (stale proposal refreshed, ...)
  sessionId: string | null = null;
  revision = 0;
  cost: number | null = null;
  costEur: string | null = null; // server string, displayed verbatim
  validation: Validation | null = null;
  graphs: GraphDoc[] = [];
  proposals: ProposalEntry[] | null = null;
  preview: PreviewState | null = null;
  costHistory: number[] = [];
  editing: GraphDoc | null = null;
  editValidation: Validation | null = null;
  editError: string | null = null;
  private undoStack: GraphDoc[] = [];

  private listeners: Array<() => void> = [];
  private inFlight = 0;
  private idleWaiters: Array<() => void> = [];

  constructor(readonly client: CostServiceClient) {}

  subscribe(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  // resolves once no store-initiated request is in flight (used by tests)
  idle(): Promise<void> {
    if (this.inFlight === 0) return Promise.resolve();
    return new Promise((resolve) => this.idleWaiters.push(resolve));
  }

  private async track<T>(work: () => Promise<T>): Promise<T> {
    this.inFlight++;
    try {
      return await work();
    } finally {
      this.inFlight--;
      if (this.inFlight === 0) {
        for (const w of this.idleWaiters.splice(0)) w();
      }
    }
  }

  get canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  async loadDocument(doc: GraphDoc, catalogId: string, region?: string): Promise<void> {
    return this.track(async () => {
      this.phase = "busy";
      this.error = null;
      this.notice = null;
      this.preview = null;
      this.proposals = null;
      this.editing = null;
      this.editValidation = null;
      this.editError = null;
      this.undoStack = [];
      this.costHistory = [];
      this.cost = null;
      this.costEur = null;
      this.emit();
      try {
        const r = await this.client.createSession(doc, catalogId, region);
        this.sessionId = r.body.session_id;
        this.revision = r.body.revision;
        this.validation = r.body.validation;
        if (r.status === 200) {
          this.cost = r.body.cost ?? null;
          this.costEur = r.body.cost_eur ?? null;
          if (this.cost !== null) this.costHistory.push(this.cost);
        }
        await this.resync(r.status === 200);
        this.phase = r.status === 200 ? "ready" : "invalid";
      } catch (e) {
        this.phase = "error";
        this.error = e instanceof ApiError ? e.detail : String(e);
      }
      this.emit();
    });
  }

  // pull graphs (and, when priced, cost) back from the single source of truth
  private async resync(withProposals: boolean): Promise<void> {
    if (!this.sessionId) return;
    const s = await this.client.getSession(this.sessionId);
    this.graphs = s.body.graphs;
    this.revision = s.body.revision;
    this.validation = s.body.validation;
    if (s.body.cost_eur !== undefined) {
      this.cost = s.body.cost ?? null;
      this.costEur = s.body.cost_eur;
    }
    if (withProposals && s.body.validation.valid) {
      await this.fetchProposals();
    } else {
      this.proposals = null;
    }
  }

  private async fetchProposals(): Promise<void> {
    if (!this.sessionId) return;
    const r = await this.client.proposals(this.sessionId);
    const rejected = new Set(
      (this.proposals ?? []).filter((e) => e.rejected).map((e) => e.p.id),
    );
    this.proposals = r.body.map((p) => ({ p, rejected: rejected.has(p.id) }));
  }

  async openPreview(pid: string): Promise<void> {
    if (!this.sessionId) return;
    return this.track(async () => {
      try {
        const r = await this.client.preview(this.sessionId!, pid);
        const before = this.graphs[r.body.graph_index];
        if (before) this.preview = { body: r.body, before };
      } catch (e) {
        await this.handleStale(e);
      }
      this.emit();
    });
  }

  closePreview(): void {
    this.preview = null;
    this.emit();
  }

  async accept(pid: string): Promise<void> {
    if (!this.sessionId) return;
    return this.track(async () => {
      try {
        const r = await this.client.apply(this.sessionId!, pid);
        this.revision = r.body.revision;
        this.cost = r.body.new_cost;
        this.costEur = r.body.new_cost_eur;
        this.validation = r.body.validation;
        this.graphs = r.body.graphs;
        this.costHistory.push(r.body.new_cost);
        this.preview = null;
        this.notice = null;
        await this.fetchProposals();
      } catch (e) {
        await this.handleStale(e);
      }
      this.emit();
    });
  }

  reject(pid: string): void {
    for (const e of this.proposals ?? []) {
      if (e.p.id === pid) e.rejected = true;
    }
    if (this.preview?.body.proposal.id === pid) this.preview = null;
    this.emit();
  }

  async acceptAll(): Promise<void> {
    // sequential by design: every apply re-prices and re-ranks the rest
    for (;;) {
      const next = (this.proposals ?? []).find((e) => !e.rejected);
      if (!next || this.phase !== "ready") return;
      await this.accept(next.p.id);
    }
  }

  private async handleStale(e: unknown): Promise<void> {
    if (e instanceof ApiError && e.status === 409 && e.detail.includes("StaleProposal")) {
      this.notice = "Proposals were out of date and have been refreshed.";
      this.preview = null;
      await this.resync(true);
      return;
    }
    if (e instanceof ApiError) {
      this.notice = e.detail;
      return;
    }
    throw e;
  }

  // -- manual editing (single-graph sessions) -------------------------------

  get canEdit(): boolean {
    return this.graphs.length === 1 && (this.phase === "ready" || this.phase === "invalid");
  }

  beginEdit(): void {
    if (!this.canEdit) return;
    this.editing = JSON.parse(JSON.stringify(this.graphs[0])) as GraphDoc;
    this.editValidation = null;
    this.editError = null;
    this.emit();
  }

  cancelEdit(): void {
    this.editing = null;
    this.editValidation = null;
    this.editError = null;
    this.emit();
  }

  replaceEditBuffer(doc: GraphDoc): void {
    this.editing = doc;
    this.editValidation = null;
    this.editError = null;
    this.emit();
  }

  async commitEdit(): Promise<void> {
    if (!this.sessionId || !this.editing) return;
    return this.track(async () => {
      const previous = this.graphs[0];
      try {
        const r = await this.client.replaceGraph(this.sessionId!, this.editing!);
        if (r.status === 422) {
          this.editValidation = r.body.validation;
          this.editError = null;
        } else {
          if (previous) this.undoStack.push(previous);
          this.revision = r.body.revision;
          this.cost = r.body.cost;
          this.costEur = r.body.cost_eur;
          this.validation = r.body.validation;
          this.costHistory.push(r.body.cost);
          this.editing = null;
          this.editValidation = null;
          this.editError = null;
          this.phase = "ready";
          await this.resync(true);
        }
      } catch (e) {
        this.editError = e instanceof ApiError ? e.detail : String(e);
      }
      this.emit();
    });
  }

  async undo(): Promise<void> {
    const previous = this.undoStack.pop();
    if (!previous || !this.sessionId) return;
    return this.track(async () => {
      try {
        const r = await this.client.replaceGraph(this.sessionId!, previous);
        if (r.status === 200) {
          this.revision = r.body.revision;
          this.cost = r.body.cost;
          this.costEur = r.body.cost_eur;
          this.validation = r.body.validation;
          this.costHistory.push(r.body.cost);
          await this.resync(true);
        }
      } catch (e) {
        this.notice = e instanceof ApiError ? e.detail : String(e);
      }
      this.emit();
    });
  }
}
