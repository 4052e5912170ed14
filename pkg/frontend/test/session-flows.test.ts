// Store-level flows against a real cost service: preview fidelity, local
// reject, stale-proposal recovery, invalid documents, and the manual edit
// loop with undo.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiError, CostServiceClient } from "../src/api.js";
import { deleteNodeFromDoc } from "../src/editing.js";
import { brokenFixture, invoicingFixture } from "../src/fixtures.js";
import { SessionStore } from "../src/store.js";
import { startService, type ServiceHandle } from "./helpers.js";

let svc: ServiceHandle;

beforeAll(async () => {
  svc = await startService();
});

afterAll(() => {
  svc.stop();
});

function freshStore(): SessionStore {
  return new SessionStore(new CostServiceClient(svc.base));
}

describe("loading", () => {
  it("prices a valid document and fetches ranked proposals", async () => {
    const store = freshStore();
    await store.loadDocument(invoicingFixture, "aws_t2");
    expect(store.phase).toBe("ready");
    expect(store.costEur).toBe("15.94");
    expect(store.graphs).toHaveLength(1);
    expect(store.proposals!.length).toBeGreaterThan(0);
    expect(store.proposals![0]!.p.id.startsWith("r0-")).toBe(true);
  });

  it("keeps an invalid document's session and shows its violations", async () => {
    const store = freshStore();
    await store.loadDocument(brokenFixture, "aws_t2");
    expect(store.phase).toBe("invalid");
    expect(store.costEur).toBeNull();
    expect(store.validation!.valid).toBe(false);
    const codes = store.validation!.violations.map((v) => v.code);
    expect(codes).toContain("MISSING_END");
    // the retained graph is still rendered from the server's copy
    expect(store.graphs).toHaveLength(1);
    expect(store.proposals).toBeNull();
  });

  it("surfaces an unknown catalog as a blocking error", async () => {
    const store = freshStore();
    await store.loadDocument(invoicingFixture, "no-such-catalog");
    expect(store.phase).toBe("error");
    expect(store.error).toMatch(/unknown catalog/);
  });
});

describe("preview and reject", () => {
  it("preview shows the rewrite without touching the session", async () => {
    const store = freshStore();
    await store.loadDocument(invoicingFixture, "aws_t2");
    const pid = store.proposals![0]!.p.id;
    const revBefore = store.revision;
    await store.openPreview(pid);
    expect(store.preview).not.toBeNull();
    expect(store.preview!.body.removed_node_ids.length).toBeGreaterThan(0);
    // before-graph still carries the nodes the rewrite would remove
    const beforeIds = new Set(store.preview!.before.nodes.map((n) => n.id));
    for (const id of store.preview!.body.removed_node_ids) {
      expect(beforeIds.has(id)).toBe(true);
    }
    // after-graphs do not
    for (const g of store.preview!.body.graphs) {
      for (const id of store.preview!.body.removed_node_ids) {
        expect(g.nodes.some((n) => n.id === id)).toBe(false);
      }
    }
    expect(store.revision).toBe(revBefore);
  });

  it("reject dims the proposal locally and leaves the graph alone", async () => {
    const store = freshStore();
    await store.loadDocument(invoicingFixture, "aws_t2");
    const before = JSON.stringify(store.graphs);
    const pid = store.proposals![0]!.p.id;
    store.reject(pid);
    expect(store.proposals!.find((e) => e.p.id === pid)!.rejected).toBe(true);
    expect(JSON.stringify(store.graphs)).toBe(before);
    // accept-all then skips it but still drains the rest
    await store.acceptAll();
    expect(store.proposals!.every((e) => e.rejected || false)).toBe(true);
  });

  it("a stale proposal id triggers a refresh instead of a crash", async () => {
    const store = freshStore();
    await store.loadDocument(invoicingFixture, "aws_t2");
    const [first, second] = store.proposals!.map((e) => e.p.id);
    await store.accept(first!);
    expect(store.revision).toBe(1);
    await store.accept(second!); // enumerated against revision 0 -> stale
    expect(store.notice).toMatch(/refreshed/i);
    expect(store.proposals!.every((e) => e.p.id.startsWith("r1-"))).toBe(true);
  });
});

describe("manual editing", () => {
  it("deleting a pass-through pattern re-prices the model", async () => {
    const store = freshStore();
    await store.loadDocument(invoicingFixture, "aws_t2");
    const costBefore = store.costEur;
    const revBefore = store.revision;
    store.beginEdit();
    expect(store.editing).not.toBeNull();
    // st1 copies its contract through, so bridging its neighbors stays valid
    store.replaceEditBuffer(deleteNodeFromDoc(store.editing!, "st1"));
    await store.commitEdit();
    expect(store.editing).toBeNull();
    expect(store.revision).toBe(revBefore + 1);
    expect(store.costEur).not.toBeNull();
    expect(store.graphs[0]!.nodes.some((n) => n.id === "st1")).toBe(false);
    expect(store.canUndo).toBe(true);
    // proposals were re-enumerated against the new revision
    expect(store.proposals!.every((e) => e.p.id.startsWith(`r${store.revision}-`))).toBe(true);

    await store.undo();
    expect(store.costEur).toBe(costBefore);
    expect(store.graphs[0]!.nodes.some((n) => n.id === "st1")).toBe(true);
    expect(store.canUndo).toBe(false);
  });

  it("an edit that breaks a contract is reported and not committed", async () => {
    const store = freshStore();
    await store.loadDocument(invoicingFixture, "aws_t2");
    const revBefore = store.revision;
    store.beginEdit();
    // e2's neighbors don't agree with each other, so bridging them mismatches
    store.replaceEditBuffer(deleteNodeFromDoc(store.editing!, "e2"));
    await store.commitEdit();
    expect(store.editing).not.toBeNull(); // buffer kept for fixing
    expect(store.editValidation).not.toBeNull();
    expect(store.editValidation!.valid).toBe(false);
    expect(store.editValidation!.violations.map((v) => v.code)).toContain("CONTRACT_MISMATCH");
    expect(store.revision).toBe(revBefore); // server graph untouched
  });
});

describe("client error mapping", () => {
  it("throws typed errors carrying the service's detail text", async () => {
    const client = new CostServiceClient(svc.base);
    await expect(client.getSession("zzz")).rejects.toMatchObject({ status: 404 });
    try {
      await client.apply("zzz", "r0-p0");
      expect.unreachable();
    } catch (e) {
      expect(e).toBeInstanceOf(ApiError);
      expect((e as ApiError).detail).toMatch(/unknown session/);
    }
  });
});
