// The accept-everything loop, driven through the mounted UI against a real
// cost service: load the invoicing fixture, click Accept until the proposal
// list is empty, and check that every number on screen is byte-identical to
// what came over the wire.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { mountApp, type Mounted } from "../src/app.js";
import { startService, until, wireNumberBytes, wireStringBytes, type ServiceHandle } from "./helpers.js";

let svc: ServiceHandle;
let m: Mounted;

beforeAll(async () => {
  svc = await startService();
});

afterAll(() => {
  svc.stop();
});

function $(sel: string): HTMLElement {
  const el = document.querySelector(sel);
  if (!el) throw new Error(`missing ${sel}`);
  return el as HTMLElement;
}

function costBadge(): string {
  return $("#cost").textContent ?? "";
}

describe("accept-all loop on the invoicing fixture", () => {
  it("ends at the service's floor with an empty proposal list", async () => {
    document.body.innerHTML = '<div id="app"></div>';
    m = mountApp($("#app"), { service: svc.base });

    // toolbar comes alive once the catalog list arrives
    await until(() => ($("#catalog") as HTMLSelectElement).options.length > 0);
    ($("#fixture") as HTMLSelectElement).value = "invoicing";
    $("#load").click();
    await until(() => costBadge() !== "" && costBadge() !== "—");
    await m.store.idle();

    // initial price straight from the create response
    const created = wireStringBytes(m.client.log, "cost_eur");
    expect(created.length).toBeGreaterThan(0);
    expect(costBadge()).toBe(created[0]);

    // click Accept on the top card until no cards remain
    for (let guard = 0; guard < 10; guard++) {
      const btn = document.querySelector<HTMLButtonElement>(".card .accept-btn");
      if (!btn) break;
      const revBefore = $("#rev").getAttribute("data-rev");
      btn.click();
      await until(() => $("#rev").getAttribute("data-rev") !== revBefore);
      await m.store.idle();
    }

    // empty list rendered, and the server agrees
    expect(document.querySelector(".card .accept-btn")).toBeNull();
    expect($("#no-proposals").textContent).toMatch(/no proposals/i);
    const fresh = await m.client.proposals(m.store.sessionId!);
    expect(fresh.body).toEqual([]);

    // badge shows the last applied cost exactly as the service wrote it
    const applied = wireStringBytes(m.client.log, "new_cost_eur");
    expect(applied.length).toBeGreaterThan(0);
    expect(costBadge()).toBe(applied[applied.length - 1]);
    expect(costBadge()).toBe("7.97");

    // the canvas is the server's graph, node for node
    const session = await m.client.getSession(m.store.sessionId!);
    const serverIds = session.body.graphs.flatMap((g) => g.nodes.map((n) => n.id)).sort();
    const shownIds = [...document.querySelectorAll("#canvas [data-node]")]
      .map((el) => el.getAttribute("data-node"))
      .sort();
    expect(shownIds).toEqual(serverIds);

    // every wire-tagged number on screen appeared byte-identically in a response
    const numberBytes = new Set([
      ...wireNumberBytes(m.client.log, "cost_before_eur"),
      ...wireNumberBytes(m.client.log, "cost_after_eur"),
    ]);
    const stringBytes = new Set([
      ...wireStringBytes(m.client.log, "cost_eur"),
      ...wireStringBytes(m.client.log, "new_cost_eur"),
    ]);
    const tagged = [...document.querySelectorAll("[data-wire]")];
    expect(tagged.length).toBeGreaterThan(0);
    for (const el of tagged) {
      const key = el.getAttribute("data-wire")!;
      const text = el.textContent ?? "";
      const pool = key === "cost_eur" || key === "new_cost_eur" ? stringBytes : numberBytes;
      expect(pool.has(text), `${key}=${text} not seen on the wire`).toBe(true);
    }
  });

  it("kept a full history: one cost point per applied proposal plus the start", () => {
    expect(m.store.costHistory.length).toBeGreaterThanOrEqual(2);
    const first = m.store.costHistory[0]!;
    const last = m.store.costHistory[m.store.costHistory.length - 1]!;
    expect(last).toBeLessThan(first);
    // monotone non-increasing: accepting never made the model dearer
    for (let i = 1; i < m.store.costHistory.length; i++) {
      expect(m.store.costHistory[i]!).toBeLessThanOrEqual(m.store.costHistory[i - 1]!);
    }
  });
});
