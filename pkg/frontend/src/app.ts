// Cockpit wiring: toolbar (service / catalog / region / fixture / file),
// cost badge with history sparkline, the graph canvas, the ranked proposal
// list with previews, and the manual-edit sidebar. All numbers on screen
// come straight off the wire — the cost strings verbatim, floats through
// wireFloat — so the display always matches what the service said.

import { CostServiceClient } from "./api.js";
import { deleteNodeFromDoc } from "./editing.js";
import { brokenFixture, invoicingFixture } from "./fixtures.js";
import { splitName, wireFloat } from "./format.js";
import { renderGraph } from "./graphview.js";
import { renderSparkline } from "./sparkline.js";
import { SessionStore } from "./store.js";
import type { GraphDoc, Validation } from "./types.js";

export interface MountOptions {
  service?: string;
  fetchImpl?: typeof fetch;
}

export interface Mounted {
  client: CostServiceClient;
  store: SessionStore;
  connect: (base: string) => Promise<void>;
}

const FIXTURES: Record<string, GraphDoc> = {
  invoicing: invoicingFixture,
  "broken sample": brokenFixture,
};

function h<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

function violationsByNode(validation: Validation | null, graphIndex: number, nGraphs: number): Map<string, string[]> {
  const m = new Map<string, string[]>();
  for (const v of validation?.violations ?? []) {
    const g = nGraphs > 1 ? (v.graph ?? 0) : 0;
    if (g !== graphIndex) continue;
    if (!m.has(v.ref)) m.set(v.ref, []);
    m.get(v.ref)!.push(v.code);
  }
  return m;
}

export function mountApp(root: HTMLElement, opts: MountOptions = {}): Mounted {
  root.innerHTML = "";
  root.classList.add("cockpit");

  // -- static frame ----------------------------------------------------------
  const svcInput = h("input", { id: "svc-url", type: "text", spellcheck: "false" });
  svcInput.value = opts.service ?? "http://127.0.0.1:8080";
  const connectBtn = h("button", { id: "connect" }, "Connect");
  const catalogSel = h("select", { id: "catalog" });
  const regionSel = h("select", { id: "region" });
  const fixtureSel = h("select", { id: "fixture" });
  for (const name of Object.keys(FIXTURES)) fixtureSel.append(h("option", { value: name }, name));
  const loadBtn = h("button", { id: "load" }, "Load");
  const fileInput = h("input", { id: "file", type: "file", accept: ".json,application/json" });
  fileInput.style.display = "none";
  const fileBtn = h("button", { id: "open-file" }, "Open file…");
  const acceptAllBtn = h("button", { id: "accept-all" }, "Accept all");
  const editBtn = h("button", { id: "edit" }, "Edit graph");

  const toolbar = h(
    "header",
    { class: "toolbar" },
    h("span", { class: "brand" }, "cepp modeler"),
    h("label", {}, "service ", svcInput),
    connectBtn,
    h("label", {}, "catalog ", catalogSel),
    h("label", {}, "region ", regionSel),
    h("label", {}, "fixture ", fixtureSel),
    loadBtn,
    fileBtn,
    fileInput,
    h("span", { class: "spacer" }),
    acceptAllBtn,
    editBtn,
  );

  const status = h("div", { class: "status", id: "status" });
  const canvas = h("section", { class: "canvas", id: "canvas" });
  const side = h("aside", { class: "side", id: "side" });
  const footer = h("footer", { class: "foot", id: "foot" });
  root.append(toolbar, status, h("main", { class: "split" }, canvas, side), footer);

  // -- session + client ------------------------------------------------------
  let client = new CostServiceClient(svcInput.value, opts.fetchImpl);
  let store = new SessionStore(client);
  let selectedNode: string | null = null;
  let connectError: string | null = null;

  async function connect(base: string): Promise<void> {
    client = new CostServiceClient(base, opts.fetchImpl);
    store = new SessionStore(client);
    store.subscribe(render);
    mounted.client = client;
    mounted.store = store;
    selectedNode = null;
    connectError = null;
    try {
      const [cats, regs] = await Promise.all([client.catalogs(), client.regions()]);
      catalogSel.innerHTML = "";
      for (const c of cats) catalogSel.append(h("option", { value: c }, c));
      if (cats.includes("aws_t2")) catalogSel.value = "aws_t2";
      regionSel.innerHTML = "";
      regionSel.append(h("option", { value: "" }, "(none)"));
      for (const r of regs) regionSel.append(h("option", { value: r }, r));
    } catch (e) {
      connectError = `cost service unreachable at ${base}: ${String(e)}`;
    }
    render();
  }

  async function loadDoc(doc: GraphDoc): Promise<void> {
    selectedNode = null;
    await store.loadDocument(doc, catalogSel.value, regionSel.value || undefined);
  }

  connectBtn.addEventListener("click", () => void connect(svcInput.value));
  loadBtn.addEventListener("click", () => void loadDoc(FIXTURES[fixtureSel.value] ?? invoicingFixture));
  fileBtn.addEventListener("click", () => fileInput.click());
  fileInput.addEventListener("change", () => {
    const f = fileInput.files?.[0];
    if (!f) return;
    void f.text().then((text) => loadDoc(JSON.parse(text) as GraphDoc));
  });
  acceptAllBtn.addEventListener("click", () => void store.acceptAll());
  editBtn.addEventListener("click", () => {
    if (store.editing) store.cancelEdit();
    else store.beginEdit();
  });

  // -- rendering --------------------------------------------------------------
  function render(): void {
    renderStatus();
    renderCanvas();
    renderSide();
    footer.textContent = `${client.log.length} HTTP call(s) · session ${store.sessionId ?? "—"}`;
    acceptAllBtn.toggleAttribute("disabled", store.phase !== "ready" || !(store.proposals ?? []).length);
    editBtn.toggleAttribute("disabled", !store.canEdit && !store.editing);
    editBtn.textContent = store.editing ? "Exit edit" : "Edit graph";
  }

  function renderStatus(): void {
    status.innerHTML = "";
    const cost = h("span", { class: "cost-badge" });
    if (store.costEur !== null) {
      cost.append(h("span", { id: "cost", "data-wire": "cost_eur" }, store.costEur), " EUR/mo");
    } else {
      cost.append(h("span", { id: "cost" }, "—"));
    }
    status.append(cost);
    status.append(h("span", { class: "chip", id: "rev", "data-rev": String(store.revision) }, `rev ${store.revision}`));
    if (store.phase === "busy") status.append(h("span", { class: "chip busy" }, "working…"));
    status.append(renderSparkline(store.costHistory));

    if (connectError) status.append(h("span", { class: "banner error" }, connectError));
    if (store.error) status.append(h("span", { class: "banner error" }, store.error));
    if (store.notice) status.append(h("span", { class: "banner notice" }, store.notice));
    const v = store.editValidation ?? store.validation;
    if (v && !v.valid) {
      const codes = v.violations.map((x) => x.code).join(", ");
      status.append(h("span", { class: "banner invalid", id: "violations" }, `invalid: ${codes}`));
    }
  }

  function renderCanvas(): void {
    canvas.innerHTML = "";
    if (store.editing) {
      const markers = violationsByNode(store.editValidation, 0, 1);
      const section = h("section", { class: "graph-box editing" });
      section.append(h("div", { class: "caption" }, `edit buffer · ${store.editing.nodes.length} patterns`));
      section.append(
        renderGraph(store.editing, {
          markers,
          selected: selectedNode,
          onSelect: (id) => {
            selectedNode = id;
            render();
          },
        }),
      );
      canvas.append(section);
      return;
    }
    if (store.graphs.length === 0) {
      canvas.append(h("div", { class: "empty" }, "Load a fixture or open a document to begin."));
      return;
    }
    store.graphs.forEach((g, i) => {
      const markers = violationsByNode(store.validation, i, store.graphs.length);
      const section = h("section", { class: "graph-box" });
      section.append(h("div", { class: "caption" }, `g${i} · tenant ${g.tenant} · ${g.nodes.length} patterns`));
      section.append(renderGraph(g, { markers }));
      canvas.append(section);
    });
  }

  function renderSide(): void {
    side.innerHTML = "";
    if (store.editing) {
      renderInspector();
      return;
    }
    if (store.preview) {
      renderPreview();
      return;
    }
    side.append(h("h2", {}, "Proposals"));
    if (store.phase === "invalid") {
      side.append(h("div", { class: "side-note" }, "The model is invalid; fix the marked patterns to get proposals."));
      return;
    }
    const entries = store.proposals;
    if (entries === null) {
      side.append(h("div", { class: "side-note" }, "No session yet."));
      return;
    }
    if (entries.length === 0) {
      side.append(h("div", { class: "side-note", id: "no-proposals" }, "No proposals — the model is at its cost floor."));
      return;
    }
    for (const e of entries) {
      const card = h("div", { class: "card" + (e.rejected ? " dimmed" : ""), "data-pid": e.p.id });
      card.append(h("div", { class: "rule" }, e.p.rule));
      card.append(h("div", { class: "desc" }, e.p.description));
      card.append(
        h(
          "div",
          { class: "nums" },
          h("span", { "data-wire": "cost_before_eur" }, wireFloat(e.p.cost_before_eur)),
          " → ",
          h("span", { "data-wire": "cost_after_eur" }, wireFloat(e.p.cost_after_eur)),
          ` EUR/mo · −${e.p.nodes_removed} pattern(s)`,
        ),
      );
      const previewBtn = h("button", { class: "preview-btn" }, "Preview");
      const acceptBtn = h("button", { class: "accept-btn" }, "Accept");
      const rejectBtn = h("button", { class: "reject-btn" }, "Reject");
      previewBtn.addEventListener("click", () => void store.openPreview(e.p.id));
      acceptBtn.addEventListener("click", () => void store.accept(e.p.id));
      rejectBtn.addEventListener("click", () => store.reject(e.p.id));
      card.append(h("div", { class: "card-actions" }, previewBtn, acceptBtn, rejectBtn));
      side.append(card);
    }
  }

  function renderPreview(): void {
    const pv = store.preview!;
    const p = pv.body.proposal;
    side.append(h("h2", {}, "Preview"));
    side.append(h("div", { class: "rule" }, p.rule));
    side.append(h("div", { class: "desc" }, p.description));
    side.append(
      h(
        "div",
        { class: "nums" },
        h("span", { "data-wire": "cost_before_eur" }, wireFloat(p.cost_before_eur)),
        " → ",
        h("span", { "data-wire": "cost_after_eur" }, wireFloat(p.cost_after_eur)),
        " EUR/mo",
      ),
    );
    const removed = new Set(pv.body.removed_node_ids);
    const added = new Set(pv.body.added_node_ids);
    const beforeBox = h("div", { class: "pv-box" }, h("div", { class: "caption" }, "before"));
    beforeBox.append(renderGraph(pv.before, { struck: removed }));
    side.append(beforeBox);
    pv.body.graphs.forEach((g, i) => {
      const afterBox = h("div", { class: "pv-box" });
      afterBox.append(h("div", { class: "caption" }, `after · ${pv.body.graph_ids[i] ?? `g${i}`}`));
      afterBox.append(renderGraph(g, { added }));
      side.append(afterBox);
    });
    const acceptBtn = h("button", { class: "accept-btn" }, "Accept");
    const rejectBtn = h("button", { class: "reject-btn" }, "Reject");
    const closeBtn = h("button", { class: "close-btn" }, "Close");
    acceptBtn.addEventListener("click", () => void store.accept(p.id));
    rejectBtn.addEventListener("click", () => store.reject(p.id));
    closeBtn.addEventListener("click", () => store.closePreview());
    side.append(h("div", { class: "card-actions" }, acceptBtn, rejectBtn, closeBtn));
  }

  function renderInspector(): void {
    side.append(h("h2", {}, "Edit"));
    const buf = store.editing!;
    if (selectedNode && buf.nodes.some((n) => n.id === selectedNode)) {
      const n = buf.nodes.find((x) => x.id === selectedNode)!;
      const { kind, detail } = splitName(n.name);
      side.append(
        h(
          "div",
          { class: "inspect" },
          h("div", { class: "rule" }, `${n.id} · ${kind}`),
          h("div", { class: "desc" }, detail || "—"),
          h(
            "div",
            { class: "nums" },
            `${n.type} · ${wireFloat(n.char.cap_mb)} MB · ${n.char.sh ? "shareable" : "non-shareable"}`,
          ),
          h("div", { class: "nums" }, `${n.in_contracts.length} in / ${n.out_contracts.length} out contracts`),
        ),
      );
      const delBtn = h("button", { class: "delete-btn" }, "Delete pattern");
      delBtn.addEventListener("click", () => {
        store.replaceEditBuffer(deleteNodeFromDoc(buf, selectedNode!));
        selectedNode = null;
      });
      side.append(h("div", { class: "card-actions" }, delBtn));
    } else {
      side.append(h("div", { class: "side-note" }, "Click a pattern to inspect it."));
    }
    if (store.editError) side.append(h("div", { class: "banner error" }, store.editError));
    const commitBtn = h("button", { class: "commit-btn", id: "revalidate" }, "Re-validate & price");
    const undoBtn = h("button", { class: "undo-btn", id: "undo" }, "Undo");
    undoBtn.toggleAttribute("disabled", !store.canUndo);
    commitBtn.addEventListener("click", () => void store.commitEdit());
    undoBtn.addEventListener("click", () => void store.undo());
    side.append(h("div", { class: "card-actions" }, commitBtn, undoBtn));
  }

  const mounted: Mounted = { client, store, connect };
  store.subscribe(render);
  render();
  void connect(svcInput.value);
  return mounted;
}
