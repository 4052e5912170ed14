// SVG rendering of one process graph: type-shaped nodes with shareability
// badges and capacity labels, rightward edges, violation markers, and the
// strike/highlight classes the proposal previews use.

import { layeredLayout, NODE_H, NODE_W } from "./layout.js";
import { splitName, wireFloat } from "./format.js";
import type { GraphDoc, GraphNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface GraphViewOptions {
  caption?: string;
  struck?: Set<string>; // nodes a rewrite would remove (preview, before side)
  added?: Set<string>; // nodes a rewrite introduces (preview, after side)
  markers?: Map<string, string[]>; // violation codes per offending node
  selected?: string | null;
  onSelect?: (id: string) => void;
}

function el<K extends keyof SVGElementTagNameMap>(tag: K, attrs: Record<string, string>): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function text(x: number, y: number, content: string, cls: string): SVGTextElement {
  const t = el("text", { x: String(x), y: String(y), class: cls });
  t.textContent = content;
  return t;
}

// outline per pattern type, drawn inside a NODE_W x NODE_H box
function shapeFor(node: GraphNode, x: number, y: number): SVGElement {
  const w = NODE_W;
  const h = NODE_H;
  switch (node.type) {
    case "start": {
      return el("circle", { cx: String(x + w / 2), cy: String(y + h / 2), r: String(h / 2 - 2), class: "shape" });
    }
    case "end": {
      const g = el("g", {});
      g.append(
        el("circle", { cx: String(x + w / 2), cy: String(y + h / 2), r: String(h / 2 - 2), class: "shape" }),
        el("circle", { cx: String(x + w / 2), cy: String(y + h / 2), r: String(h / 2 - 7), class: "shape inner" }),
      );
      return g;
    }
    case "condition": {
      const pts = [
        [x + w / 2, y],
        [x + w, y + h / 2],
        [x + w / 2, y + h],
        [x, y + h / 2],
      ];
      return el("polygon", { points: pts.map((p) => p.join(",")).join(" "), class: "shape" });
    }
    case "external-call": {
      const c = 14;
      const pts = [
        [x + c, y],
        [x + w - c, y],
        [x + w, y + h / 2],
        [x + w - c, y + h],
        [x + c, y + h],
        [x, y + h / 2],
      ];
      return el("polygon", { points: pts.map((p) => p.join(",")).join(" "), class: "shape" });
    }
    case "fork":
    case "structural-join":
    case "merge": {
      return el("rect", { x: String(x), y: String(y), width: String(w), height: String(h), rx: "4", class: "shape bar" });
    }
    default: {
      return el("rect", { x: String(x), y: String(y), width: String(w), height: String(h), rx: "10", class: "shape" });
    }
  }
}

export function renderGraph(doc: GraphDoc, opts: GraphViewOptions = {}): SVGSVGElement {
  const ids = doc.nodes.map((n) => n.id);
  const { pos, width, height } = layeredLayout(ids, doc.edges);
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    class: "graph",
  });

  const defs = el("defs", {});
  const marker = el("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.append(el("path", { d: "M 0 0 L 10 5 L 0 10 z", class: "arrowhead" }));
  defs.append(marker);
  svg.append(defs);

  const struck = opts.struck ?? new Set<string>();
  for (const [a, b] of doc.edges) {
    const pa = pos.get(a);
    const pb = pos.get(b);
    if (!pa || !pb) continue;
    const x1 = pa.x + NODE_W;
    const y1 = pa.y + NODE_H / 2;
    const x2 = pb.x - 3;
    const y2 = pb.y + NODE_H / 2;
    const bend = Math.max(24, (x2 - x1) / 2);
    const path = el("path", {
      d: `M ${x1} ${y1} C ${x1 + bend} ${y1}, ${x2 - bend} ${y2}, ${x2} ${y2}`,
      class: "edge" + (struck.has(a) || struck.has(b) ? " struck" : ""),
      "marker-end": "url(#arrow)",
    });
    svg.append(path);
  }

  for (const node of doc.nodes) {
    const p = pos.get(node.id);
    if (!p) continue;
    const classes = ["node", `t-${node.type}`];
    if (struck.has(node.id)) classes.push("struck");
    if (opts.added?.has(node.id)) classes.push("added");
    if (opts.selected === node.id) classes.push("selected");
    const codes = opts.markers?.get(node.id);
    if (codes && codes.length > 0) classes.push("violating");
    const g = el("g", { class: classes.join(" "), "data-node": node.id });
    g.append(shapeFor(node, p.x, p.y));

    const { kind, detail } = splitName(node.name);
    const cx = p.x + NODE_W / 2;
    g.append(text(cx, p.y + 18, kind, "kind"));
    g.append(text(cx, p.y + 32, detail.length > 20 ? detail.slice(0, 19) + "…" : detail, "detail"));
    g.append(text(cx, p.y + 48, `${node.id} · ${wireFloat(node.char.cap_mb)} MB`, "meta"));

    const badge = el("g", { class: "badge " + (node.char.sh ? "sh" : "ns") });
    badge.append(
      el("rect", { x: String(p.x + NODE_W - 26), y: String(p.y - 8), width: "26", height: "15", rx: "7" }),
    );
    badge.append(text(p.x + NODE_W - 13, p.y + 3.5, node.char.sh ? "SH" : "NS", "badge-text"));
    g.append(badge);

    if (codes && codes.length > 0) {
      const ring = el("circle", { cx: String(p.x + 2), cy: String(p.y - 1), r: "8", class: "marker" });
      const tip = el("title", {});
      tip.textContent = codes.join(", ");
      ring.append(tip);
      g.append(ring);
    }
    if (opts.onSelect) {
      g.addEventListener("click", () => opts.onSelect!(node.id));
    }
    svg.append(g);
  }
  return svg;
}
