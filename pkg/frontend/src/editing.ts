// Local edit buffer operations. Contract lists on a node line up with that
// node's incident edges in document order, so every mutation that touches
// edges has to splice the matching contract entries too — otherwise the
// service rejects the document at parse time instead of validating it.

import type { Contract, GraphDoc, GraphNode } from "./types.js";

function clone<T>(v: T): T {
  return JSON.parse(JSON.stringify(v)) as T;
}

function outgoingIndex(doc: GraphDoc, from: string, to: string): number {
  let k = 0;
  for (const [a, b] of doc.edges) {
    if (a !== from) continue;
    if (b === to) return k;
    k++;
  }
  return -1;
}

function incomingIndex(doc: GraphDoc, from: string, to: string): number {
  let k = 0;
  for (const [a, b] of doc.edges) {
    if (b !== to) continue;
    if (a === from) return k;
    k++;
  }
  return -1;
}

function nodeById(doc: GraphDoc, id: string): GraphNode {
  const n = doc.nodes.find((n) => n.id === id);
  if (!n) throw new Error(`no node ${id}`);
  return n;
}

// Remove a node. Its neighbors lose the contract entries that belonged to
// the severed edges; when the node had exactly one predecessor and one
// successor, the two are bridged and keep those contracts, so a clean
// middle-of-chain deletion stays priceable and a lossy one surfaces as a
// validation report rather than a parse error.
export function deleteNodeFromDoc(doc: GraphDoc, id: string): GraphDoc {
  const out = clone(doc);
  nodeById(out, id); // throws on unknown id before we mutate anything
  const predEdges = out.edges.filter(([, b]) => b === id);
  const succEdges = out.edges.filter(([a]) => a === id);

  let bridge: { from: string; to: string; outC: Contract | undefined; inC: Contract | undefined } | null = null;
  if (predEdges.length === 1 && succEdges.length === 1) {
    const from = predEdges[0]![0];
    const to = succEdges[0]![1];
    if (from !== to && !out.edges.some(([a, b]) => a === from && b === to)) {
      bridge = {
        from,
        to,
        outC: nodeById(out, from).out_contracts[outgoingIndex(out, from, id)],
        inC: nodeById(out, to).in_contracts[incomingIndex(out, id, to)],
      };
    }
  }

  for (const [a] of predEdges) {
    const p = nodeById(out, a);
    p.out_contracts.splice(outgoingIndex(out, a, id), 1);
  }
  for (const [, b] of succEdges) {
    const s = nodeById(out, b);
    s.in_contracts.splice(incomingIndex(out, id, b), 1);
  }
  out.edges = out.edges.filter(([a, b]) => a !== id && b !== id);
  out.nodes = out.nodes.filter((n) => n.id !== id);

  if (bridge) {
    out.edges.push([bridge.from, bridge.to]);
    // the appended edge is the last incident edge of both endpoints in
    // document order, so the saved contracts go to the end of their lists
    if (bridge.outC) nodeById(out, bridge.from).out_contracts.push(bridge.outC);
    if (bridge.inC) nodeById(out, bridge.to).in_contracts.push(bridge.inC);
  }
  return out;
}
