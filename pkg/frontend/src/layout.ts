// Left-to-right layered layout for small process graphs: sources sit on the
// left, every edge points rightward, and two barycenter passes untangle the
// rows. Deterministic for a given document; no DOM measuring involved.

export interface Point {
  x: number;
  y: number;
}

export interface Layout {
  pos: Map<string, Point>;
  width: number;
  height: number;
}

export const NODE_W = 138;
export const NODE_H = 58;
const COL_GAP = 60;
const ROW_GAP = 34;
const PAD = 18;

export function layeredLayout(nodeIds: string[], edges: Array<[string, string]>): Layout {
  const ids = [...nodeIds];
  const preds = new Map<string, string[]>(ids.map((id) => [id, []]));
  const succs = new Map<string, string[]>(ids.map((id) => [id, []]));
  for (const [a, b] of edges) {
    if (preds.has(b) && succs.has(a)) {
      preds.get(b)!.push(a);
      succs.get(a)!.push(b);
    }
  }

  // longest-path layering via Kahn; anything left over (a cycle in an
  // invalid document) is parked on one extra layer so rendering never hangs
  const layer = new Map<string, number>();
  const indeg = new Map<string, number>(ids.map((id) => [id, preds.get(id)!.length]));
  const queue = ids.filter((id) => indeg.get(id) === 0);
  for (const id of queue) layer.set(id, 0);
  while (queue.length > 0) {
    const u = queue.shift()!;
    for (const v of succs.get(u)!) {
      layer.set(v, Math.max(layer.get(v) ?? 0, layer.get(u)! + 1));
      indeg.set(v, indeg.get(v)! - 1);
      if (indeg.get(v) === 0) queue.push(v);
    }
  }
  const maxSeen = Math.max(0, ...layer.values());
  for (const id of ids) {
    if (!layer.has(id)) layer.set(id, maxSeen + 1);
  }

  const nLayers = Math.max(...layer.values()) + 1;
  const layers: string[][] = Array.from({ length: nLayers }, () => []);
  for (const id of ids) layers[layer.get(id)!]!.push(id);

  // barycenter ordering: forward by predecessors, backward by successors
  const slot = new Map<string, number>();
  const reslot = () => {
    for (const row of layers) row.forEach((id, i) => slot.set(id, i));
  };
  reslot();
  const mean = (xs: string[]) =>
    xs.length === 0 ? Number.POSITIVE_INFINITY : xs.reduce((s, id) => s + slot.get(id)!, 0) / xs.length;
  for (let pass = 0; pass < 2; pass++) {
    for (let k = 1; k < nLayers; k++) {
      layers[k]!.sort((a, b) => mean(preds.get(a)!) - mean(preds.get(b)!) || slot.get(a)! - slot.get(b)!);
      reslot();
    }
    for (let k = nLayers - 2; k >= 0; k--) {
      layers[k]!.sort((a, b) => mean(succs.get(a)!) - mean(succs.get(b)!) || slot.get(a)! - slot.get(b)!);
      reslot();
    }
  }

  const tallest = Math.max(...layers.map((row) => row.length));
  const pos = new Map<string, Point>();
  layers.forEach((row, k) => {
    const offset = ((tallest - row.length) * (NODE_H + ROW_GAP)) / 2;
    row.forEach((id, i) => {
      pos.set(id, {
        x: PAD + k * (NODE_W + COL_GAP),
        y: PAD + offset + i * (NODE_H + ROW_GAP),
      });
    });
  });
  return {
    pos,
    width: PAD * 2 + nLayers * NODE_W + (nLayers - 1) * COL_GAP,
    height: PAD * 2 + tallest * NODE_H + (tallest - 1) * ROW_GAP,
  };
}
