import { describe, expect, it } from "vitest";
import { layeredLayout } from "../src/layout.js";
import { invoicingFixture } from "../src/fixtures.js";

describe("layered layout", () => {
  const ids = invoicingFixture.nodes.map((n) => n.id);
  const edges = invoicingFixture.edges;

  it("puts every edge's source strictly left of its target", () => {
    const { pos } = layeredLayout(ids, edges);
    for (const [a, b] of edges) {
      expect(pos.get(a)!.x).toBeLessThan(pos.get(b)!.x);
    }
  });

  it("gives every node a distinct slot inside the reported bounds", () => {
    const { pos, width, height } = layeredLayout(ids, edges);
    const seen = new Set<string>();
    for (const id of ids) {
      const p = pos.get(id)!;
      const key = `${p.x}/${p.y}`;
      expect(seen.has(key)).toBe(false);
      seen.add(key);
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.y).toBeGreaterThanOrEqual(0);
      expect(p.x).toBeLessThan(width);
      expect(p.y).toBeLessThan(height);
    }
  });

  it("is deterministic", () => {
    const a = layeredLayout(ids, edges);
    const b = layeredLayout(ids, edges);
    expect([...a.pos.entries()]).toEqual([...b.pos.entries()]);
  });

  it("does not hang on a cyclic document", () => {
    const { pos } = layeredLayout(["a", "b"], [["a", "b"], ["b", "a"]]);
    expect(pos.size).toBe(2);
  });
});
