// The service serializes floats the Python way: integral values keep a
// trailing ".0" ("64.0"), everything else is the shortest round-trip form
// ("15.94"). Labels built from parsed JSON must reproduce those bytes, so
// every float that reaches the screen goes through wireFloat.

export function wireFloat(v: number): string {
  return Number.isInteger(v) ? `${v}.0` : String(v);
}

// "filter:remove empty invoices" -> kind "filter", detail "remove empty invoices"
export function splitName(name: string): { kind: string; detail: string } {
  const i = name.indexOf(":");
  if (i < 0) return { kind: name, detail: "" };
  return { kind: name.slice(0, i), detail: name.slice(i + 1) };
}
