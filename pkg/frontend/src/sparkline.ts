// Tiny cost-history sparkline: one polyline, newest point on the right.

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderSparkline(values: number[], width = 150, height = 34): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "sparkline");
  if (values.length === 0) return svg;

  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || 1;
  const pad = 4;
  const step = values.length > 1 ? (width - 2 * pad) / (values.length - 1) : 0;
  const pts = values.map((v, i) => {
    const x = pad + i * step;
    const y = height - pad - ((v - lo) / span) * (height - 2 * pad);
    return `${x.toFixed(1)},${y.toFixed(1)}`;
  });

  const line = document.createElementNS(SVG_NS, "polyline");
  line.setAttribute("points", pts.join(" "));
  line.setAttribute("class", "spark-line");
  svg.append(line);

  const last = pts[pts.length - 1]!.split(",");
  const dot = document.createElementNS(SVG_NS, "circle");
  dot.setAttribute("cx", last[0]!);
  dot.setAttribute("cy", last[1]!);
  dot.setAttribute("r", "2.5");
  dot.setAttribute("class", "spark-dot");
  svg.append(dot);
  return svg;
}
