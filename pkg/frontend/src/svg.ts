/** Minimal deterministic SVG construction: fixed sizes, fixed formatting, no ids. */

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = d1 === d0 ? 0 : (r1 - r0) / (d1 - d0);
  const f = ((v: number) => r0 + (v - d0) * k) as Scale;
  f.domain = domain;
  return f;
}

/** Fixed-point coordinate formatting keeps output byte-stable. */
export function fmt(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

/** Trim trailing zeros for tick labels (still deterministic). */
export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) {
    return String(Number(v.toPrecision(4)));
  }
  return v.toExponential(1).replace("e", "e");
}

export function polylinePath(xs: ArrayLike<number>, ys: ArrayLike<number>,
                             sx: Scale, sy: Scale): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    parts.push(`${i === 0 ? "M" : "L"}${fmt(sx(xs[i]))} ${fmt(sy(ys[i]))}`);
  }
  return parts.join("");
}

export function niceTicks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const step0 = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (mag * m >= step0) {
      step = mag * m;
      break;
    }
  }
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

export interface PanelSeries {
  x: ArrayLike<number>;
  y: ArrayLike<number>;
  stroke: string;
  width: number;
  dash?: string;
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  series: PanelSeries[];
  /** optional pre-built path data in data coordinates, drawn as closed regions */
  contours?: { d: (sx: Scale, sy: Scale) => string; stroke: string }[];
  xDomain?: [number, number];
  yDomain?: [number, number];
}

const PANEL_W = 340;
const PANEL_H = 280;
const MARGIN = { left: 58, right: 14, top: 30, bottom: 44 };

function dataDomain(panel: Panel): { x: [number, number]; y: [number, number] } {
  let xlo = Infinity, xhi = -Infinity, ylo = Infinity, yhi = -Infinity;
  for (const s of panel.series) {
    for (let i = 0; i < s.x.length; i++) {
      const xv = s.x[i], yv = s.y[i];
      if (xv < xlo) xlo = xv;
      if (xv > xhi) xhi = xv;
      if (yv < ylo) ylo = yv;
      if (yv > yhi) yhi = yv;
    }
  }
  if (!Number.isFinite(xlo)) { xlo = 0; xhi = 1; ylo = 0; yhi = 1; }
  if (panel.xDomain) [xlo, xhi] = panel.xDomain;
  if (panel.yDomain) [ylo, yhi] = panel.yDomain;
  if (yhi === ylo) yhi = ylo + 1;
  return { x: [xlo, xhi], y: [ylo, yhi] };
}

function renderPanel(panel: Panel, ox: number, oy: number): string {
  const inner: Box = {
    x: ox + MARGIN.left,
    y: oy + MARGIN.top,
    width: PANEL_W - MARGIN.left - MARGIN.right,
    height: PANEL_H - MARGIN.top - MARGIN.bottom,
  };
  const dom = dataDomain(panel);
  const sx = linearScale(dom.x, [inner.x, inner.x + inner.width]);
  const sy = linearScale(dom.y, [inner.y + inner.height, inner.y]);
  const out: string[] = [];
  out.push(`<rect x="${fmt(inner.x)}" y="${fmt(inner.y)}" width="${fmt(inner.width)}" height="${fmt(inner.height)}" fill="none" stroke="#444" stroke-width="1"/>`);
  for (const t of niceTicks(dom.x[0], dom.x[1], 5)) {
    const px = sx(t);
    out.push(`<line x1="${fmt(px)}" y1="${fmt(inner.y + inner.height)}" x2="${fmt(px)}" y2="${fmt(inner.y + inner.height + 4)}" stroke="#444" stroke-width="1"/>`);
    out.push(`<text x="${fmt(px)}" y="${fmt(inner.y + inner.height + 16)}" font-size="10" text-anchor="middle" fill="#222">${fmtTick(t)}</text>`);
  }
  for (const t of niceTicks(dom.y[0], dom.y[1], 5)) {
    const py = sy(t);
    out.push(`<line x1="${fmt(inner.x - 4)}" y1="${fmt(py)}" x2="${fmt(inner.x)}" y2="${fmt(py)}" stroke="#444" stroke-width="1"/>`);
    out.push(`<text x="${fmt(inner.x - 7)}" y="${fmt(py + 3)}" font-size="10" text-anchor="end" fill="#222">${fmtTick(t)}</text>`);
  }
  out.push(`<text x="${fmt(ox + PANEL_W / 2)}" y="${fmt(oy + 16)}" font-size="12" text-anchor="middle" fill="#000">${panel.title}</text>`);
  out.push(`<text x="${fmt(ox + PANEL_W / 2)}" y="${fmt(oy + PANEL_H - 8)}" font-size="11" text-anchor="middle" fill="#000">${panel.xLabel}</text>`);
  out.push(`<text x="${fmt(ox + 14)}" y="${fmt(oy + PANEL_H / 2)}" font-size="11" text-anchor="middle" fill="#000" transform="rotate(-90 ${fmt(ox + 14)} ${fmt(oy + PANEL_H / 2)})">${panel.yLabel}</text>`);
  out.push(`<clipPath id="clip-${fmt(ox)}-${fmt(oy)}"><rect x="${fmt(inner.x)}" y="${fmt(inner.y)}" width="${fmt(inner.width)}" height="${fmt(inner.height)}"/></clipPath>`);
  out.push(`<g clip-path="url(#clip-${fmt(ox)}-${fmt(oy)})">`);
  for (const s of panel.series) {
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    out.push(`<path d="${polylinePath(s.x, s.y, sx, sy)}" fill="none" stroke="${s.stroke}" stroke-width="${s.width}"${dash}/>`);
  }
  for (const c of panel.contours ?? []) {
    out.push(`<path d="${c.d(sx, sy)}" fill="none" stroke="${c.stroke}" stroke-width="1.5"/>`);
  }
  out.push("</g>");
  return out.join("\n");
}

export function renderFigureSvg(panels: Panel[], caption: string): string {
  const width = PANEL_W * panels.length;
  const height = PANEL_H + 22;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`);
  parts.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`);
  panels.forEach((p, i) => parts.push(renderPanel(p, i * PANEL_W, 0)));
  parts.push(`<text x="${fmt(width / 2)}" y="${fmt(height - 6)}" font-size="11" text-anchor="middle" fill="#333">${caption}</text>`);
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
