/** Figure assembly: which CSVs feed which panels, and their series styles.
 *
 * All physics values come from the CSV files; this module only maps data to
 * coordinates.  File name defaults follow the orbitwave CLI default names.
 */

import { contours as d3contours } from "d3-contour";
import { join } from "node:path";

import { col, readTable, CsvError, Table } from "./csv.js";
import { fmt, Panel, renderFigureSvg, Scale } from "./svg.js";

export const FIGURES = [1, 2, 4, 5, 6, 7] as const;
export type FigureId = (typeof FIGURES)[number];

const BLUE = "#1f77b4";
const GRAY = "#999999";
const BLACK = "#000000";
const RED = "#d62728";

export const DEFAULT_FILES: Record<FigureId, string[]> = {
  1: ["oscillator_n10.csv"],
  2: ["density3d_n6_l4_m2.csv"],
  4: ["radial_n10_l0.csv", "radial_n50_l0.csv", "radial_n100_l0.csv"],
  5: ["radial_n10_l5.csv", "radial_n50_l25.csv", "radial_n100_l50.csv"],
  6: ["angular_n10_l5_m1.csv", "angular_n100_l50_m10.csv", "angular_n200_l100_m20.csv"],
  7: ["limit_n5.csv", "limit_n20.csv"],
};

function titleFromName(file: string): string {
  const m = file.match(/_n(\d+)(?:_l(\d+))?(?:_m(\d+))?\.csv$/);
  if (!m) return file;
  const parts = [`n=${m[1]}`];
  if (m[2] !== undefined) parts.push(`l=${m[2]}`);
  if (m[3] !== undefined) parts.push(`m=${m[3]}`);
  return parts.join(", ");
}

function radialPanel(path: string, file: string): Panel {
  const t = readTable(path, ["r_tilde", "p_q", "p_c", "p_c_x2", "p_q_smoothed"]);
  const x = col(t, "r_tilde", path);
  return {
    title: titleFromName(file),
    xLabel: "r / a",
    yLabel: "radial probability density",
    series: [
      { x, y: col(t, "p_c_x2", path), stroke: BLACK, width: 1.0 },
      { x, y: col(t, "p_c", path), stroke: GRAY, width: 1.4 },
      { x, y: col(t, "p_q", path), stroke: BLUE, width: 1.2 },
    ],
  };
}

function angularPanel(path: string, file: string): Panel {
  const t = readTable(path, ["theta", "p_q", "p_c"]);
  const x = col(t, "theta", path);
  return {
    title: titleFromName(file),
    xLabel: "theta (rad)",
    yLabel: "angular probability density",
    series: [
      { x, y: col(t, "p_c", path), stroke: GRAY, width: 1.4 },
      { x, y: col(t, "p_q", path), stroke: BLUE, width: 1.2 },
    ],
  };
}

function oscillatorPanel(path: string, file: string): Panel {
  const t = readTable(path, ["x", "p_q", "p_c"]);
  const x = col(t, "x", path);
  return {
    title: titleFromName(file),
    xLabel: "x (osc. units)",
    yLabel: "probability density",
    series: [
      { x, y: col(t, "p_c", path), stroke: GRAY, width: 1.4 },
      { x, y: col(t, "p_q", path), stroke: BLUE, width: 1.2 },
    ],
  };
}

function limitPanel(path: string, file: string): Panel {
  const t = readTable(path, ["r_tilde", "r_R_n0", "r_R_n1"]);
  const x = col(t, "r_tilde", path);
  return {
    title: titleFromName(file),
    xLabel: "r / a",
    yLabel: "r R(r) / a",
    series: [
      { x, y: col(t, "r_R_n0", path), stroke: BLUE, width: 1.2 },
      { x, y: col(t, "r_R_n1", path), stroke: RED, width: 1.2, dash: "5 3" },
    ],
  };
}

interface Grid {
  rs: number[];
  thetas: number[];
  values: Float64Array; // row-major, theta fastest
}

function gridFromLongTable(t: Table, path: string): Grid {
  const r = col(t, "r_tilde", path);
  const th = col(t, "theta", path);
  const thetas: number[] = [];
  for (let i = 0; i < th.length; i++) {
    if (i > 0 && th[i] <= th[i - 1]) break;
    thetas.push(th[i]);
  }
  const nTheta = thetas.length;
  if (nTheta < 2 || t.rows % nTheta !== 0) {
    throw new CsvError("rows do not form a rectangular (r, theta) grid", path);
  }
  const nR = t.rows / nTheta;
  const rs: number[] = [];
  for (let i = 0; i < nR; i++) rs.push(r[i * nTheta]);
  return { rs, thetas, values: new Float64Array(t.rows) };
}

/** Iso-level contour of a long-format (r, theta, value) table, mapped into the
 * (x, z) = (r sin(theta), r cos(theta)) half-plane. */
function isoContourPath(t: Table, path: string, column: string, iso: number) {
  const grid = gridFromLongTable(t, path);
  grid.values.set(col(t, column, path));
  const nTheta = grid.thetas.length;
  const nR = grid.rs.length;
  const polys = d3contours().size([nTheta, nR]).contour(Array.from(grid.values), iso);
  const mapPoint = (gx: number, gy: number): [number, number] => {
    const tIdx = Math.min(Math.max(gx - 0.5, 0), nTheta - 1);
    const rIdx = Math.min(Math.max(gy - 0.5, 0), nR - 1);
    const lo = Math.floor(tIdx);
    const hi = Math.min(lo + 1, nTheta - 1);
    const theta = grid.thetas[lo] + (grid.thetas[hi] - grid.thetas[lo]) * (tIdx - lo);
    const rlo = Math.floor(rIdx);
    const rhi = Math.min(rlo + 1, nR - 1);
    const rr = grid.rs[rlo] + (grid.rs[rhi] - grid.rs[rlo]) * (rIdx - rlo);
    return [rr * Math.sin(theta), rr * Math.cos(theta)];
  };
  let extent = 0;
  const rings: [number, number][][] = [];
  for (const polygon of polys.coordinates) {
    for (const ring of polygon) {
      const mapped = ring.map(([gx, gy]) => mapPoint(gx, gy));
      for (const [px, pz] of mapped) {
        extent = Math.max(extent, px, Math.abs(pz));
      }
      rings.push(mapped);
    }
  }
  const d = (sx: Scale, sy: Scale): string =>
    rings
      .map((ring) =>
        ring.map(([px, pz], i) => `${i === 0 ? "M" : "L"}${fmt(sx(px))} ${fmt(sy(pz))}`).join("") + "Z")
      .join("");
  return { d, extent, count: rings.length };
}

function densityPanels(path: string, file: string, iso: number): Panel[] {
  const t = readTable(path, ["r_tilde", "theta", "rho_q", "rho_c_product"]);
  const panels: Panel[] = [];
  const specs: [string, string][] = [["rho_q", "quantum |psi|^2"], ["rho_c_product", "classical product"]];
  const paths = specs.map(([column]) => isoContourPath(t, path, column, iso));
  const extent = Math.max(...paths.map((p) => p.extent)) * 1.1 || 1;
  specs.forEach(([, label], i) => {
    panels.push({
      title: `${label} = ${iso} (${titleFromName(file)})`,
      xLabel: "r sin(theta) / a",
      yLabel: "r cos(theta) / a",
      series: [],
      contours: [{ d: paths[i].d, stroke: i === 0 ? BLUE : GRAY }],
      xDomain: [0, extent],
      yDomain: [-extent, extent],
    });
  });
  return panels;
}

export interface RenderOptions {
  dataDir: string;
  files?: string[];
  iso?: number;
}

export function renderFigure(figure: FigureId, opts: RenderOptions): string {
  const files = opts.files ?? DEFAULT_FILES[figure];
  const paths = files.map((f) => join(opts.dataDir, f));
  switch (figure) {
    case 1:
      return renderFigureSvg(paths.map((p, i) => oscillatorPanel(p, files[i])),
        "oscillator: quantum (blue) vs classical (gray)");
    case 2: {
      const iso = opts.iso ?? 1e-5;
      return renderFigureSvg(densityPanels(paths[0], files[0], iso),
        `iso-level ${iso} of the 3D densities, in units of a^-3 (half-plane section)`);
    }
    case 4:
    case 5:
      return renderFigureSvg(paths.map((p, i) => radialPanel(p, files[i])),
        "radial: quantum (blue), classical (gray), doubled classical (black)");
    case 6:
      return renderFigureSvg(paths.map((p, i) => angularPanel(p, files[i])),
        "angular: quantum (blue) vs classical two-branch mean (gray)");
    case 7:
      return renderFigureSvg(paths.map((p, i) => limitPanel(p, files[i])),
        "r R_n0 (blue) vs r R_n1 (red, dashed)");
  }
}
