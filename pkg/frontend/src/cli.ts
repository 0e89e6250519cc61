#!/usr/bin/env node
/** render --figure {1,2,4,5,6,7} --data-dir <dir> --out <path> [--iso 1e-5] [--files a,b,c] */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { CsvError } from "./csv.js";
import { FIGURES, FigureId, renderFigure } from "./figures.js";

const USAGE =
  "usage: render --figure {1,2,4,5,6,7} --data-dir <dir> --out <file.svg> [--iso <level>] [--files a.csv,b.csv]";

function parseArgs(argv: string[]): Map<string, string> {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`bad arguments near '${key}'\n${USAGE}`);
    }
    args.set(key.slice(2), argv[i + 1]);
  }
  return args;
}

export function main(argv: string[]): number {
  let args: Map<string, string>;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
  const figureRaw = args.get("figure");
  const dataDir = args.get("data-dir");
  const out = args.get("out");
  if (!figureRaw || !dataDir || !out) {
    console.error(`error: --figure, --data-dir and --out are required\n${USAGE}`);
    return 2;
  }
  const figure = Number(figureRaw);
  if (!(FIGURES as readonly number[]).includes(figure)) {
    console.error(`error: unknown figure '${figureRaw}' (choose from ${FIGURES.join(", ")})`);
    return 2;
  }
  const iso = args.has("iso") ? Number(args.get("iso")) : undefined;
  if (iso !== undefined && !(iso > 0)) {
    console.error(`error: --iso must be a positive number, got '${args.get("iso")}'`);
    return 2;
  }
  const files = args.has("files") ? args.get("files")!.split(",").filter((s) => s) : undefined;
  try {
    const svg = renderFigure(figure as FigureId, { dataDir, files, iso });
    mkdirSync(dirname(out), { recursive: true });
    writeFileSync(out, svg);
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${out}`);
  return 0;
}

const invokedDirectly = process.argv[1] && import.meta.url.endsWith(
  process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
