import fs from "node:fs";
import os from "node:os";
import path from "node:path";

export interface FixtureRow {
  index: number;
  tokens: string[];
}

/** Write one word directory in the dataset layout the exporter reads. */
export function writeWordDir(
  root: string,
  word: string,
  labels: string[],
  rows: FixtureRow[],
): string {
  const dir = path.join(root, word);
  fs.mkdirSync(dir, { recursive: true });
  const classes = Object.fromEntries(labels.map((label, i) => [String(i), label]));
  fs.writeFileSync(path.join(dir, "classes_map.txt"), JSON.stringify(classes));
  const lines = rows.map((r) => `${r.index}\t${r.tokens.join(" ")}`);
  fs.writeFileSync(path.join(dir, "test.data.txt"), lines.join("\n") + "\n");
  return dir;
}

export function makeTempDir(prefix: string): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), prefix));
}

export function removeDir(dir: string) {
  fs.rmSync(dir, { recursive: true, force: true });
}

/** Standard two-word fixture used across the suites. */
export function writeToyDataset(root: string) {
  writeWordDir(root, "alpha", ["Alpha_Metal", "Alpha_Animal"], [
    { index: 0, tokens: ["alpha", "smelted", "into", "bars"] },
    { index: 2, tokens: ["the", "wild", "alpha", "grazes"] },
    { index: 1, tokens: ["pure", "alpha", "alloy"] },
  ]);
  writeWordDir(root, "beta", ["Beta_Wave", "Beta_Fish", "Beta_Code"], [
    { index: 0, tokens: ["beta", "oscillations", "in", "the", "cortex"] },
    { index: 3, tokens: ["a", "bright", "blue", "beta"] },
  ]);
  return {
    words: ["alpha", "beta"],
    testCounts: { alpha: 3, beta: 2 },
    senseCounts: { alpha: 2, beta: 3 },
  };
}
