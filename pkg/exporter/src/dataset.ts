/**
 * Readers for the word-sense dataset layout consumed by the wsdsim cache.
 *
 * Layout on disk, one directory per ambiguous word:
 *
 *   <root>/<word>/classes_map.txt    JSON {"0": "label_0", "1": "label_1", ...}
 *   <root>/<word>/test.data.txt      "<target_index>\t<tok> <tok> ..." per line
 *
 * Instance ids follow the shared convention "<word>.test.<line>" with 0-based
 * line numbers, so caches written here line up with the evaluation side.
 */

import fs from "node:fs";
import path from "node:path";

export class DatasetError extends Error {
  constructor(message: string, file?: string, line?: number) {
    const where =
      file !== undefined ? (line !== undefined ? `${file}:${line}: ` : `${file}: `) : "";
    super(`${where}${message}`);
    this.name = "DatasetError";
  }
}

export interface SenseEntry {
  senseId: number;
  label: string;
  descriptor: string;
}

export interface InstanceEntry {
  id: string;
  targetIndex: number;
  tokens: string[];
}

export interface WordRecords {
  word: string;
  senses: SenseEntry[];
  instances: InstanceEntry[];
}

export type Overrides = Record<string, Record<number, string>>;

export function instanceId(word: string, split: string, lineIndex: number): string {
  return `${word}.${split}.${lineIndex}`;
}

/** Underscores to spaces, whitespace collapsed, lowercased. */
export function normalizeLabel(label: string): string {
  return label.replace(/_/g, " ").trim().split(/\s+/).join(" ").toLowerCase();
}

export function listWords(root: string): string[] {
  let entries: fs.Dirent[];
  try {
    entries = fs.readdirSync(root, { withFileTypes: true });
  } catch {
    throw new DatasetError("dataset root is not a readable directory", root);
  }
  const words = entries
    .filter((e) => e.isDirectory())
    .map((e) => e.name)
    .sort();
  if (words.length === 0) {
    throw new DatasetError("no word subdirectories found", root);
  }
  return words;
}

export function readClassesMap(file: string): string[] {
  let raw: unknown;
  let text: string;
  try {
    text = fs.readFileSync(file, "utf-8");
  } catch {
    throw new DatasetError("missing classes map", file);
  }
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new DatasetError(`classes map is not valid JSON: ${(err as Error).message}`, file);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new DatasetError("classes map must be a JSON object", file);
  }
  const byId = new Map<number, string>();
  for (const [key, label] of Object.entries(raw)) {
    const senseId = Number(key);
    if (!Number.isInteger(senseId)) {
      throw new DatasetError(`sense id ${JSON.stringify(key)} is not an integer`, file);
    }
    if (typeof label !== "string" || label.trim() === "") {
      throw new DatasetError(`label for sense ${senseId} must be a non-empty string`, file);
    }
    if (byId.has(senseId)) {
      throw new DatasetError(`duplicate sense id ${senseId}`, file);
    }
    byId.set(senseId, label);
  }
  const ids = [...byId.keys()].sort((a, b) => a - b);
  // ids must be exactly 0..k-1
  for (let i = 0; i < ids.length; i++) {
    if (ids[i] !== i) {
      throw new DatasetError(`sense ids must be contiguous 0..${ids.length - 1}, got ${ids}`, file);
    }
  }
  if (ids.length < 2) {
    throw new DatasetError("a word needs at least two senses", file);
  }
  return ids.map((i) => byId.get(i)!);
}

export function readTestData(file: string, word: string): InstanceEntry[] {
  let text: string;
  try {
    text = fs.readFileSync(file, "utf-8");
  } catch {
    throw new DatasetError("missing data file", file);
  }
  const out: InstanceEntry[] = [];
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  lines.forEach((line, i) => {
    const lineno = i + 1;
    const tab = line.indexOf("\t");
    if (tab < 0) {
      throw new DatasetError("expected '<target_index>\\t<tokens>' (no tab found)", file, lineno);
    }
    const indexField = line.slice(0, tab);
    const targetIndex = Number(indexField);
    if (!Number.isInteger(targetIndex)) {
      throw new DatasetError(
        `target index ${JSON.stringify(indexField)} is not an integer`,
        file,
        lineno,
      );
    }
    const tokens = line
      .slice(tab + 1)
      .split(/\s+/)
      .filter((t) => t !== "");
    if (tokens.length === 0) {
      throw new DatasetError("no tokens after the tab", file, lineno);
    }
    if (targetIndex < 0 || targetIndex >= tokens.length) {
      throw new DatasetError(
        `target index ${targetIndex} outside sentence of ${tokens.length} tokens`,
        file,
        lineno,
      );
    }
    out.push({ id: instanceId(word, "test", i), targetIndex, tokens });
  });
  return out;
}

export function loadOverrides(file: string): Overrides {
  let raw: unknown;
  let text: string;
  try {
    text = fs.readFileSync(file, "utf-8");
  } catch {
    throw new DatasetError("override file not found", file);
  }
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new DatasetError(`override file is not valid JSON: ${(err as Error).message}`, file);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new DatasetError("override file must be a JSON object", file);
  }
  const out: Overrides = {};
  for (const [word, mapping] of Object.entries(raw)) {
    if (typeof mapping !== "object" || mapping === null || Array.isArray(mapping)) {
      throw new DatasetError(`overrides for ${JSON.stringify(word)} must be an object`, file);
    }
    const perWord: Record<number, string> = {};
    for (const [sid, descriptor] of Object.entries(mapping)) {
      const senseId = Number(sid);
      if (!Number.isInteger(senseId)) {
        throw new DatasetError(
          `overrides for ${JSON.stringify(word)}: sense id ${JSON.stringify(sid)} is not an integer`,
          file,
        );
      }
      if (typeof descriptor !== "string" || descriptor.trim() === "") {
        throw new DatasetError(
          `overrides for ${JSON.stringify(word)}: descriptor for sense ${senseId} must be a non-empty string`,
          file,
        );
      }
      perWord[senseId] = descriptor;
    }
    out[word] = perWord;
  }
  return out;
}

/**
 * Load everything the exporter needs for one word: the sense inventory with
 * descriptor texts (overrides replace the normalized label verbatim) and the
 * test instances in file order.
 */
export function loadWordRecords(
  root: string,
  word: string,
  overrides?: Overrides,
): WordRecords {
  const dir = path.join(root, word);
  const labels = readClassesMap(path.join(dir, "classes_map.txt"));
  const perWord = overrides?.[word] ?? {};
  for (const sid of Object.keys(perWord)) {
    if (Number(sid) < 0 || Number(sid) >= labels.length) {
      throw new DatasetError(`${word}: descriptor override for unknown sense id ${sid}`);
    }
  }
  const senses = labels.map((label, senseId) => ({
    senseId,
    label,
    descriptor: perWord[senseId] ?? normalizeLabel(label),
  }));
  const instances = readTestData(path.join(dir, "test.data.txt"), word);
  return { word, senses, instances };
}
