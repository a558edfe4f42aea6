/**
 * Export pipeline: run an encoder over every test instance and sense
 * descriptor of each word and emit one cache file per word plus a manifest.
 */

import fs from "node:fs";
import path from "node:path";

import { CacheFileBuilder, sha256Hex, writeFileAtomic } from "./cache.js";
import { listWords, loadOverrides, loadWordRecords, type Overrides } from "./dataset.js";
import type { Encoder } from "./encoder.js";

export interface ExportJob {
  datasetRoot: string;
  outDir: string;
  model: string;
  /** Subset of words to export; null means every word in the dataset. */
  words: string[] | null;
  batchSize: number;
  layers: number;
  overridesPath?: string;
}

export interface WordExportResult {
  word: string;
  file: string;
  sha256: string;
  instances: number;
  senses: number;
  truncated: string[];
}

export interface ExportManifest {
  model: string;
  dimension: number;
  layers: number;
  truncation_policy: string;
  files: Record<
    string,
    { sha256: string; instances: number; senses: number; truncated: string[] }
  >;
}

export class ExportError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ExportError";
  }
}

function chunked<T>(items: T[], size: number): T[][] {
  const out: T[][] = [];
  for (let i = 0; i < items.length; i += size) {
    out.push(items.slice(i, i + size));
  }
  return out;
}

/**
 * Confirm the output directory exists (creating it if needed) and is
 * writable, before any encoding work is queued.
 */
export function ensureWritableDir(dir: string) {
  try {
    fs.mkdirSync(dir, { recursive: true });
  } catch (err) {
    throw new ExportError(`cannot create output directory ${dir}: ${(err as Error).message}`);
  }
  const probe = path.join(dir, `.write-probe-${process.pid}`);
  try {
    fs.writeFileSync(probe, "");
    fs.rmSync(probe);
  } catch (err) {
    throw new ExportError(`output directory ${dir} is not writable: ${(err as Error).message}`);
  }
}

/**
 * Encode one word and write "<out>/<word>.jsonl".
 *
 * The file covers every test instance (whole-sentence text) and every sense
 * descriptor, with the encoder id recorded in the header. Returns the file
 * checksum and the ids of instances the encoder had to truncate.
 */
export async function exportWord(
  job: ExportJob,
  encoder: Encoder,
  word: string,
  overrides?: Overrides,
): Promise<WordExportResult> {
  const records = loadWordRecords(job.datasetRoot, word, overrides);
  const builder = new CacheFileBuilder(encoder.id, encoder.dimension, encoder.layers);
  const truncated: string[] = [];

  for (const batch of chunked(records.instances, job.batchSize)) {
    const encoded = await encoder.embedBatch(batch.map((ins) => ins.tokens.join(" ")));
    batch.forEach((ins, i) => {
      builder.addInstance(ins.id, encoded[i].vectors);
      if (encoded[i].truncated) {
        truncated.push(ins.id);
      }
    });
  }
  for (const batch of chunked(records.senses, job.batchSize)) {
    const encoded = await encoder.embedBatch(batch.map((s) => s.descriptor));
    batch.forEach((sense, i) => {
      builder.addSense(word, sense.senseId, encoded[i].vectors);
    });
  }

  const content = builder.render();
  const file = path.join(job.outDir, `${word}.jsonl`);
  writeFileAtomic(file, content);
  return {
    word,
    file,
    sha256: sha256Hex(content),
    instances: records.instances.length,
    senses: records.senses.length,
    truncated,
  };
}

/**
 * Export every requested word and write "manifest.json" alongside the cache
 * files. The manifest lists each file's checksum and entry counts so a
 * transfer can be verified without re-reading the dataset.
 */
export async function exportAll(job: ExportJob, encoder: Encoder): Promise<ExportManifest> {
  ensureWritableDir(job.outDir);
  const available = listWords(job.datasetRoot);
  let words = available;
  if (job.words !== null) {
    for (const w of job.words) {
      if (!available.includes(w)) {
        throw new ExportError(`word ${JSON.stringify(w)} not present in the dataset`);
      }
    }
    words = [...job.words].sort();
  }
  const overrides = job.overridesPath ? loadOverrides(job.overridesPath) : undefined;

  const manifest: ExportManifest = {
    model: encoder.id,
    dimension: encoder.dimension,
    layers: encoder.layers,
    truncation_policy: encoder.truncationPolicy,
    files: {},
  };
  for (const word of words) {
    const result = await exportWord(job, encoder, word, overrides);
    manifest.files[path.basename(result.file)] = {
      sha256: result.sha256,
      instances: result.instances,
      senses: result.senses,
      truncated: result.truncated,
    };
  }
  writeFileAtomic(path.join(job.outDir, "manifest.json"), JSON.stringify(manifest, null, 2) + "\n");
  return manifest;
}

/** Recompute checksums for every file named in a manifest; [] means intact. */
export function verifyManifest(outDir: string): string[] {
  const manifestPath = path.join(outDir, "manifest.json");
  let manifest: ExportManifest;
  try {
    manifest = JSON.parse(fs.readFileSync(manifestPath, "utf-8"));
  } catch (err) {
    throw new ExportError(`cannot read manifest ${manifestPath}: ${(err as Error).message}`);
  }
  const bad: string[] = [];
  for (const [name, entry] of Object.entries(manifest.files)) {
    const file = path.join(outDir, name);
    let actual: string;
    try {
      actual = sha256Hex(fs.readFileSync(file));
    } catch {
      bad.push(`${name}: missing`);
      continue;
    }
    if (actual !== entry.sha256) {
      bad.push(`${name}: checksum mismatch`);
    }
  }
  return bad;
}
