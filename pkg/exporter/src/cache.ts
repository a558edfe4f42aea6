/**
 * Serialization for the contextual-cache file format.
 *
 * One JSON object per line, header first:
 *
 *   {"kind": "header", "model": "<name>", "dimension": D, "layers": L}
 *   {"kind": "instance", "id": "<instance_id>", "vectors": [[...], ...]}
 *   {"kind": "sense", "word": "<w>", "sense_id": k, "vectors": [[...], ...]}
 *
 * Every entry carries exactly L layer vectors of length D. Files are written
 * to a temp path in the same directory and renamed into place, so a reader
 * never sees a partially written cache.
 */

import crypto from "node:crypto";
import fs from "node:fs";
import path from "node:path";

export class CacheWriteError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CacheWriteError";
  }
}

function checkVectors(vectors: number[][], dimension: number, layers: number, what: string) {
  if (!Array.isArray(vectors) || vectors.length !== layers) {
    throw new CacheWriteError(`${what}: expected ${layers} layer vectors, got ${vectors.length}`);
  }
  for (const layer of vectors) {
    if (!Array.isArray(layer) || layer.length !== dimension) {
      throw new CacheWriteError(
        `${what}: expected vectors of length ${dimension}, got ${layer.length}`,
      );
    }
    for (const x of layer) {
      if (typeof x !== "number" || !Number.isFinite(x)) {
        throw new CacheWriteError(`${what}: vector component ${x} is not a finite number`);
      }
    }
  }
}

/** Accumulates cache lines for one word and enforces the entry schema. */
export class CacheFileBuilder {
  readonly model: string;
  readonly dimension: number;
  readonly layers: number;
  private lines: string[];

  constructor(model: string, dimension: number, layers: number) {
    if (!model) {
      throw new CacheWriteError("header model must be non-empty");
    }
    if (!Number.isInteger(dimension) || dimension <= 0) {
      throw new CacheWriteError(`header dimension must be a positive integer, got ${dimension}`);
    }
    if (!Number.isInteger(layers) || layers < 1) {
      throw new CacheWriteError(`header layers must be an integer >= 1, got ${layers}`);
    }
    this.model = model;
    this.dimension = dimension;
    this.layers = layers;
    this.lines = [JSON.stringify({ kind: "header", model, dimension, layers })];
  }

  addInstance(id: string, vectors: number[][]) {
    if (!id) {
      throw new CacheWriteError("instance entry needs a non-empty id");
    }
    checkVectors(vectors, this.dimension, this.layers, `instance ${id}`);
    this.lines.push(JSON.stringify({ kind: "instance", id, vectors }));
  }

  addSense(word: string, senseId: number, vectors: number[][]) {
    if (!word || !Number.isInteger(senseId)) {
      throw new CacheWriteError("sense entry needs a word and an integer sense id");
    }
    checkVectors(vectors, this.dimension, this.layers, `sense ${word}/${senseId}`);
    this.lines.push(JSON.stringify({ kind: "sense", word, sense_id: senseId, vectors }));
  }

  /** Number of entries added so far, header excluded. */
  get entryCount(): number {
    return this.lines.length - 1;
  }

  render(): string {
    return this.lines.join("\n") + "\n";
  }
}

/** Write-temp-then-rename so concurrent readers only ever see whole files. */
export function writeFileAtomic(file: string, content: string) {
  const dir = path.dirname(file);
  const tmp = path.join(dir, `.${path.basename(file)}.tmp-${process.pid}`);
  fs.writeFileSync(tmp, content, "utf-8");
  try {
    fs.renameSync(tmp, file);
  } catch (err) {
    fs.rmSync(tmp, { force: true });
    throw err;
  }
}

export function sha256Hex(content: string | Buffer): string {
  return crypto.createHash("sha256").update(content).digest("hex");
}
