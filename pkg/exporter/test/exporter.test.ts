import { execFileSync } from "node:child_process";
import fs from "node:fs";
import path from "node:path";
import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { sha256Hex } from "../src/cache.js";
import { HashEncoder, type EncodedText, type Encoder } from "../src/encoder.js";
import {
  ExportError,
  ensureWritableDir,
  exportAll,
  exportWord,
  verifyManifest,
  type ExportJob,
} from "../src/exporter.js";
import { makeTempDir, removeDir, writeToyDataset, writeWordDir } from "./helpers.js";

// ============================================================
// Scripted encoder: deterministic vectors, call log for assertions
// ============================================================

class ScriptedEncoder implements Encoder {
  readonly id = "scripted:3";
  readonly dimension = 3;
  readonly layers = 1;
  readonly maxTokens: number;
  readonly truncationPolicy: string;
  batches: string[][] = [];

  constructor(maxTokens = 64) {
    this.maxTokens = maxTokens;
    this.truncationPolicy = `inputs truncated to the first ${maxTokens} whitespace tokens`;
  }

  async embedBatch(texts: string[]): Promise<EncodedText[]> {
    this.batches.push([...texts]);
    return texts.map((text) => {
      const tokens = text.split(/\s+/).filter((t) => t !== "");
      return {
        vectors: [[text.length, tokens.length, 1]],
        truncated: tokens.length > this.maxTokens,
      };
    });
  }
}

function makeJob(root: string, out: string, partial?: Partial<ExportJob>): ExportJob {
  return {
    datasetRoot: root,
    outDir: out,
    model: "scripted:3",
    words: null,
    batchSize: 32,
    layers: 1,
    ...partial,
  };
}

function readLines(file: string): any[] {
  return fs
    .readFileSync(file, "utf-8")
    .trimEnd()
    .split("\n")
    .map((line) => JSON.parse(line));
}

let root: string;
let out: string;

beforeEach(() => {
  root = makeTempDir("exporter-ds-");
  out = makeTempDir("exporter-out-");
});

afterEach(() => {
  removeDir(root);
  removeDir(out);
});

// ============================================================
// Per-word export
// ============================================================

describe("exportWord", () => {
  it("emits header + one line per test instance and sense", () => {
    const fixture = writeToyDataset(root);
    const encoder = new ScriptedEncoder();
    return exportWord(makeJob(root, out), encoder, "alpha").then(() => {
      const lines = readLines(path.join(out, "alpha.jsonl"));
      // count oracle from the fixture definition, not from the code under test
      expect(lines).toHaveLength(1 + fixture.testCounts.alpha + fixture.senseCounts.alpha);
      expect(lines[0]).toEqual({ kind: "header", model: "scripted:3", dimension: 3, layers: 1 });
    });
  });

  it("covers every instance id and sense id exactly once", async () => {
    writeToyDataset(root);
    await exportWord(makeJob(root, out), new ScriptedEncoder(), "beta");
    const lines = readLines(path.join(out, "beta.jsonl"));
    const instanceIds = lines.filter((l) => l.kind === "instance").map((l) => l.id);
    const senseIds = lines.filter((l) => l.kind === "sense").map((l) => l.sense_id);
    expect(instanceIds).toEqual(["beta.test.0", "beta.test.1"]);
    expect(senseIds).toEqual([0, 1, 2]);
    expect(lines.filter((l) => l.kind === "sense").every((l) => l.word === "beta")).toBe(true);
  });

  it("embeds whole sentences and descriptor texts", async () => {
    writeToyDataset(root);
    const encoder = new ScriptedEncoder();
    await exportWord(makeJob(root, out), encoder, "alpha");
    const texts = encoder.batches.flat();
    expect(texts).toContain("alpha smelted into bars");
    expect(texts).toContain("alpha metal");
    expect(texts).toContain("alpha animal");
  });

  it("gives every entry vectors shaped layers x dimension", async () => {
    writeToyDataset(root);
    await exportWord(makeJob(root, out), new ScriptedEncoder(), "alpha");
    const lines = readLines(path.join(out, "alpha.jsonl"));
    for (const entry of lines.slice(1)) {
      expect(entry.vectors).toHaveLength(1);
      expect(entry.vectors[0]).toHaveLength(3);
    }
  });

  it("respects the batch size", async () => {
    writeToyDataset(root);
    const encoder = new ScriptedEncoder();
    await exportWord(makeJob(root, out, { batchSize: 2 }), encoder, "alpha");
    // 3 instances in batches of 2, then 2 senses in one batch
    expect(encoder.batches.map((b) => b.length)).toEqual([2, 1, 2]);
  });

  it("applies descriptor overrides to the embedded text", async () => {
    writeToyDataset(root);
    const encoder = new ScriptedEncoder();
    await exportWord(makeJob(root, out), encoder, "alpha", {
      alpha: { 0: "bar of refined metal" },
    });
    const texts = encoder.batches.flat();
    expect(texts).toContain("bar of refined metal");
    expect(texts).not.toContain("alpha metal");
  });

  it("records which instances the encoder truncated", async () => {
    writeToyDataset(root);
    const result = await exportWord(makeJob(root, out), new ScriptedEncoder(3), "alpha");
    // fixture sentences have 4, 4, and 3 tokens; cap is 3
    expect(result.truncated).toEqual(["alpha.test.0", "alpha.test.1"]);
  });

  it("reports the checksum of the written file", async () => {
    writeToyDataset(root);
    const result = await exportWord(makeJob(root, out), new ScriptedEncoder(), "alpha");
    expect(result.sha256).toBe(sha256Hex(fs.readFileSync(result.file)));
  });
});

// ============================================================
// Directory export and manifest
// ============================================================

describe("exportAll", () => {
  it("writes one cache file per word plus a manifest", async () => {
    writeToyDataset(root);
    await exportAll(makeJob(root, out), new ScriptedEncoder());
    expect(fs.readdirSync(out).sort()).toEqual(["alpha.jsonl", "beta.jsonl", "manifest.json"]);
  });

  it("narrows to the requested word subset", async () => {
    writeToyDataset(root);
    await exportAll(makeJob(root, out, { words: ["beta"] }), new ScriptedEncoder());
    expect(fs.readdirSync(out).sort()).toEqual(["beta.jsonl", "manifest.json"]);
  });

  it("rejects words missing from the dataset before encoding", async () => {
    writeToyDataset(root);
    const encoder = new ScriptedEncoder();
    await expect(
      exportAll(makeJob(root, out, { words: ["alpha", "gamma"] }), encoder),
    ).rejects.toThrow(/"gamma" not present/);
    expect(encoder.batches).toHaveLength(0);
  });

  it("manifest checksums and counts match the emitted files", async () => {
    const fixture = writeToyDataset(root);
    const manifest = await exportAll(makeJob(root, out), new ScriptedEncoder());
    expect(Object.keys(manifest.files).sort()).toEqual(["alpha.jsonl", "beta.jsonl"]);
    for (const [name, entry] of Object.entries(manifest.files)) {
      const actual = sha256Hex(fs.readFileSync(path.join(out, name)));
      expect(entry.sha256).toBe(actual);
      const word = name.replace(/\.jsonl$/, "") as "alpha" | "beta";
      expect(entry.instances).toBe(fixture.testCounts[word]);
      expect(entry.senses).toBe(fixture.senseCounts[word]);
    }
    expect(verifyManifest(out)).toEqual([]);
  });

  it("verifyManifest flags tampered and missing files", async () => {
    writeToyDataset(root);
    await exportAll(makeJob(root, out), new ScriptedEncoder());
    fs.appendFileSync(path.join(out, "alpha.jsonl"), "tamper\n");
    fs.rmSync(path.join(out, "beta.jsonl"));
    const problems = verifyManifest(out).sort();
    expect(problems).toEqual(["alpha.jsonl: checksum mismatch", "beta.jsonl: missing"]);
  });

  it("fails before any encoding when the output dir cannot be created", async () => {
    writeToyDataset(root);
    const blocker = path.join(out, "blocker");
    fs.writeFileSync(blocker, "a plain file");
    const encoder = new ScriptedEncoder();
    const job = makeJob(root, path.join(blocker, "nested"), {});
    await expect(exportAll(job, encoder)).rejects.toThrow(ExportError);
    expect(encoder.batches).toHaveLength(0);
  });

  it("reruns byte-identically with a deterministic encoder", async () => {
    writeToyDataset(root);
    const second = makeTempDir("exporter-out2-");
    try {
      await exportAll(makeJob(root, out), new ScriptedEncoder());
      await exportAll(makeJob(root, second), new ScriptedEncoder());
      for (const name of ["alpha.jsonl", "beta.jsonl", "manifest.json"]) {
        const a = fs.readFileSync(path.join(out, name), "utf-8");
        const b = fs.readFileSync(path.join(second, name), "utf-8");
        expect(b).toBe(a);
      }
    } finally {
      removeDir(second);
    }
  });

  it("records the truncation policy in the manifest", async () => {
    writeToyDataset(root);
    const manifest = await exportAll(makeJob(root, out), new ScriptedEncoder(3));
    expect(manifest.truncation_policy).toMatch(/first 3 whitespace tokens/);
    expect(manifest.files["alpha.jsonl"].truncated).toEqual(["alpha.test.0", "alpha.test.1"]);
  });
});

describe("ensureWritableDir", () => {
  it("creates missing directories recursively", () => {
    const target = path.join(out, "a", "b");
    ensureWritableDir(target);
    expect(fs.statSync(target).isDirectory()).toBe(true);
  });

  it("fails when a file sits where a directory is needed", () => {
    const blocker = path.join(out, "blocker");
    fs.writeFileSync(blocker, "");
    expect(() => ensureWritableDir(path.join(blocker, "sub"))).toThrow(/cannot create/);
  });
});

// ============================================================
// Hash encoder
// ============================================================

describe("HashEncoder", () => {
  it("is deterministic for identical text", async () => {
    const enc = new HashEncoder(16);
    const [a] = await enc.embedBatch(["the alpha rises"]);
    const [b] = await enc.embedBatch(["the alpha rises"]);
    expect(b.vectors).toEqual(a.vectors);
  });

  it("varies with the text", async () => {
    const enc = new HashEncoder(16);
    const [a, b] = await enc.embedBatch(["one sentence", "another sentence"]);
    expect(a.vectors).not.toEqual(b.vectors);
  });

  it("emits the requested dimension and layer count", async () => {
    const enc = new HashEncoder(5, 3);
    const [r] = await enc.embedBatch(["text"]);
    expect(r.vectors).toHaveLength(3);
    for (const layer of r.vectors) {
      expect(layer).toHaveLength(5);
    }
    expect(new Set(r.vectors.map((v) => JSON.stringify(v))).size).toBe(3);
  });

  it("keeps components inside [-1, 1]", async () => {
    const enc = new HashEncoder(64);
    const [r] = await enc.embedBatch(["bounds check sentence"]);
    for (const x of r.vectors[0]) {
      expect(Math.abs(x)).toBeLessThanOrEqual(1);
    }
  });

  it("flags truncation past its token cap", async () => {
    const enc = new HashEncoder(4, 1, 3);
    const [short, long] = await enc.embedBatch(["two tokens", "one two three four"]);
    expect(short.truncated).toBe(false);
    expect(long.truncated).toBe(true);
  });
});

// ============================================================
// Cross-component check: emitted files load in the Python reader
// ============================================================

function pythonWithWsdsim(): boolean {
  try {
    execFileSync("python3", ["-c", "import wsdsim"], { stdio: "ignore", timeout: 30_000 });
    return true;
  } catch {
    return false;
  }
}

describe.runIf(pythonWithWsdsim())("compatibility with the Python reader", () => {
  it("exported files load with zero coverage gaps", async () => {
    // the Python loader wants train files too; give it empty-ish ones
    writeToyDataset(root);
    for (const word of ["alpha", "beta"]) {
      const dir = path.join(root, word);
      fs.writeFileSync(path.join(dir, "train.data.txt"), `0\t${word} used in training\n`);
      fs.writeFileSync(path.join(dir, "train.gold.txt"), "0\n");
      const n = fs.readFileSync(path.join(dir, "test.data.txt"), "utf-8").trimEnd().split("\n").length;
      fs.writeFileSync(path.join(dir, "test.gold.txt"), Array(n).fill("0").join("\n") + "\n");
    }
    await exportAll(makeJob(root, out), new HashEncoder(8));
    const script = [
      "import sys",
      "from wsdsim import load_cache_dir, load_dataset",
      "dataset = load_dataset(sys.argv[1])",
      "cache = load_cache_dir(sys.argv[2])",
      "for word in dataset.words:",
      "    missing_instances, missing_senses = cache.coverage_gaps(dataset, word)",
      "    assert not missing_instances, (word, missing_instances)",
      "    assert not missing_senses, (word, missing_senses)",
      "print('coverage complete')",
    ].join("\n");
    const output = execFileSync("python3", ["-c", script, root, out], {
      encoding: "utf-8",
      timeout: 60_000,
    });
    expect(output).toContain("coverage complete");
  });
});
