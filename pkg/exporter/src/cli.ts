#!/usr/bin/env node
/**
 * Command line front end.
 *
 *   wsdsim-export export --dataset <root> --model <id> --out <dir> \
 *       [--words w1,w2,...] [--layers N] [--batch B] [--overrides file.json]
 *   wsdsim-export verify --out <dir>
 *
 * Exit codes: 0 success, 1 encoder or unexpected failure, 2 usage error,
 * 3 dataset or output-directory error.
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { DatasetError } from "./dataset.js";
import { EncoderError, createEncoder } from "./encoder.js";
import { ExportError, exportAll, verifyManifest, type ExportJob } from "./exporter.js";

class UsageError extends Error {}

function parseWords(value: string | undefined): string[] | null {
  if (value === undefined) {
    return null;
  }
  const words = value
    .split(",")
    .map((w) => w.trim())
    .filter((w) => w !== "");
  if (words.length === 0) {
    throw new UsageError("--words was given but names no words");
  }
  return words;
}

async function runExport(argv: {
  dataset: string;
  model: string;
  out: string;
  words?: string;
  layers: number;
  batch: number;
  overrides?: string;
}): Promise<number> {
  if (argv.batch < 1 || !Number.isInteger(argv.batch)) {
    console.error(`error: --batch must be a positive integer, got ${argv.batch}`);
    return 2;
  }
  if (argv.layers < 1 || !Number.isInteger(argv.layers)) {
    console.error(`error: --layers must be a positive integer, got ${argv.layers}`);
    return 2;
  }
  const job: ExportJob = {
    datasetRoot: argv.dataset,
    outDir: argv.out,
    model: argv.model,
    words: parseWords(argv.words),
    batchSize: argv.batch,
    layers: argv.layers,
    overridesPath: argv.overrides,
  };
  const encoder = await createEncoder(argv.model, argv.layers);
  const manifest = await exportAll(job, encoder);
  const files = Object.keys(manifest.files);
  const entries = Object.values(manifest.files);
  const instances = entries.reduce((n, f) => n + f.instances, 0);
  const truncated = entries.reduce((n, f) => n + f.truncated.length, 0);
  console.error(
    `exported ${files.length} word(s), ${instances} instance vector(s), ` +
      `dimension ${manifest.dimension}, layers ${manifest.layers} -> ${argv.out}`,
  );
  if (truncated > 0) {
    console.error(`note: ${truncated} instance(s) truncated; ids recorded in manifest.json`);
  }
  return 0;
}

function runVerify(argv: { out: string }): number {
  const problems = verifyManifest(argv.out);
  if (problems.length === 0) {
    console.error("manifest checksums match");
    return 0;
  }
  for (const p of problems) {
    console.error(`error: ${p}`);
  }
  return 3;
}

export async function main(args: string[]): Promise<number> {
  let exitCode = 0;
  const parser = yargs(args)
    .scriptName("wsdsim-export")
    .command(
      "export",
      "encode a dataset into per-word cache files plus manifest.json",
      (y) =>
        y
          .option("dataset", { type: "string", demandOption: true, describe: "dataset root directory" })
          .option("model", { type: "string", demandOption: true, describe: "encoder id, or mock:<dim>" })
          .option("out", { type: "string", demandOption: true, describe: "output directory" })
          .option("words", { type: "string", describe: "comma-separated word subset" })
          .option("layers", { type: "number", default: 1, describe: "layer vectors to keep per entry" })
          .option("batch", { type: "number", default: 32, describe: "encoder batch size" })
          .option("overrides", { type: "string", describe: "sense-descriptor override JSON file" }),
      async (argv) => {
        exitCode = await runExport(argv as any);
      },
    )
    .command(
      "verify",
      "recompute checksums for an exported directory",
      (y) => y.option("out", { type: "string", demandOption: true, describe: "exported directory" }),
      (argv) => {
        exitCode = runVerify(argv as any);
      },
    )
    .demandCommand(1, "specify a command: export or verify")
    .strict()
    .fail((msg, err) => {
      throw err ?? new UsageError(msg);
    })
    .help();

  try {
    await parser.parseAsync();
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    if (err instanceof DatasetError || err instanceof ExportError) {
      console.error(`error: ${err.message}`);
      return 3;
    }
    if (err instanceof EncoderError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    console.error(`error: ${(err as Error).stack ?? err}`);
    return 1;
  }
  return exitCode;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
