/**
 * Sentence encoders behind a small async interface so the export pipeline
 * can run against a real transformer model or a deterministic stand-in.
 */

import crypto from "node:crypto";

export interface EncodedText {
  /** One vector per kept layer, each of the encoder's dimension. */
  vectors: number[][];
  /** True when the input exceeded the encoder's maximum length. */
  truncated: boolean;
}

export interface Encoder {
  readonly id: string;
  readonly dimension: number;
  readonly layers: number;
  /** Human-readable description of how over-long inputs are handled. */
  readonly truncationPolicy: string;
  embedBatch(texts: string[]): Promise<EncodedText[]>;
}

export class EncoderError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "EncoderError";
  }
}

// ---------------------------------------------------------------------------
// Deterministic hash encoder
// ---------------------------------------------------------------------------

function hashFloats(seed: string, count: number): number[] {
  // sha256 in counter mode; each 4-byte word becomes a float in [-1, 1)
  const out: number[] = [];
  for (let block = 0; out.length < count; block++) {
    const digest = crypto.createHash("sha256").update(`${seed}#${block}`).digest();
    for (let off = 0; off + 4 <= digest.length && out.length < count; off += 4) {
      out.push(digest.readUInt32BE(off) / 2 ** 31 - 1);
    }
  }
  return out;
}

/**
 * Offline encoder that derives vectors from a hash of the input text.
 * Identical text always maps to an identical vector, across runs and
 * platforms, which is what the export tests and demos need; the vectors
 * carry no semantics. Model ids look like "mock:<dimension>".
 */
export class HashEncoder implements Encoder {
  readonly id: string;
  readonly dimension: number;
  readonly layers: number;
  readonly maxTokens: number;
  readonly truncationPolicy: string;

  constructor(dimension: number, layers = 1, maxTokens = 512) {
    if (!Number.isInteger(dimension) || dimension <= 0) {
      throw new EncoderError(`hash encoder dimension must be a positive integer, got ${dimension}`);
    }
    if (!Number.isInteger(layers) || layers < 1) {
      throw new EncoderError(`hash encoder layers must be >= 1, got ${layers}`);
    }
    this.id = `mock:${dimension}`;
    this.dimension = dimension;
    this.layers = layers;
    this.maxTokens = maxTokens;
    this.truncationPolicy = `inputs truncated to the first ${maxTokens} whitespace tokens`;
  }

  async embedBatch(texts: string[]): Promise<EncodedText[]> {
    return texts.map((text) => {
      const tokens = text.split(/\s+/).filter((t) => t !== "");
      const truncated = tokens.length > this.maxTokens;
      const kept = truncated ? tokens.slice(0, this.maxTokens).join(" ") : text;
      const vectors = [];
      for (let layer = 0; layer < this.layers; layer++) {
        vectors.push(hashFloats(`${layer}|${kept}`, this.dimension));
      }
      return { vectors, truncated };
    });
  }
}

// ---------------------------------------------------------------------------
// Transformer-backed encoder
// ---------------------------------------------------------------------------

/**
 * Mean-pooled sentence embeddings from a feature-extraction pipeline.
 * The transformers dependency is loaded lazily so the exporter stays usable
 * (mock encoder, tests) on machines where it is not installed.
 */
export class TransformersEncoder implements Encoder {
  readonly id: string;
  readonly dimension: number;
  readonly layers = 1;
  readonly truncationPolicy: string;
  private pipe: any;
  private maxLength: number;

  private constructor(id: string, pipe: any, dimension: number, maxLength: number) {
    this.id = id;
    this.pipe = pipe;
    this.dimension = dimension;
    this.maxLength = maxLength;
    this.truncationPolicy = `inputs truncated to the model maximum of ${maxLength} tokens`;
  }

  static async load(modelId: string): Promise<TransformersEncoder> {
    let transformers: any;
    try {
      transformers = await import("@xenova/transformers");
    } catch {
      throw new EncoderError(
        "the @xenova/transformers package is not installed; " +
          "install it to use real models, or use a mock:<dim> encoder",
      );
    }
    let pipe: any;
    try {
      pipe = await transformers.pipeline("feature-extraction", modelId);
    } catch (err) {
      throw new EncoderError(`failed to load encoder ${modelId}: ${(err as Error).message}`);
    }
    const probe = await pipe("dimension probe", { pooling: "mean" });
    const dimension = probe.dims[probe.dims.length - 1];
    const maxLength = pipe.tokenizer?.model_max_length ?? 512;
    return new TransformersEncoder(modelId, pipe, dimension, maxLength);
  }

  async embedBatch(texts: string[]): Promise<EncodedText[]> {
    const out: EncodedText[] = [];
    for (const text of texts) {
      const tokenized = await this.pipe.tokenizer(text);
      const truncated = tokenized.input_ids.size > this.maxLength;
      const result = await this.pipe(text, { pooling: "mean" });
      out.push({ vectors: [Array.from(result.data, Number)], truncated });
    }
    return out;
  }
}

/** "mock:<dim>" ids select the hash encoder; anything else loads a model. */
export async function createEncoder(modelId: string, layers = 1): Promise<Encoder> {
  if (!modelId) {
    throw new EncoderError("encoder identifier must be non-empty");
  }
  const mock = /^mock:(\d+)$/.exec(modelId);
  if (mock) {
    return new HashEncoder(Number(mock[1]), layers);
  }
  if (layers !== 1) {
    throw new EncoderError("transformer encoders are sentence-level; only layers=1 is supported");
  }
  return TransformersEncoder.load(modelId);
}
