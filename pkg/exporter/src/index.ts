export {
  DatasetError,
  instanceId,
  listWords,
  loadOverrides,
  loadWordRecords,
  normalizeLabel,
  readClassesMap,
  readTestData,
} from "./dataset.js";
export { CacheFileBuilder, CacheWriteError, sha256Hex, writeFileAtomic } from "./cache.js";
export { HashEncoder, TransformersEncoder, EncoderError, createEncoder } from "./encoder.js";
export type { EncodedText, Encoder } from "./encoder.js";
export {
  ExportError,
  ensureWritableDir,
  exportAll,
  exportWord,
  verifyManifest,
} from "./exporter.js";
export type { ExportJob, ExportManifest, WordExportResult } from "./exporter.js";
