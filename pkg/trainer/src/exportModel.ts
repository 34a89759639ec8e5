/** Model artifact export in the scanner's model-file format.
 *
 * Baseline models become a single JSON file the scanner loads natively.
 * Transformer models become an "external" descriptor plus a weights file
 * and a self-contained node serving script speaking the line protocol
 * (one JSON-escaped text per input line, one float per output line).
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";

import { LogisticModel } from "./logistic.js";
import { TransformerModel } from "./transformer.js";

export const MODEL_VERSION = "trainer-0.1.0";

export function exportBaseline(model: LogisticModel, path: string): void {
  const doc = {
    model_kind: "baseline_logistic",
    version: MODEL_VERSION,
    threshold: model.threshold,
    vocabulary: model.vocabulary,
    bias: model.bias,
  };
  mkdirSync(dirname(path), { recursive: true });
  writeFileSync(path, JSON.stringify(doc, null, 2) + "\n", "utf-8");
}

const SERVE_SCRIPT = `#!/usr/bin/env node
// Line-protocol scorer: JSON-escaped text per input line, float per output line.
const fs = require("fs");
const path = process.argv[2];
if (!path) { console.error("usage: serve_model.js <weights.json>"); process.exit(2); }
const model = JSON.parse(fs.readFileSync(path, "utf-8"));
const dim = model.config.dim;
const index = new Map(model.vocab.map((t, i) => [t, i]));

function sigmoid(z) { return z >= 0 ? 1 / (1 + Math.exp(-z)) : Math.exp(z) / (1 + Math.exp(z)); }
function tokenize(text) { return text.toLowerCase().match(/[\\p{L}\\p{N}_]+/gu) ?? []; }

function score(text) {
  const ids = tokenize(text).slice(0, model.config.maxTokens).map(t => index.has(t) ? index.get(t) : model.vocab.length);
  const n = ids.length;
  if (n === 0) return sigmoid(model.bias);
  const E = [], get = (flat, r, c) => flat[r * dim + c];
  for (const id of ids) E.push(model.embedding.slice(id * dim, (id + 1) * dim));
  const proj = (W) => E.map(row => {
    const out = new Array(dim).fill(0);
    for (let k = 0; k < dim; k++) { const v = row[k]; if (v) for (let j = 0; j < dim; j++) out[j] += v * get(W, k, j); }
    return out;
  });
  const Q = proj(model.wq), K = proj(model.wk), V = proj(model.wv);
  const scale = 1 / Math.sqrt(dim);
  const pooled = new Array(dim).fill(0);
  for (let i = 0; i < n; i++) {
    const row = []; let max = -Infinity;
    for (let j = 0; j < n; j++) { let s = 0; for (let t = 0; t < dim; t++) s += Q[i][t] * K[j][t]; s *= scale; row.push(s); if (s > max) max = s; }
    let sum = 0; for (let j = 0; j < n; j++) { row[j] = Math.exp(row[j] - max); sum += row[j]; }
    for (let j = 0; j < n; j++) { const a = row[j] / sum; for (let t = 0; t < dim; t++) pooled[t] += a * V[j][t] / n; }
  }
  let logit = model.bias;
  for (let t = 0; t < dim; t++) logit += model.head[t] * pooled[t];
  return sigmoid(logit);
}

const chunks = [];
process.stdin.on("data", (d) => chunks.push(d));
process.stdin.on("end", () => {
  const lines = Buffer.concat(chunks).toString("utf-8").split("\\n");
  const out = [];
  for (const line of lines) {
    if (!line.trim()) continue;
    let text;
    try { text = JSON.parse(line); } catch { text = line; }
    out.push(score(String(text)).toFixed(6));
  }
  process.stdout.write(out.join("\\n") + (out.length ? "\\n" : ""));
});
`;

export function exportTransformer(model: TransformerModel, descriptorPath: string): void {
  const dir = dirname(descriptorPath);
  mkdirSync(dir, { recursive: true });
  const weights = {
    config: { dim: model.config.dim, maxTokens: model.config.maxTokens },
    vocab: model.vocab,
    embedding: model.embedding,
    wq: model.wq,
    wk: model.wk,
    wv: model.wv,
    head: model.head,
    bias: model.bias,
  };
  writeFileSync(join(dir, "transformer_weights.json"), JSON.stringify(weights), "utf-8");
  writeFileSync(join(dir, "serve_model.js"), SERVE_SCRIPT, "utf-8");
  const descriptor = {
    model_kind: "external",
    version: MODEL_VERSION,
    threshold: model.threshold,
    command: ["node", "serve_model.js", "transformer_weights.json"],
  };
  writeFileSync(descriptorPath, JSON.stringify(descriptor, null, 2) + "\n", "utf-8");
}
