/** Toy single-head self-attention text classifier, trained from scratch
 * with AdamW at the conventional fine-tuning hyperparameters (lr 2e-5,
 * ten epochs, batches of eight). It exists to exercise the external-model
 * export path end to end; nobody should expect fine-tuned quality from a
 * from-scratch toy. */

import { TrainingExample } from "./dataset.js";
import { mulberry32, Rng, shuffled } from "./rng.js";
import { tokenize } from "./tokenize.js";

export interface TransformerConfig {
  dim: number;
  maxTokens: number;
  epochs: number;
  lr: number;
  batch: number;
  weightDecay: number;
  seed: number;
}

export const DEFAULT_TRANSFORMER: TransformerConfig = {
  dim: 16,
  maxTokens: 48,
  epochs: 10,
  lr: 2e-5,
  batch: 8,
  weightDecay: 0.01,
  seed: 7,
};

export interface TransformerModel {
  config: TransformerConfig;
  vocab: string[];
  // flat row-major matrices
  embedding: number[]; // vocab x dim
  wq: number[]; // dim x dim
  wk: number[];
  wv: number[];
  head: number[]; // dim
  bias: number;
  threshold: number;
}

class AdamW {
  private m: Float64Array;
  private v: Float64Array;
  private t = 0;

  constructor(
    private params: Float64Array,
    private lr: number,
    private weightDecay: number,
    private beta1 = 0.9,
    private beta2 = 0.999,
    private eps = 1e-8
  ) {
    this.m = new Float64Array(params.length);
    this.v = new Float64Array(params.length);
  }

  step(grads: Float64Array): void {
    this.t += 1;
    const { params, m, v, lr, beta1, beta2, eps } = this;
    const bc1 = 1 - Math.pow(beta1, this.t);
    const bc2 = 1 - Math.pow(beta2, this.t);
    for (let i = 0; i < params.length; i++) {
      m[i] = beta1 * m[i] + (1 - beta1) * grads[i];
      v[i] = beta2 * v[i] + (1 - beta2) * grads[i] * grads[i];
      const mhat = m[i] / bc1;
      const vhat = v[i] / bc2;
      params[i] -= lr * (mhat / (Math.sqrt(vhat) + eps) + this.weightDecay * params[i]);
    }
  }
}

function sigmoid(z: number): number {
  return z >= 0 ? 1 / (1 + Math.exp(-z)) : Math.exp(z) / (1 + Math.exp(z));
}

interface Params {
  embedding: Float64Array;
  wq: Float64Array;
  wk: Float64Array;
  wv: Float64Array;
  head: Float64Array;
  bias: Float64Array; // length 1
}

function initParams(vocabSize: number, dim: number, rng: Rng): Params {
  const init = (n: number, scale: number) => {
    const arr = new Float64Array(n);
    for (let i = 0; i < n; i++) arr[i] = (rng() * 2 - 1) * scale;
    return arr;
  };
  return {
    embedding: init(vocabSize * dim, 0.1),
    wq: init(dim * dim, 1 / Math.sqrt(dim)),
    wk: init(dim * dim, 1 / Math.sqrt(dim)),
    wv: init(dim * dim, 1 / Math.sqrt(dim)),
    head: init(dim, 0.1),
    bias: new Float64Array(1),
  };
}

/** E(n x d) @ W(d x d) -> (n x d), flat row-major. */
function matmul(e: Float64Array, w: Float64Array, n: number, d: number): Float64Array {
  const out = new Float64Array(n * d);
  for (let i = 0; i < n; i++) {
    for (let k = 0; k < d; k++) {
      const eik = e[i * d + k];
      if (eik === 0) continue;
      for (let j = 0; j < d; j++) out[i * d + j] += eik * w[k * d + j];
    }
  }
  return out;
}

interface Forward {
  tokens: number[];
  e: Float64Array;
  q: Float64Array;
  k: Float64Array;
  v: Float64Array;
  attn: Float64Array; // n x n softmax rows
  hidden: Float64Array; // n x d
  pooled: Float64Array; // d
  prob: number;
}

function forward(params: Params, dim: number, tokenIds: number[]): Forward {
  const n = tokenIds.length;
  const e = new Float64Array(n * dim);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < dim; j++) e[i * dim + j] = params.embedding[tokenIds[i] * dim + j];
  }
  const q = matmul(e, params.wq, n, dim);
  const k = matmul(e, params.wk, n, dim);
  const v = matmul(e, params.wv, n, dim);
  const scale = 1 / Math.sqrt(dim);
  const attn = new Float64Array(n * n);
  for (let i = 0; i < n; i++) {
    let max = -Infinity;
    const row = new Float64Array(n);
    for (let j = 0; j < n; j++) {
      let s = 0;
      for (let t = 0; t < dim; t++) s += q[i * dim + t] * k[j * dim + t];
      row[j] = s * scale;
      if (row[j] > max) max = row[j];
    }
    let sum = 0;
    for (let j = 0; j < n; j++) {
      row[j] = Math.exp(row[j] - max);
      sum += row[j];
    }
    for (let j = 0; j < n; j++) attn[i * n + j] = row[j] / sum;
  }
  const hidden = new Float64Array(n * dim);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const a = attn[i * n + j];
      if (a === 0) continue;
      for (let t = 0; t < dim; t++) hidden[i * dim + t] += a * v[j * dim + t];
    }
  }
  const pooled = new Float64Array(dim);
  for (let i = 0; i < n; i++) {
    for (let t = 0; t < dim; t++) pooled[t] += hidden[i * dim + t] / n;
  }
  let logit = params.bias[0];
  for (let t = 0; t < dim; t++) logit += params.head[t] * pooled[t];
  return { tokens: tokenIds, e, q, k, v, attn, hidden, pooled, prob: sigmoid(logit) };
}

interface Grads {
  embedding: Float64Array;
  wq: Float64Array;
  wk: Float64Array;
  wv: Float64Array;
  head: Float64Array;
  bias: Float64Array;
}

function backward(params: Params, dim: number, fw: Forward, label: number, grads: Grads): void {
  const n = fw.tokens.length;
  const dlogit = fw.prob - label;
  grads.bias[0] += dlogit;
  for (let t = 0; t < dim; t++) grads.head[t] += dlogit * fw.pooled[t];

  const dHidden = new Float64Array(n * dim);
  for (let i = 0; i < n; i++) {
    for (let t = 0; t < dim; t++) dHidden[i * dim + t] = (dlogit * params.head[t]) / n;
  }

  // hidden = attn @ v
  const dAttn = new Float64Array(n * n);
  const dV = new Float64Array(n * dim);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      let s = 0;
      for (let t = 0; t < dim; t++) {
        s += dHidden[i * dim + t] * fw.v[j * dim + t];
        dV[j * dim + t] += fw.attn[i * n + j] * dHidden[i * dim + t];
      }
      dAttn[i * n + j] = s;
    }
  }

  // softmax backward per row, then undo the 1/sqrt(dim) scale
  const scale = 1 / Math.sqrt(dim);
  const dScores = new Float64Array(n * n);
  for (let i = 0; i < n; i++) {
    let dot = 0;
    for (let j = 0; j < n; j++) dot += dAttn[i * n + j] * fw.attn[i * n + j];
    for (let j = 0; j < n; j++) {
      dScores[i * n + j] = fw.attn[i * n + j] * (dAttn[i * n + j] - dot) * scale;
    }
  }

  const dQ = new Float64Array(n * dim);
  const dK = new Float64Array(n * dim);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const ds = dScores[i * n + j];
      if (ds === 0) continue;
      for (let t = 0; t < dim; t++) {
        dQ[i * dim + t] += ds * fw.k[j * dim + t];
        dK[j * dim + t] += ds * fw.q[i * dim + t];
      }
    }
  }

  const dE = new Float64Array(n * dim);
  const accumulate = (
    dOut: Float64Array,
    w: Float64Array,
    gradW: Float64Array
  ) => {
    // out = e @ w:   gradW += e^T dOut;   dE += dOut @ w^T
    for (let i = 0; i < n; i++) {
      for (let kk = 0; kk < dim; kk++) {
        const eik = fw.e[i * dim + kk];
        for (let j = 0; j < dim; j++) {
          gradW[kk * dim + j] += eik * dOut[i * dim + j];
          dE[i * dim + kk] += dOut[i * dim + j] * w[kk * dim + j];
        }
      }
    }
  };
  accumulate(dQ, params.wq, grads.wq);
  accumulate(dK, params.wk, grads.wk);
  accumulate(dV, params.wv, grads.wv);

  for (let i = 0; i < n; i++) {
    for (let t = 0; t < dim; t++) {
      grads.embedding[fw.tokens[i] * dim + t] += dE[i * dim + t];
    }
  }
}

export function trainTransformer(
  examples: TrainingExample[],
  config: TransformerConfig = DEFAULT_TRANSFORMER
): TransformerModel {
  const vocabSet = new Set<string>();
  for (const ex of examples) for (const t of tokenize(ex.text)) vocabSet.add(t);
  const vocab = [...vocabSet].sort();
  const index = new Map(vocab.map((t, i) => [t, i]));
  const rng = mulberry32(config.seed);
  const params = initParams(vocab.length + 1, config.dim, rng); // +1 = unk row

  const flat = [
    params.embedding,
    params.wq,
    params.wk,
    params.wv,
    params.head,
    params.bias,
  ];
  const sizes = flat.map((a) => a.length);
  const total = sizes.reduce((a, b) => a + b, 0);
  const packed = new Float64Array(total);
  let off = 0;
  for (const arr of flat) {
    packed.set(arr, off);
    off += arr.length;
  }
  const views: Params = unpack(packed, sizes, config.dim);
  const optimizer = new AdamW(packed, config.lr, config.weightDecay);

  const encode = (text: string) =>
    tokenize(text)
      .slice(0, config.maxTokens)
      .map((t) => index.get(t) ?? vocab.length);

  for (let epoch = 0; epoch < config.epochs; epoch++) {
    const order = shuffled(examples, rng);
    for (let start = 0; start < order.length; start += config.batch) {
      const batch = order.slice(start, start + config.batch);
      const gradsPacked = new Float64Array(total);
      const grads = unpack(gradsPacked, sizes, config.dim);
      for (const ex of batch) {
        const ids = encode(ex.text);
        if (ids.length === 0) continue;
        const fw = forward(views, config.dim, ids);
        backward(views, config.dim, fw, ex.label === "notice" ? 1 : 0, grads as never);
      }
      for (let i = 0; i < total; i++) gradsPacked[i] /= batch.length;
      optimizer.step(gradsPacked);
    }
  }

  return {
    config,
    vocab,
    embedding: [...views.embedding],
    wq: [...views.wq],
    wk: [...views.wk],
    wv: [...views.wv],
    head: [...views.head],
    bias: views.bias[0],
    threshold: 0.5,
  };
}

function unpack(packed: Float64Array, sizes: number[], dim: number): Params {
  let off = 0;
  const take = (n: number) => {
    const view = packed.subarray(off, off + n);
    off += n;
    return view;
  };
  return {
    embedding: take(sizes[0]),
    wq: take(sizes[1]),
    wk: take(sizes[2]),
    wv: take(sizes[3]),
    head: take(sizes[4]),
    bias: take(sizes[5]),
  };
}

export function scoreTransformer(model: TransformerModel, text: string): number {
  const index = new Map(model.vocab.map((t, i) => [t, i]));
  const ids = tokenize(text)
    .slice(0, model.config.maxTokens)
    .map((t) => index.get(t) ?? model.vocab.length);
  if (ids.length === 0) return sigmoid(model.bias);
  const params: Params = {
    embedding: Float64Array.from(model.embedding),
    wq: Float64Array.from(model.wq),
    wk: Float64Array.from(model.wk),
    wv: Float64Array.from(model.wv),
    head: Float64Array.from(model.head),
    bias: Float64Array.from([model.bias]),
  };
  return forward(params, model.config.dim, ids).prob;
}
