/** Bag-of-words logistic regression over binary token-presence features.
 * Full-batch gradient descent with L2; deterministic given the data. */

import { TrainingExample } from "./dataset.js";
import { tokenSet } from "./tokenize.js";

export interface LogisticModel {
  vocabulary: Record<string, number>;
  bias: number;
  threshold: number;
}

export interface LogisticConfig {
  epochs: number;
  lr: number;
  l2: number;
  minDocFreq: number;
  threshold: number;
}

export const DEFAULT_LOGISTIC: LogisticConfig = {
  epochs: 300,
  lr: 0.5,
  l2: 1e-3,
  minDocFreq: 2,
  threshold: 0.5,
};

function sigmoid(z: number): number {
  return z >= 0 ? 1 / (1 + Math.exp(-z)) : Math.exp(z) / (1 + Math.exp(z));
}

export function buildVocabulary(examples: TrainingExample[], minDocFreq: number): string[] {
  const docFreq = new Map<string, number>();
  for (const ex of examples) {
    for (const token of tokenSet(ex.text)) {
      docFreq.set(token, (docFreq.get(token) ?? 0) + 1);
    }
  }
  return [...docFreq.entries()]
    .filter(([, df]) => df >= minDocFreq)
    .map(([token]) => token)
    .sort();
}

export function trainLogistic(
  examples: TrainingExample[],
  config: LogisticConfig = DEFAULT_LOGISTIC
): LogisticModel {
  const vocab = buildVocabulary(examples, config.minDocFreq);
  const index = new Map(vocab.map((t, i) => [t, i]));
  const features = examples.map((ex) => {
    const ids: number[] = [];
    for (const token of tokenSet(ex.text)) {
      const id = index.get(token);
      if (id !== undefined) ids.push(id);
    }
    return ids;
  });
  const labels = examples.map((ex) => (ex.label === "notice" ? 1 : 0));

  const weights = new Float64Array(vocab.length);
  let bias = 0;
  const n = examples.length;
  for (let epoch = 0; epoch < config.epochs; epoch++) {
    const gradW = new Float64Array(vocab.length);
    let gradB = 0;
    for (let i = 0; i < n; i++) {
      let z = bias;
      for (const id of features[i]) z += weights[id];
      const err = sigmoid(z) - labels[i];
      for (const id of features[i]) gradW[id] += err;
      gradB += err;
    }
    for (let j = 0; j < vocab.length; j++) {
      weights[j] -= config.lr * (gradW[j] / n + config.l2 * weights[j]);
    }
    bias -= config.lr * (gradB / n);
  }

  const vocabulary: Record<string, number> = {};
  vocab.forEach((token, j) => {
    vocabulary[token] = weights[j];
  });
  return { vocabulary, bias, threshold: config.threshold };
}

export function scoreLogistic(model: LogisticModel, text: string): number {
  let z = model.bias;
  for (const token of tokenSet(text)) {
    z += model.vocabulary[token] ?? 0;
  }
  return sigmoid(z);
}
