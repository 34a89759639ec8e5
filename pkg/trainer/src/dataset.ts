import { readFileSync } from "node:fs";

import { mulberry32, shuffled } from "./rng.js";

export type Label = "notice" | "non_notice";

export interface TrainingExample {
  text: string;
  label: Label;
  language: string;
  source_url?: string;
}

export class DatasetError extends Error {}

const MIN_PER_CLASS = 40;
const MAX_IMBALANCE = 0.6;

export function parseDataset(jsonl: string): TrainingExample[] {
  const examples: TrainingExample[] = [];
  for (const line of jsonl.split("\n")) {
    if (!line.trim()) continue;
    const doc = JSON.parse(line);
    if (typeof doc.text !== "string" || !doc.text.trim()) {
      throw new DatasetError("example with empty text");
    }
    if (doc.label !== "notice" && doc.label !== "non_notice") {
      throw new DatasetError(`unknown label ${JSON.stringify(doc.label)}`);
    }
    examples.push({
      text: doc.text,
      label: doc.label,
      language: typeof doc.language === "string" ? doc.language : "und",
      source_url: doc.source_url,
    });
  }
  return examples;
}

export function loadDataset(path: string): TrainingExample[] {
  return parseDataset(readFileSync(path, "utf-8"));
}

export function validateDataset(examples: TrainingExample[]): void {
  const notices = examples.filter((e) => e.label === "notice").length;
  const others = examples.length - notices;
  if (notices < MIN_PER_CLASS || others < MIN_PER_CLASS) {
    throw new DatasetError(
      `dataset too small: ${notices} notices / ${others} non-notices ` +
        `(need >= ${MIN_PER_CLASS} per class)`
    );
  }
  const fraction = notices / examples.length;
  if (fraction > MAX_IMBALANCE || fraction < 1 - MAX_IMBALANCE) {
    throw new DatasetError(
      `class imbalance beyond 60/40: ${(fraction * 100).toFixed(1)}% notices`
    );
  }
}

export interface Split {
  train: TrainingExample[];
  heldOut: TrainingExample[];
}

/** Balanced deterministic split: trainPerClass examples of each label for
 * training, heldOutPerClass for evaluation, drawn after a seeded shuffle
 * with no overlap. */
export function splitDataset(
  examples: TrainingExample[],
  seed: number,
  trainPerClass: number,
  heldOutPerClass: number
): Split {
  const rng = mulberry32(seed);
  const byLabel: Record<Label, TrainingExample[]> = { notice: [], non_notice: [] };
  for (const ex of shuffled(examples, rng)) byLabel[ex.label].push(ex);
  for (const label of ["notice", "non_notice"] as const) {
    if (byLabel[label].length < trainPerClass + heldOutPerClass) {
      throw new DatasetError(
        `not enough ${label} examples for a ${trainPerClass}+${heldOutPerClass} split`
      );
    }
  }
  const train = [
    ...byLabel.notice.slice(0, trainPerClass),
    ...byLabel.non_notice.slice(0, trainPerClass),
  ];
  const heldOut = [
    ...byLabel.notice.slice(trainPerClass, trainPerClass + heldOutPerClass),
    ...byLabel.non_notice.slice(trainPerClass, trainPerClass + heldOutPerClass),
  ];
  return { train: shuffled(train, rng), heldOut: shuffled(heldOut, rng) };
}
