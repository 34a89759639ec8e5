/** Training CLI.
 *
 * node dist/train.js --dataset data/toy_consent_dataset.jsonl \
 *   --model baseline --out models/baseline.json --seed 7 \
 *   --train-per-class 100 --holdout-per-class 20
 *
 * Transformer path: --model transformer [--epochs 10 --lr 2e-5 --batch 8]
 */

import { loadDataset, splitDataset, validateDataset } from "./dataset.js";
import { exportBaseline, exportTransformer } from "./exportModel.js";
import { DEFAULT_LOGISTIC, scoreLogistic, trainLogistic } from "./logistic.js";
import { evaluate, formatReport } from "./metrics.js";
import { DEFAULT_TRANSFORMER, scoreTransformer, trainTransformer } from "./transformer.js";

interface Args {
  dataset: string;
  model: "baseline" | "transformer";
  out: string;
  seed: number;
  trainPerClass: number;
  holdoutPerClass: number;
  epochs?: number;
  lr?: number;
  batch?: number;
}

function parseArgs(argv: string[]): Args {
  const get = (flag: string): string | undefined => {
    const i = argv.indexOf(flag);
    return i >= 0 ? argv[i + 1] : undefined;
  };
  const dataset = get("--dataset");
  const out = get("--out");
  if (!dataset || !out) {
    console.error("required: --dataset <jsonl> --out <model path>");
    process.exit(2);
  }
  const model = (get("--model") ?? "baseline") as Args["model"];
  if (model !== "baseline" && model !== "transformer") {
    console.error(`unknown model kind ${model}`);
    process.exit(2);
  }
  return {
    dataset,
    out,
    model,
    seed: parseInt(get("--seed") ?? "7", 10),
    trainPerClass: parseInt(get("--train-per-class") ?? "100", 10),
    holdoutPerClass: parseInt(get("--holdout-per-class") ?? "20", 10),
    epochs: get("--epochs") ? parseInt(get("--epochs")!, 10) : undefined,
    lr: get("--lr") ? parseFloat(get("--lr")!) : undefined,
    batch: get("--batch") ? parseInt(get("--batch")!, 10) : undefined,
  };
}

export function runTraining(args: Args): number {
  const examples = loadDataset(args.dataset);
  validateDataset(examples);
  const split = splitDataset(examples, args.seed, args.trainPerClass, args.holdoutPerClass);

  let score: (text: string) => number;
  let threshold: number;
  if (args.model === "baseline") {
    const model = trainLogistic(split.train, {
      ...DEFAULT_LOGISTIC,
      epochs: args.epochs ?? DEFAULT_LOGISTIC.epochs,
      lr: args.lr ?? DEFAULT_LOGISTIC.lr,
    });
    exportBaseline(model, args.out);
    score = (t) => scoreLogistic(model, t);
    threshold = model.threshold;
  } else {
    const model = trainTransformer(split.train, {
      ...DEFAULT_TRANSFORMER,
      seed: args.seed,
      epochs: args.epochs ?? DEFAULT_TRANSFORMER.epochs,
      lr: args.lr ?? DEFAULT_TRANSFORMER.lr,
      batch: args.batch ?? DEFAULT_TRANSFORMER.batch,
    });
    exportTransformer(model, args.out);
    score = (t) => scoreTransformer(model, t);
    threshold = model.threshold;
  }

  const report = evaluate(split.heldOut, score, threshold);
  console.log(formatReport(report));
  console.log(`exported ${args.model} model to ${args.out}`);
  return 0;
}

const invoked = process.argv[1] ?? "";
if (invoked.endsWith("train.js")) {
  process.exit(runTraining(parseArgs(process.argv.slice(2))));
}
