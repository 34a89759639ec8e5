/** Line-protocol scorer for exported baseline models (transformer
 * descriptors ship their own serve_model.js): one JSON-escaped text per
 * input line, one float per output line. */

import { readFileSync } from "node:fs";

import { scoreLogistic } from "./logistic.js";

function main(): void {
  const path = process.argv[2];
  if (!path) {
    console.error("usage: score.js <model.json>");
    process.exit(2);
  }
  const doc = JSON.parse(readFileSync(path, "utf-8"));
  if (doc.model_kind !== "baseline_logistic") {
    console.error(`score.js handles baseline_logistic models, got ${doc.model_kind}`);
    process.exit(2);
  }
  const model = { vocabulary: doc.vocabulary, bias: doc.bias, threshold: doc.threshold };
  const chunks: Buffer[] = [];
  process.stdin.on("data", (d) => chunks.push(d));
  process.stdin.on("end", () => {
    const out: string[] = [];
    for (const line of Buffer.concat(chunks).toString("utf-8").split("\n")) {
      if (!line.trim()) continue;
      let text: unknown;
      try {
        text = JSON.parse(line);
      } catch {
        text = line;
      }
      out.push(scoreLogistic(model, String(text)).toFixed(6));
    }
    process.stdout.write(out.join("\n") + (out.length ? "\n" : ""));
  });
}

main();
