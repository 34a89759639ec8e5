/** Acceptance: the exported baseline must load in the scanner engine,
 * which then classifies the English fixture notice texts positive. The
 * scanner is reached only through its CLI (the model-file interface plus
 * the classify line protocol). */

import { execFileSync, execSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { splitDataset, validateDataset } from "../src/dataset.js";
import { exportBaseline } from "../src/exportModel.js";
import { generateDataset } from "../src/genDataset.js";
import { scoreLogistic, trainLogistic } from "../src/logistic.js";
import { evaluate } from "../src/metrics.js";

function pythonAvailable(): boolean {
  try {
    execSync("python3 -c 'import consentscan'", { stdio: "ignore" });
    return true;
  } catch {
    return false;
  }
}

const HAVE_SCANNER = pythonAvailable();

describe("training round-trip into the scanner engine", () => {
  let modelPath: string;
  let f1: number;

  beforeAll(() => {
    const dataset = generateDataset(120, 7);
    validateDataset(dataset);
    const split = splitDataset(dataset, 7, 100, 20);
    const model = trainLogistic(split.train);
    const report = evaluate(split.heldOut, (t) => scoreLogistic(model, t), model.threshold);
    f1 = report.rows[0].f1;
    const dir = mkdtempSync(join(tmpdir(), "trainer-integration-"));
    modelPath = join(dir, "baseline.json");
    exportBaseline(model, modelPath);
  });

  it("achieves F1 >= 0.9 on the held-out split", () => {
    expect(f1).toBeGreaterThanOrEqual(0.9);
  });

  it.skipIf(!HAVE_SCANNER)(
    "scanner classifies English fixture notice texts positive with the exported model",
    () => {
      const texts: string[] = JSON.parse(
        execFileSync(
          "python3",
          [
            "-c",
            "import json\n" +
              "from consentscan.fixtures import FIXTURES\n" +
              "print(json.dumps([f.notice_text for f in FIXTURES " +
              "if f.truth.has_notice and f.truth.language == 'en']))",
          ],
        ).toString()
      );
      expect(texts.length).toBeGreaterThanOrEqual(8);
      const payload = texts.map((t) => JSON.stringify(t)).join("\n") + "\n";
      const stdout = execFileSync(
        "python3",
        ["-m", "consentscan.cli", "classify", "--model", modelPath],
        { input: payload }
      ).toString();
      const scores = stdout.trim().split("\n").map(Number);
      expect(scores).toHaveLength(texts.length);
      for (const score of scores) {
        expect(score).toBeGreaterThanOrEqual(0.5);
      }
    },
    120_000
  );

  it.skipIf(!HAVE_SCANNER)(
    "scanner rejects nothing and scores non-notice texts negative",
    () => {
      const negatives = [
        "The ultimate chocolate chip cookie recipe with extra baking tips",
        "Sign in to your account with your username and password",
      ];
      const payload = negatives.map((t) => JSON.stringify(t)).join("\n") + "\n";
      const stdout = execFileSync(
        "python3",
        ["-m", "consentscan.cli", "classify", "--model", modelPath],
        { input: payload }
      ).toString();
      const scores = stdout.trim().split("\n").map(Number);
      for (const score of scores) {
        expect(score).toBeLessThan(0.5);
      }
    },
    120_000
  );
});
