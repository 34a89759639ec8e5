import { TrainingExample } from "./dataset.js";

export interface ClassReport {
  instances: string;
  support: number;
  recall: number;
  precision: number;
  f1: number;
}

export interface EvalReport {
  rows: ClassReport[];
  total: ClassReport;
}

function safe(n: number, d: number): number {
  return d === 0 ? 0 : n / d;
}

function round2(v: number): number {
  return Math.floor(v * 100 + 0.5) / 100;
}

/** Per-class report over a held-out split: Support / Recall / Precision /
 * F1 for notices, for the remaining candidate elements, and in total. */
export function evaluate(
  heldOut: TrainingExample[],
  score: (text: string) => number,
  threshold: number
): EvalReport {
  let tp = 0,
    fp = 0,
    fn = 0,
    tn = 0;
  for (const ex of heldOut) {
    const positive = score(ex.text) >= threshold;
    if (ex.label === "notice") {
      positive ? tp++ : fn++;
    } else {
      positive ? fp++ : tn++;
    }
  }
  const noticeRow: ClassReport = {
    instances: "Notices",
    support: tp + fn,
    recall: round2(safe(tp, tp + fn)),
    precision: round2(safe(tp, tp + fp)),
    f1: round2(safe(2 * tp, 2 * tp + fp + fn)),
  };
  const otherRow: ClassReport = {
    instances: "Candidate Elements",
    support: fp + tn,
    recall: round2(safe(tn, tn + fp)),
    precision: round2(safe(tn, tn + fn)),
    f1: round2(safe(2 * tn, 2 * tn + fn + fp)),
  };
  const total: ClassReport = {
    instances: "Total",
    support: heldOut.length,
    recall: round2(safe(tp + tn, heldOut.length)),
    precision: round2(
      safe(noticeRow.precision * noticeRow.support + otherRow.precision * otherRow.support,
        heldOut.length)
    ),
    f1: round2(
      safe(noticeRow.f1 * noticeRow.support + otherRow.f1 * otherRow.support, heldOut.length)
    ),
  };
  return { rows: [noticeRow, otherRow], total };
}

export function formatReport(report: EvalReport): string {
  const header = ["Instances", "Support", "Recall", "Precision", "F1"];
  const lines = [header.join("\t")];
  for (const row of [...report.rows, report.total]) {
    lines.push(
      [row.instances, row.support, row.recall.toFixed(2), row.precision.toFixed(2), row.f1.toFixed(2)].join(
        "\t"
      )
    );
  }
  return lines.join("\n");
}
