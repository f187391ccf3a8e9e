// Pure presentation logic: turns service responses into the exact strings
// and numbers the DOM shows. No DOM access here so it all runs under vitest.
//
// Rule: the client never formats singularity values itself. The three value
// fields show report.display verbatim, which keeps them byte-identical to
// the command-line evaluator for the same pose.

import type {
  ApiError,
  CheckOut,
  ConditionOut,
  EntityOut,
  ReportOut,
} from "./api.js";

export function bannerVisible(report: ReportOut | null): boolean {
  return report !== null && report.near_singular;
}

export interface DisplayStrings {
  raw: string;
  normalized: string;
  epsilon: string;
}

export function displayValues(report: ReportOut): DisplayStrings {
  return {
    raw: report.display.raw_value,
    normalized: report.display.normalized_measure,
    epsilon: report.display.epsilon,
  };
}

export function entityLabel(e: EntityOut): string {
  const star = e.starred ? " (starred labels)" : "";
  return `${e.kind} {${e.labels.join(", ")}}${star}`;
}

/** Lines for the condition panel; the statement itself is shown verbatim. */
export function conditionLines(cond: ConditionOut): string[] {
  const lines = [cond.statement, `group ${cond.group}, verification: ${cond.verified}`];
  for (const e of cond.entities) lines.push(entityLabel(e));
  if (cond.residual.length > 0) {
    lines.push(`residual labels: ${cond.residual.join(", ")}`);
  }
  return lines;
}

export function checkLine(c: CheckOut): string {
  const value = c.infinite ? "infinite" : String(c.condition_number);
  return `${c.name}: ${value}`;
}

/**
 * Maps the normalized measure onto a 0..1 gauge, log scale. 0 means at or
 * under epsilon (singular), 1 means six decades above it or more.
 */
export function gaugeFraction(normalized: number, epsilon: number): number {
  if (!(epsilon > 0) || !(normalized > epsilon)) return 0;
  const decades = Math.log10(normalized / epsilon);
  return Math.min(1, decades / 6);
}

export function parseEpsilon(text: string): number | null {
  const value = Number(text.trim());
  if (!Number.isFinite(value) || value <= 0) return null;
  return value;
}

// ---------------------------------------------------------------------------
// error rendering

export function isStaleSession(error: ApiError): boolean {
  return error.status === 409 && typeof error.detail === "string"
    && error.detail.startsWith("stale session");
}

/** Flattens any error detail shape the service produces into display lines. */
export function errorLines(error: ApiError): string[] {
  const d = error.detail;
  if (typeof d === "string") return [d];
  if (d && typeof d === "object") {
    const violations = (d as { violations?: unknown }).violations;
    if (Array.isArray(violations)) return violations.map(String);
    if (Array.isArray(d)) {
      // pydantic 422 detail: list of {loc, msg, ...}
      return d.map((item) => {
        if (item && typeof item === "object" && "msg" in item) {
          const loc = Array.isArray((item as { loc?: unknown }).loc)
            ? ((item as { loc: unknown[] }).loc).join(".") + ": "
            : "";
          return loc + String((item as { msg: unknown }).msg);
        }
        return String(item);
      });
    }
  }
  return [`request failed with status ${error.status}`];
}
