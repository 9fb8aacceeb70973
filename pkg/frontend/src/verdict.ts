/** Verdict view model: an API result paired with what the user asked. */

import type { VerifyResponse } from "./api.js";

export interface VerdictView {
  claim: string;
  submittedAt: Date;
  result: VerifyResponse;
}

/** Fixed label -> color mapping; anything unexpected falls back to gray. */
export const LABEL_COLORS: Record<string, string> = {
  true: "green",
  false: "red",
  partially_true: "amber",
  unverified: "gray",
};

export function labelColor(label: string): string {
  return LABEL_COLORS[label] ?? "gray";
}

/** Confidence as a percentage with exactly one decimal, e.g. "84.3%". */
export function formatConfidence(confidence: number): string {
  return `${(confidence * 100).toFixed(1)}%`;
}

export function makeVerdict(
  claim: string,
  result: VerifyResponse,
  now: () => Date = () => new Date(),
): VerdictView {
  return { claim, submittedAt: now(), result };
}
