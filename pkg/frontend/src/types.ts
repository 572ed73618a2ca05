/** Shared types mirroring the routing service's JSON payloads. */

export type ClassCode = 0 | 1 | 2 | 3 | 4;

export interface ClassInfo {
  code: ClassCode;
  name: string;
  label: string;
  /** Keyboard shortcut, "1" through "5" in class-code order. */
  key: string;
}

/** The five routing groups in fixed code order; identical in every view. */
export const CLASSES: readonly ClassInfo[] = [
  { code: 0, name: "abdominal", label: "Abdominal", key: "1" },
  { code: 1, name: "adult_chest", label: "Adult chest", key: "2" },
  { code: 2, name: "pediatric_chest", label: "Pediatric chest", key: "3" },
  { code: 3, name: "spine", label: "Spine", key: "4" },
  { code: 4, name: "others", label: "Others", key: "5" },
] as const;

export interface RoundLabel {
  reader: string;
  label: number;
}

/** One review-queue entry, exactly as the service serializes it. */
export interface QueueEntry {
  id: string;
  probs: number[];
  predicted: number;
  max_prob: number;
  created_ts: number;
  round1: RoundLabel | null;
  round2: RoundLabel | null;
  consensus: number | null;
  needs_adjudication: boolean;
  pending_round: number | null;
  rendition_url: string;
}

/** Adjudication submits as round 3 on the wire. */
export type SessionRound = 1 | 2 | "adjudication";

export interface ReaderSession {
  reader: string;
  round: SessionRound;
}

export function wireRound(round: SessionRound): number {
  return round === "adjudication" ? 3 : round;
}
