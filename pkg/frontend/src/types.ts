/**
 * Mirrors of the advisor service's JSON payloads.
 *
 * Every number in the wire format carries both an exact string (audit trail,
 * shown on hover) and a float (display). The UI never computes with these
 * beyond formatting: all bounds, intervals and suggestions come from the
 * service.
 */

export interface WireNumber {
  exact: string;
  float: number;
}

export interface HistoryEntry {
  point: WireNumber;
  value: number;
}

export interface SessionView {
  id: string;
  mode: string;
  status: "running" | "finished";
  policy: Record<string, unknown>;
  horizon: number | null;
  steps_done: number;
  interval: { a: WireNumber; b: WireNumber };
  retained: WireNumber | null;
  pending: WireNumber[];
  bound: WireNumber;
  history: HistoryEntry[];
  created_ts: number;
  updated_ts: number;
}

export interface WhatIfView {
  cell: number;
  interval: { a: WireNumber; b: WireNumber };
  retained: WireNumber;
}

export interface CreateSessionParams {
  policy: Record<string, unknown>;
  interval?: [number | string, number | string];
  horizon?: number | null;
  mode?: string;
}

/** Narrow an unknown JSON value into a SessionView, throwing on shape drift. */
export function asSessionView(data: unknown): SessionView {
  const v = data as SessionView;
  if (
    typeof v !== "object" ||
    v === null ||
    typeof v.id !== "string" ||
    !Array.isArray(v.pending) ||
    typeof v.bound !== "object" ||
    typeof v.interval !== "object"
  ) {
    throw new Error("malformed session payload");
  }
  return v;
}
