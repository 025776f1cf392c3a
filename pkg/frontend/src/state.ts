/**
 * Pure view-state for the advisor screen.
 *
 * The screen is a pure function of (last authoritative session view, unsent
 * local input). Every transition here returns a fresh state object; nothing
 * touches the DOM or the network, which keeps reload-reconstruction and
 * rollback trivial and testable.
 */

import { parseMeasurement } from "./format.js";
import { SessionView, WhatIfView } from "./types.js";
import { SubmitValue } from "./api.js";

export interface AppState {
  session: SessionView | null;
  /** unsent measurement text, keyed by the pending point's exact string */
  inputs: Record<string, string>;
  /** per-field validation errors, same keys as inputs */
  fieldErrors: Record<string, string>;
  /** connectivity / conflict message shown in the banner, if any */
  banner: string | null;
  submitting: boolean;
  ghost: WhatIfView | null;
}

export function initialState(): AppState {
  return {
    session: null,
    inputs: {},
    fieldErrors: {},
    banner: null,
    submitting: false,
    ghost: null,
  };
}

/**
 * Apply an authoritative service response. Inputs for points that are still
 * pending survive (they are unsent local state); everything else is dropped.
 */
export function withSession(state: AppState, view: SessionView): AppState {
  const keep: Record<string, string> = {};
  for (const p of view.pending) {
    const existing = state.inputs[p.exact];
    if (existing !== undefined) keep[p.exact] = existing;
  }
  return {
    ...state,
    session: view,
    inputs: keep,
    fieldErrors: {},
    banner: null,
    submitting: false,
    ghost: null,
  };
}

export function withInput(state: AppState, key: string, text: string): AppState {
  const fieldErrors = { ...state.fieldErrors };
  delete fieldErrors[key];
  return { ...state, inputs: { ...state.inputs, [key]: text }, fieldErrors };
}

export function withBanner(state: AppState, banner: string | null): AppState {
  return { ...state, banner };
}

export function withSubmitting(state: AppState, submitting: boolean): AppState {
  return { ...state, submitting };
}

export function withGhost(state: AppState, ghost: WhatIfView | null): AppState {
  return { ...state, ghost };
}

export interface ValidationResult {
  ok: boolean;
  values: SubmitValue[];
  fieldErrors: Record<string, string>;
}

/**
 * Check one numeric value per pending point. Nothing is sent unless every
 * field parses; offending fields get inline messages.
 */
export function validateInputs(state: AppState): ValidationResult {
  const values: SubmitValue[] = [];
  const fieldErrors: Record<string, string> = {};
  const pending = state.session?.pending ?? [];
  for (const p of pending) {
    const text = state.inputs[p.exact] ?? "";
    const value = parseMeasurement(text);
    if (value === null) {
      fieldErrors[p.exact] = text.trim() === "" ? "enter the measured value" : "not a number";
    } else {
      values.push({ point: p.exact, value });
    }
  }
  return { ok: Object.keys(fieldErrors).length === 0, values, fieldErrors };
}

export function withFieldErrors(state: AppState, fieldErrors: Record<string, string>): AppState {
  return { ...state, fieldErrors };
}
