/** Display formatting. The only "numeric" code in the client. */

import { WireNumber } from "./types.js";

/** Compact float rendering: enough digits to be useful, no trailing noise. */
export function fmtFloat(x: number, digits = 9): string {
  if (!Number.isFinite(x)) return String(x);
  if (x === 0) return "0";
  const s = x.toPrecision(digits);
  return s.includes(".") ? s.replace(/0+$/, "").replace(/\.$/, "") : s;
}

export function fmtWire(n: WireNumber, digits = 9): string {
  return fmtFloat(n.float, digits);
}

/** Parse a measurement typed by the user; null when not a finite number. */
export function parseMeasurement(text: string): number | null {
  const t = text.trim();
  if (t === "") return null;
  const v = Number(t);
  return Number.isFinite(v) ? v : null;
}
