import { describe, expect, test } from "vitest";

import { fmtFloat, parseMeasurement } from "../src/format.js";

describe("fmtFloat", () => {
  test("trims trailing zeros", () => {
    expect(fmtFloat(0.5)).toBe("0.5");
    expect(fmtFloat(0.3169872981077807)).toBe("0.316987298");
    expect(fmtFloat(1)).toBe("1");
    expect(fmtFloat(0)).toBe("0");
  });
});

describe("parseMeasurement", () => {
  test("accepts plain and scientific notation", () => {
    expect(parseMeasurement(" 1.5 ")).toBe(1.5);
    expect(parseMeasurement("-2e-3")).toBe(-0.002);
  });

  test("rejects junk and non-finite values", () => {
    expect(parseMeasurement("")).toBeNull();
    expect(parseMeasurement("over 9000")).toBeNull();
    expect(parseMeasurement("Infinity")).toBeNull();
    expect(parseMeasurement("NaN")).toBeNull();
  });
});
