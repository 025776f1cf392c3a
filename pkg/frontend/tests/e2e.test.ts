/**
 * Scripted browser session against the real advisor service.
 *
 * Spawns the Python service on a scratch port, drives the UI through DOM
 * events only (fill inputs, click buttons), and after every round checks
 * that what the screen shows matches the service's authoritative JSON.
 */

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { bootstrap, AppController } from "../src/main.js";

const PORT = 18000 + Math.floor(Math.random() * 2000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForHealth(): Promise<void> {
  for (let attempt = 0; attempt < 120; attempt++) {
    try {
      const resp = await fetch(`${BASE}/healthz`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("advisor service did not come up");
}

beforeAll(async () => {
  const logDir = mkdtempSync(join(tmpdir(), "advisor-e2e-"));
  server = spawn(
    "python3",
    ["-m", "blocksearch.cli", "advise-serve", "--port", String(PORT), "--log-dir", logDir],
    { stdio: "ignore" },
  );
  await waitForHealth();
});

afterAll(() => {
  server?.kill();
});

function q<T extends Element>(root: HTMLElement, selector: string): T {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`missing ${selector}`);
  return node as T;
}

function qa<T extends Element>(root: HTMLElement, selector: string): T[] {
  return Array.from(root.querySelectorAll(selector)) as T[];
}

async function serviceView(id: string): Promise<any> {
  const resp = await fetch(`${BASE}/sessions/${id}`);
  expect(resp.ok).toBe(true);
  return resp.json();
}

/** Assert the rendered interval/bound readouts equal the service's JSON. */
function expectScreenMatches(root: HTMLElement, view: any): void {
  const a = q<HTMLElement>(root, '[data-test="interval-a"]');
  const b = q<HTMLElement>(root, '[data-test="interval-b"]');
  const bound = q<HTMLElement>(root, '[data-test="bound-value"]');
  expect(Number(a.textContent)).toBeCloseTo(view.interval.a.float, 8);
  expect(Number(b.textContent)).toBeCloseTo(view.interval.b.float, 8);
  expect(Number(bound.textContent)).toBeCloseTo(view.bound.float, 8);
  // exact strings ride along on hover titles
  expect(a.getAttribute("title")).toBe(view.interval.a.exact);
  expect(b.getAttribute("title")).toBe(view.interval.b.exact);
  expect(bound.getAttribute("title")).toBe(view.bound.exact);
  const shownPending = qa<HTMLElement>(root, '[data-test="pending-point"]').map((el) =>
    Number(el.textContent),
  );
  expect(shownPending.length).toBe(view.pending.length);
  view.pending.forEach((p: any, k: number) => {
    expect(shownPending[k]).toBeCloseTo(p.float, 8);
  });
  expect(qa(root, '[data-test="history-row"]').length).toBe(view.history.length);
}

function enterMeasurements(root: HTMLElement, peak: number): void {
  for (const input of qa<HTMLInputElement>(root, '[data-test="pending-input"]')) {
    // read the point from the sibling label (display float), tent objective
    const label = input.parentElement!.querySelector('[data-test="pending-point"]')!;
    const point = Number(label.textContent);
    input.value = String(-Math.abs(point - peak));
    input.dispatchEvent(new Event("input", { bubbles: true }));
  }
}

describe("advisor UI end to end", () => {
  let app: AppController;
  let root: HTMLElement;
  let sessionId: string;

  test("create an order-2 H session from the form", async () => {
    root = document.createElement("div");
    document.body.appendChild(root);
    app = bootstrap(root, BASE);

    q<HTMLSelectElement>(root, '[data-test="policy-type"]').value = "odd_block_h";
    q<HTMLInputElement>(root, '[data-test="policy-order"]').value = "2";
    q<HTMLButtonElement>(root, '[data-test="create-button"]').click();
    await app.settle();

    const state = app.getState();
    expect(state.session).not.toBeNull();
    sessionId = state.session!.id;
    const view = await serviceView(sessionId);
    expect(view.pending.length).toBe(3);
    expectScreenMatches(root, view);
  });

  test("three rounds of measurements track the service exactly", async () => {
    const peak = 0.71;
    for (let round = 1; round <= 3; round++) {
      enterMeasurements(root, peak);
      q<HTMLButtonElement>(root, '[data-test="submit-button"]').click();
      await app.settle();
      const view = await serviceView(sessionId);
      expect(view.steps_done).toBe(round);
      expectScreenMatches(root, view);
      // the interval keeps the peak and the bound shrinks
      expect(view.interval.a.float).toBeLessThanOrEqual(peak);
      expect(view.interval.b.float).toBeGreaterThanOrEqual(peak);
    }
    const finalView = await serviceView(sessionId);
    expect(finalView.history.length).toBe(9);
    expect(finalView.bound.float).toBeLessThan(0.05);
  });

  test("what-if hover shows a ghost interval from the service preview", async () => {
    const dot = qa<SVGElement>(root, '[data-test="suggested-dot"]')[0]!;
    dot.dispatchEvent(new Event("mouseenter"));
    await app.settle();
    const ghost = q<SVGElement>(root, '[data-test="ghost-rect"]');
    expect(ghost).toBeTruthy();
    const cell = Number(dot.getAttribute("data-cell"));
    const resp = await fetch(`${BASE}/sessions/${sessionId}/whatif?cell=${cell}`);
    const preview = await resp.json();
    expect(app.getState().ghost!.interval.a.exact).toBe(preview.interval.a.exact);
    dot.dispatchEvent(new Event("mouseleave"));
    await app.settle();
    expect(root.querySelector('[data-test="ghost-rect"]')).toBeNull();
  });

  test("non-numeric entry shows an inline error and sends nothing", async () => {
    const before = await serviceView(sessionId);
    const input = qa<HTMLInputElement>(root, '[data-test="pending-input"]')[0]!;
    input.value = "not-a-number";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    q<HTMLButtonElement>(root, '[data-test="submit-button"]').click();
    await app.settle();
    expect(qa(root, '[data-test="field-error"]').length).toBeGreaterThan(0);
    const after = await serviceView(sessionId);
    expect(after.steps_done).toBe(before.steps_done);
    expect(after.history.length).toBe(before.history.length);
  });

  test("a session advanced elsewhere forces a refresh with a conflict banner", async () => {
    // advance the session behind the UI's back
    const view = await serviceView(sessionId);
    const values = view.pending.map((p: any) => ({ point: p.float, value: -Math.abs(p.float - 0.71) }));
    const resp = await fetch(`${BASE}/sessions/${sessionId}/results`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ values }),
    });
    expect(resp.ok).toBe(true);

    // the UI still shows the stale round; submitting it must conflict
    enterMeasurements(root, 0.71);
    q<HTMLButtonElement>(root, '[data-test="submit-button"]').click();
    await app.settle();
    expect(q<HTMLElement>(root, '[data-test="banner"]').textContent).toContain("advanced elsewhere");
    const fresh = await serviceView(sessionId);
    expectScreenMatches(root, fresh);
  });
});
