/**
 * DOM rendering. The screen is rebuilt from AppState on every change; exact
 * number strings ride along as title attributes (hover to audit), floats are
 * what you read. Elements carry data-test hooks for the scripted tests.
 */

import { fmtWire } from "./format.js";
import { AppState } from "./state.js";
import { SessionView, WireNumber } from "./types.js";

export interface Handlers {
  onCreate(policyType: string, order: number, horizon: number | null): void;
  onInput(key: string, text: string): void;
  onSubmit(): void;
  onRefresh(): void;
  onWhatIfEnter(cell: number): void;
  onWhatIfLeave(): void;
}

const LINE_WIDTH = 640;
const LINE_HEIGHT = 60;

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(doc: Document, tag: string, attrs: Record<string, string>): Element {
  const node = doc.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

/** Map a wire number onto the session's full interval in pixels. */
function scaler(view: SessionView): (x: number) => number {
  const lo = Math.min(view.interval.a.float, ...view.history.map((h) => h.point.float));
  const hi = Math.max(view.interval.b.float, ...view.history.map((h) => h.point.float));
  const span = hi - lo || 1;
  return (x: number) => 20 + ((x - lo) / span) * (LINE_WIDTH - 40);
}

function renderNumberLine(doc: Document, state: AppState, handlers: Handlers): Element {
  const view = state.session!;
  const svg = svgEl(doc, "svg", {
    width: String(LINE_WIDTH),
    height: String(LINE_HEIGHT),
    "data-test": "number-line",
  });
  const sx = scaler(view);
  const mid = LINE_HEIGHT / 2;

  const axis = svgEl(doc, "line", {
    x1: "20",
    x2: String(LINE_WIDTH - 20),
    y1: String(mid),
    y2: String(mid),
    stroke: "#bbb",
  });
  svg.appendChild(axis);

  // current interval
  const a = view.interval.a.float;
  const b = view.interval.b.float;
  svg.appendChild(
    svgEl(doc, "rect", {
      x: String(sx(a)),
      width: String(Math.max(sx(b) - sx(a), 1)),
      y: String(mid - 8),
      height: "16",
      fill: "#cfe8ff",
      "data-test": "interval-rect",
    }),
  );

  // ghost overlay from a what-if preview
  if (state.ghost) {
    const ga = state.ghost.interval.a.float;
    const gb = state.ghost.interval.b.float;
    svg.appendChild(
      svgEl(doc, "rect", {
        x: String(sx(ga)),
        width: String(Math.max(sx(gb) - sx(ga), 1)),
        y: String(mid - 12),
        height: "24",
        fill: "rgba(255,180,60,0.35)",
        "data-test": "ghost-rect",
      }),
    );
  }

  // tested points (grey), retained point (filled), suggested points (rings)
  for (const h of view.history) {
    svg.appendChild(
      svgEl(doc, "circle", {
        cx: String(sx(h.point.float)),
        cy: String(mid),
        r: "3",
        fill: "#999",
      }),
    );
  }
  if (view.retained) {
    svg.appendChild(
      svgEl(doc, "circle", {
        cx: String(sx(view.retained.float)),
        cy: String(mid),
        r: "5",
        fill: "#1663a8",
        "data-test": "retained-dot",
      }),
    );
  }
  const candidates = whatIfCandidates(view);
  view.pending.forEach((p) => {
    const cell = candidates.findIndex((c) => c.exact === p.exact);
    const dot = svgEl(doc, "circle", {
      cx: String(sx(p.float)),
      cy: String(mid),
      r: "6",
      fill: "none",
      stroke: "#d2691e",
      "stroke-width": "2",
      "data-test": "suggested-dot",
      "data-cell": String(cell),
    });
    dot.addEventListener("mouseenter", () => handlers.onWhatIfEnter(cell));
    dot.addEventListener("mouseleave", () => handlers.onWhatIfLeave());
    svg.appendChild(dot);
  });
  return svg;
}

/** Pending plus retained, ascending: the candidate cells of the current step. */
export function whatIfCandidates(view: SessionView): WireNumber[] {
  const all = [...view.pending];
  if (view.retained) all.push(view.retained);
  return all.sort((x, y) => x.float - y.float);
}

function renderCreateForm(doc: Document, handlers: Handlers): Element {
  const form = el(doc, "div", { "data-test": "create-form", class: "create-form" });
  form.appendChild(el(doc, "h2", {}, "New session"));
  const select = el(doc, "select", { "data-test": "policy-type" });
  for (const t of ["odd_block_h", "odd_block_w", "even_block", "golden", "two_test_special"]) {
    select.appendChild(el(doc, "option", { value: t }, t));
  }
  const order = el(doc, "input", { "data-test": "policy-order", value: "2", size: "3" });
  const horizon = el(doc, "input", {
    "data-test": "policy-horizon",
    placeholder: "horizon (optional)",
    size: "14",
  });
  const button = el(doc, "button", { "data-test": "create-button" }, "Create session");
  button.addEventListener("click", () => {
    const h = (horizon as HTMLInputElement).value.trim();
    handlers.onCreate(
      (select as HTMLSelectElement).value,
      Number((order as HTMLInputElement).value || "2"),
      h === "" ? null : Number(h),
    );
  });
  form.append(select, doc.createTextNode(" order i = "), order, doc.createTextNode(" "), horizon, doc.createTextNode(" "), button);
  return form;
}

function renderPendingInputs(doc: Document, state: AppState, handlers: Handlers): Element {
  const view = state.session!;
  const box = el(doc, "div", { "data-test": "pending-box" });
  box.appendChild(el(doc, "h3", {}, `Measure at ${view.pending.length} point(s)`));
  for (const p of view.pending) {
    const row = el(doc, "div", { class: "pending-row", "data-test": "pending-row" });
    const label = el(doc, "label", { title: p.exact, "data-test": "pending-point" }, fmtWire(p));
    const input = el(doc, "input", {
      "data-test": "pending-input",
      "data-key": p.exact,
      value: state.inputs[p.exact] ?? "",
      placeholder: "measured value",
    });
    input.addEventListener("input", () =>
      handlers.onInput(p.exact, (input as HTMLInputElement).value),
    );
    row.append(label, doc.createTextNode(" → "), input);
    const err = state.fieldErrors[p.exact];
    if (err) {
      row.appendChild(el(doc, "span", { class: "field-error", "data-test": "field-error" }, err));
    }
    box.appendChild(row);
  }
  const submit = el(doc, "button", { "data-test": "submit-button" }, "Submit results");
  if (state.submitting || view.status === "finished" || view.pending.length === 0) {
    submit.setAttribute("disabled", "disabled");
  }
  submit.addEventListener("click", () => handlers.onSubmit());
  box.appendChild(submit);
  return box;
}

function renderHistory(doc: Document, view: SessionView): Element {
  const table = el(doc, "table", { "data-test": "history-table" });
  const head = el(doc, "tr");
  head.append(el(doc, "th", {}, "#"), el(doc, "th", {}, "point"), el(doc, "th", {}, "value"));
  table.appendChild(head);
  view.history.forEach((h, idx) => {
    const row = el(doc, "tr", { "data-test": "history-row" });
    row.append(
      el(doc, "td", {}, String(idx + 1)),
      el(doc, "td", { title: h.point.exact }, fmtWire(h.point)),
      el(doc, "td", {}, String(h.value)),
    );
    table.appendChild(row);
  });
  return table;
}

export function render(root: HTMLElement, state: AppState, handlers: Handlers): void {
  const doc = root.ownerDocument;
  root.textContent = "";

  if (state.banner) {
    const banner = el(doc, "div", { class: "banner", "data-test": "banner" }, state.banner);
    const retry = el(doc, "button", { "data-test": "refresh-button" }, "refresh");
    retry.addEventListener("click", () => handlers.onRefresh());
    banner.appendChild(retry);
    root.appendChild(banner);
  }

  if (!state.session) {
    root.appendChild(renderCreateForm(doc, handlers));
    return;
  }

  const view = state.session;
  const header = el(doc, "div", { "data-test": "header" });
  header.appendChild(
    el(doc, "h2", {}, `Session ${view.id.slice(0, 8)} · ${JSON.stringify(view.policy)}`),
  );
  header.appendChild(
    el(
      doc,
      "span",
      { "data-test": "status" },
      `${view.status} · step ${view.steps_done}${view.horizon ? "/" + view.horizon : ""}`,
    ),
  );
  root.appendChild(header);

  root.appendChild(renderNumberLine(doc, state, handlers));

  const interval = el(doc, "div", { "data-test": "interval-readout" });
  interval.append(
    doc.createTextNode("interval ["),
    el(doc, "span", { title: view.interval.a.exact, "data-test": "interval-a" }, fmtWire(view.interval.a)),
    doc.createTextNode(", "),
    el(doc, "span", { title: view.interval.b.exact, "data-test": "interval-b" }, fmtWire(view.interval.b)),
    doc.createTextNode("]"),
  );
  root.appendChild(interval);

  const bound = el(doc, "div", { "data-test": "bound-readout" });
  bound.append(
    doc.createTextNode("guaranteed error ≤ "),
    el(doc, "span", { title: view.bound.exact, "data-test": "bound-value" }, fmtWire(view.bound)),
  );
  root.appendChild(bound);

  if (view.status === "finished") {
    const best = view.retained ?? view.history[view.history.length - 1]?.point;
    root.appendChild(
      el(
        doc,
        "div",
        { "data-test": "finished" },
        best ? `finished — best point ${fmtWire(best)}` : "finished",
      ),
    );
  } else {
    root.appendChild(renderPendingInputs(doc, state, handlers));
  }

  root.appendChild(renderHistory(doc, view));
}
