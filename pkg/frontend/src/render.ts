/** DOM view builders.
 *
 * Framework-free: each render* call replaces the root's contents and
 * wires in the handlers it is given. Views never talk to the network
 * themselves, and none of them ever asks which person is answering —
 * answers are posted bare, exactly like the service expects them.
 */
import { Rational } from "./rational.js";
import type {
  CriterionPayload,
  CurvePlane,
  GridPayload,
  MarginalEntry,
  PendingQuery,
  ResultPayload,
  TableEntry,
  UnitTableEntry,
} from "./types.js";

type Attrs = Record<string, string>;

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Attrs = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  for (const child of children) node.append(child);
  return node;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(doc: Document, tag: string, attrs: Attrs = {}): SVGElement {
  const node = doc.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function n2s(v: number): string {
  return String(Math.round(v * 100) / 100);
}

function mapper(lo: number, hi: number, out0: number, out1: number): (v: number) => number {
  const span = hi - lo || 1;
  return (v) => out0 + ((v - lo) / span) * (out1 - out0);
}

/* ------------------------------------------------------------------ */
/* query view                                                          */

export interface QueryHooks {
  onAnswer(raw: string): void;
  onNone(): void;
}

function planeSvg(
  doc: Document,
  pending: PendingQuery,
  scaleI: CriterionPayload,
  scaleJ: CriterionPayload,
): SVGElement {
  const q = pending.query;
  const xs = scaleI.breakpoints.map((b) => Rational.parse(b).toNumber());
  const ys = scaleJ.breakpoints.map((b) => Rational.parse(b).toNumber());
  const width = 320;
  const height = 230;
  const mx = mapper(xs[0], xs[xs.length - 1], 36, width - 12);
  const my = mapper(ys[0], ys[ys.length - 1], height - 26, 14);
  const root = svgEl(doc, "svg", {
    class: "plane",
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
    "data-plane": `${q.i},${q.j}`,
    "data-axes": `${q.criterion_i},${q.criterion_j}`,
  });
  for (const x of xs) {
    root.append(
      svgEl(doc, "line", {
        class: "grid",
        x1: n2s(mx(x)),
        y1: n2s(my(ys[0])),
        x2: n2s(mx(x)),
        y2: n2s(my(ys[ys.length - 1])),
      }),
    );
  }
  for (const y of ys) {
    root.append(
      svgEl(doc, "line", {
        class: "grid",
        x1: n2s(mx(xs[0])),
        y1: n2s(my(y)),
        x2: n2s(mx(xs[xs.length - 1])),
        y2: n2s(my(y)),
      }),
    );
  }
  // the second alternative is pinned at p_i; its j-component is the unknown
  const px = mx(Rational.parse(q.p_i).toNumber());
  root.append(
    svgEl(doc, "line", {
      class: "target",
      "data-role": "target-x",
      x1: n2s(px),
      y1: n2s(my(ys[0])),
      x2: n2s(px),
      y2: n2s(my(ys[ys.length - 1])),
    }),
  );
  root.append(
    svgEl(doc, "circle", {
      class: "probe",
      "data-role": "probe",
      "data-x": q.q_i,
      "data-y": q.q_j,
      cx: n2s(mx(Rational.parse(q.q_i).toNumber())),
      cy: n2s(my(Rational.parse(q.q_j).toNumber())),
      r: "5",
    }),
  );
  const labelI = svgEl(doc, "text", {
    class: "axis",
    x: n2s(width / 2),
    y: n2s(height - 6),
  });
  labelI.textContent = q.criterion_i;
  const labelJ = svgEl(doc, "text", {
    class: "axis target-axis",
    "data-role": "target-axis",
    x: "4",
    y: n2s(height / 2),
  });
  labelJ.textContent = q.criterion_j;
  root.append(labelI, labelJ);
  return root;
}

export function renderQueryView(
  root: HTMLElement,
  pending: PendingQuery,
  grid: GridPayload | null,
  hooks: QueryHooks,
  shareHref?: string,
): void {
  const doc = root.ownerDocument;
  const q = pending.query;
  root.replaceChildren();
  const section = el(doc, "section", {
    class: "query-view",
    "data-role": "query-view",
    "data-i": String(q.i),
    "data-j": String(q.j),
    "data-q-i": q.q_i,
    "data-q-j": q.q_j,
    "data-p-i": q.p_i,
    "data-criterion-i": q.criterion_i,
    "data-criterion-j": q.criterion_j,
    "data-answers-received": String(pending.answers_received),
  });
  section.append(
    el(
      doc,
      "p",
      { class: "progress", "data-role": "progress" },
      `answers received for this question: ${pending.answers_received} of 2`,
    ),
  );
  section.append(el(doc, "h2", {}, "Matching question"));
  section.append(el(doc, "p", { class: "phrasing", "data-role": "phrasing" }, pending.phrasing));

  const fixed = el(
    doc,
    "div",
    { class: "option", "data-role": "option-fixed" },
    el(doc, "span", {}, `${q.criterion_i}: ${q.q_i}`),
    el(doc, "span", {}, `${q.criterion_j}: ${q.q_j}`),
  );
  const open = el(
    doc,
    "div",
    { class: "option", "data-role": "option-open" },
    el(doc, "span", {}, `${q.criterion_i}: ${q.p_i}`),
    el(doc, "span", { class: "unknown", "data-role": "unknown" }, `${q.criterion_j}: ?`),
  );
  section.append(el(doc, "div", { class: "alternatives" }, fixed, open));

  const scaleI = grid?.criteria[q.i - 1] ?? null;
  const scaleJ = grid?.criteria[q.j - 1] ?? null;
  if (scaleI && scaleJ) section.append(planeSvg(doc, pending, scaleI, scaleJ));

  const value = el(doc, "input", {
    type: "text",
    inputmode: "decimal",
    "data-role": "answer-value",
    "aria-label": `matching ${q.criterion_j} value`,
  });
  const form = el(
    doc,
    "form",
    { class: "answer", "data-role": "answer-form" },
    el(doc, "label", {}, `matching ${q.criterion_j} value `, value),
  );
  if (scaleJ && scaleJ.breakpoints.length > 0) {
    const lo = Rational.parse(scaleJ.breakpoints[0]).toNumber();
    const hi = Rational.parse(scaleJ.breakpoints[scaleJ.breakpoints.length - 1]).toNumber();
    const slider = el(doc, "input", {
      type: "range",
      "data-role": "answer-slider",
      "aria-label": `matching ${q.criterion_j} value, coarse`,
      min: String(lo),
      max: String(hi),
      step: "any",
      value: String(lo),
    });
    slider.addEventListener("input", () => {
      value.value = slider.value;
    });
    form.append(slider);
  }
  const submit = el(doc, "button", { type: "button", "data-role": "submit-answer" }, "submit answer");
  submit.addEventListener("click", () => hooks.onAnswer(value.value));
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    hooks.onAnswer(value.value);
  });
  const none = el(doc, "button", { type: "button", "data-role": "none-answer" }, "cannot compensate");
  none.addEventListener("click", () => hooks.onNone());
  form.append(submit, none);
  section.append(form);
  section.append(el(doc, "p", { class: "client-error", "data-role": "client-error" }));
  section.append(el(doc, "div", { "data-role": "service-error-area" }));
  if (shareHref) {
    section.append(
      el(
        doc,
        "p",
        { class: "share" },
        el(doc, "a", { "data-role": "share-link", href: shareHref }, "interview link for the other device"),
      ),
    );
  }
  root.append(section);
}

export function setClientError(root: HTMLElement, text: string): void {
  const slot = root.querySelector<HTMLElement>('[data-role="client-error"]');
  if (slot) slot.textContent = text;
}

export interface ErrorLike {
  code: string;
  message: string;
  raw: string;
}

/** Show a service error verbatim inside the current view (or the root
 * when the view has no slot for it). */
export function showServiceError(root: HTMLElement, err: ErrorLike): void {
  const doc = root.ownerDocument;
  const area = root.querySelector<HTMLElement>('[data-role="service-error-area"]') ?? root;
  area.replaceChildren(
    el(
      doc,
      "div",
      { class: "service-error", "data-role": "service-error" },
      el(doc, "strong", {}, err.code),
      " ",
      el(doc, "span", {}, err.message),
      el(doc, "pre", { "data-role": "error-raw" }, err.raw),
    ),
  );
}

export function renderErrorView(root: HTMLElement, err: ErrorLike): void {
  const doc = root.ownerDocument;
  root.replaceChildren(el(doc, "section", { class: "error-view", "data-role": "error-view" }));
  showServiceError(root, err);
}

/* ------------------------------------------------------------------ */
/* result view                                                         */

function slopeTable(
  doc: Document,
  grid: GridPayload,
  entry: TableEntry | UnitTableEntry,
  kind: "slope" | "unit-slope",
): HTMLTableElement {
  const weights = "weights" in entry ? entry.weights : null;
  const names = grid.criteria.map((c) => c.name);
  const maxIntervals = Math.max(1, ...names.map((n) => entry.slopes[n]?.length ?? 0));
  const table = el(doc, "table", { class: "slopes", "data-model": entry.label, "data-kind": kind });
  table.append(el(doc, "caption", {}, entry.label));
  const head = el(doc, "tr", {}, el(doc, "th", {}, "criterion"));
  for (let l = 1; l <= maxIntervals; l++) head.append(el(doc, "th", {}, `interval ${l}`));
  if (weights) head.append(el(doc, "th", {}, "weight"));
  const thead = el(doc, "thead", {}, head);
  const tbody = el(doc, "tbody", {});
  for (const name of names) {
    const row = el(doc, "tr", {}, el(doc, "th", {}, name));
    const slopes = entry.slopes[name] ?? [];
    for (let l = 1; l <= maxIntervals; l++) {
      row.append(
        el(
          doc,
          "td",
          { "data-role": kind, "data-criterion": name, "data-interval": String(l) },
          slopes[l - 1] ?? "",
        ),
      );
    }
    if (weights) {
      row.append(el(doc, "td", { "data-role": "weight", "data-criterion": name }, weights[name] ?? ""));
    }
    tbody.append(row);
  }
  table.append(thead, tbody);
  return table;
}

interface Series {
  attrs: Attrs;
  points: [string, string][];
}

function polylineFigure(doc: Document, caption: string, attrs: Attrs, series: Series[]): HTMLElement {
  const width = 320;
  const height = 210;
  let xmin = Infinity;
  let xmax = -Infinity;
  let ymin = Infinity;
  let ymax = -Infinity;
  const parsed = series.map((s) => ({
    attrs: s.attrs,
    points: s.points.map(([x, y]) => [Rational.parse(x).toNumber(), Rational.parse(y).toNumber()]),
  }));
  for (const s of parsed) {
    for (const [x, y] of s.points) {
      xmin = Math.min(xmin, x);
      xmax = Math.max(xmax, x);
      ymin = Math.min(ymin, y);
      ymax = Math.max(ymax, y);
    }
  }
  if (!Number.isFinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  const mx = mapper(xmin, xmax, 30, width - 10);
  const my = mapper(ymin, ymax, height - 20, 10);
  const chart = svgEl(doc, "svg", {
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
  });
  for (const s of parsed) {
    if (!s.points.length) continue;
    const line = svgEl(doc, "polyline", {
      ...s.attrs,
      points: s.points.map(([x, y]) => `${n2s(mx(x))},${n2s(my(y))}`).join(" "),
    });
    chart.append(line);
  }
  const figure = el(doc, "figure", attrs, chart);
  figure.append(el(doc, "figcaption", {}, caption));
  return figure;
}

function marginalFigure(doc: Document, entry: MarginalEntry, modelIndex: Map<string, number>): HTMLElement {
  return polylineFigure(
    doc,
    `marginal value of ${entry.criterion}: ${entry.series.map((s) => s.model).join(", ")}`,
    { "data-role": "marginal", "data-criterion": entry.criterion },
    entry.series.map((s) => ({
      attrs: {
        class: `series model-${modelIndex.get(s.model) ?? 0}`,
        "data-model": s.model,
      },
      points: s.points,
    })),
  );
}

function curveFigure(doc: Document, plane: CurvePlane, modelIndex: Map<string, number>): HTMLElement {
  return polylineFigure(
    doc,
    `indifference curves on ${plane.axes[0]} × ${plane.axes[1]}`,
    { "data-role": "curve-plane", "data-plane": `${plane.plane[0]},${plane.plane[1]}` },
    plane.curves.map((c) => ({
      attrs: {
        class: `series model-${modelIndex.get(c.model) ?? 0}`,
        "data-model": c.model,
        "data-level": c.level,
      },
      points: c.points,
    })),
  );
}

export function renderResultView(root: HTMLElement, result: ResultPayload): void {
  const doc = root.ownerDocument;
  root.replaceChildren();
  const section = el(doc, "section", {
    class: "result-view",
    "data-role": "result-view",
    "data-outcome": result.outcome,
  });
  const headings: Record<string, string> = {
    "two-models": "Recovered value functions",
    "identical-models": "Recovered value function",
    degenerate: "The interview could not be completed",
  };
  section.append(el(doc, "h2", {}, headings[result.outcome] ?? "Result"));
  if (result.outcome === "identical-models") {
    section.append(
      el(
        doc,
        "p",
        { class: "notice", "data-role": "identical-notice" },
        "Every answer pair coincided: one shared value function explains both series of answers.",
      ),
    );
  }
  if (result.error) {
    const panel = el(
      doc,
      "div",
      { class: "failure", "data-role": "failure-panel" },
      el(doc, "p", {}, result.error.message),
    );
    const context = result.error.context as { blocked?: unknown } | null;
    const blocked = context && Array.isArray(context.blocked) ? context.blocked : null;
    if (blocked) {
      const list = el(doc, "ul", { "data-role": "blocked-list" });
      for (const item of blocked) {
        if (Array.isArray(item) && item.length === 2) {
          list.append(el(doc, "li", {}, `criterion ${item[0]}, interval ${item[1]}`));
        }
      }
      panel.append(
        el(doc, "p", {}, "No remaining query pattern can tell the two answer series apart at:"),
        list,
      );
    }
    panel.append(
      el(doc, "pre", { "data-role": "failure-context" }, JSON.stringify(result.error.context ?? {}, null, 2)),
    );
    section.append(panel);
  }
  section.append(
    el(doc, "p", { class: "queries", "data-role": "query-count" }, `queries asked: ${result.query_count}`),
  );
  const breakdown = Object.entries(result.breakdown);
  if (breakdown.length) {
    section.append(
      el(
        doc,
        "p",
        { class: "breakdown", "data-role": "breakdown" },
        breakdown.map(([k, v]) => `${k} ${v}`).join(" · "),
      ),
    );
  }

  const modelIndex = new Map<string, number>();
  for (const entry of result.tables) {
    if (!modelIndex.has(entry.label)) modelIndex.set(entry.label, modelIndex.size);
  }

  if (result.tables.length) {
    section.append(el(doc, "h3", {}, "Slope tables (anchor-normalized)"));
    for (const entry of result.tables) section.append(slopeTable(doc, result.grid, entry, "slope"));
  }
  if (result.tables_unit?.length) {
    section.append(el(doc, "h3", {}, "Rescaled to [0, 1] with criterion weights"));
    for (const entry of result.tables_unit) {
      section.append(slopeTable(doc, result.grid, entry, "unit-slope"));
    }
  }
  if (result.marginals?.length) {
    section.append(el(doc, "h3", {}, "Marginal value functions"));
    for (const entry of result.marginals) section.append(marginalFigure(doc, entry, modelIndex));
  }
  if (result.curves?.length) {
    section.append(el(doc, "h3", {}, "Indifference curves"));
    for (const plane of result.curves) section.append(curveFigure(doc, plane, modelIndex));
  }
  root.append(section);
}

/* ------------------------------------------------------------------ */
/* create view                                                         */

export interface CreateHooks {
  onCreate(grid: GridPayload, epsilon: string | undefined): void;
}

function collectGrid(rows: HTMLElement): GridPayload | string {
  const criteria: CriterionPayload[] = [];
  for (const row of Array.from(rows.children)) {
    const label = row.querySelector<HTMLInputElement>('[data-role="criterion-label"]');
    const bps = row.querySelector<HTMLInputElement>('[data-role="criterion-breakpoints"]');
    if (!label || !bps) continue;
    const name = label.value.trim();
    const raw = bps.value.trim();
    if (!name && !raw) continue;
    const parts = raw
      .split(",")
      .map((p) => p.trim())
      .filter(Boolean);
    if (parts.length < 2) return `criterion ${criteria.length + 1}: list at least two scale breakpoints`;
    for (const part of parts) {
      try {
        Rational.parse(part);
      } catch {
        return `criterion ${criteria.length + 1}: ${JSON.stringify(part)} is not a number`;
      }
    }
    criteria.push({ name: name || `crit${criteria.length + 1}`, breakpoints: parts });
  }
  if (criteria.length < 2) return "define at least two criteria";
  return { criteria };
}

export function renderCreateForm(root: HTMLElement, hooks: CreateHooks): void {
  const doc = root.ownerDocument;
  root.replaceChildren();
  const section = el(doc, "section", { class: "create-view", "data-role": "create-view" });
  section.append(el(doc, "h2", {}, "Start a paired interview"));
  section.append(
    el(
      doc,
      "p",
      {},
      "Define the criteria scales once; afterwards the interview link can be opened " +
        "from any device, and every answer is taken without asking which device it came from.",
    ),
  );
  const rows = el(doc, "div", { "data-role": "criteria-rows" });
  const addRow = () => {
    const idx = rows.children.length + 1;
    rows.append(
      el(
        doc,
        "div",
        { class: "criterion-row" },
        el(doc, "input", {
          type: "text",
          "data-role": "criterion-label",
          placeholder: `e.g. crit${idx}`,
          "aria-label": `criterion ${idx} label`,
        }),
        el(doc, "input", {
          type: "text",
          "data-role": "criterion-breakpoints",
          placeholder: "0, 2, 4",
          "aria-label": `criterion ${idx} scale breakpoints`,
        }),
      ),
    );
  };
  addRow();
  addRow();
  section.append(rows);
  const add = el(doc, "button", { type: "button", "data-role": "add-criterion" }, "add criterion");
  add.addEventListener("click", addRow);
  const epsilon = el(doc, "input", {
    type: "text",
    "data-role": "epsilon",
    placeholder: "0",
    "aria-label": "answer tolerance",
  });
  const create = el(doc, "button", { type: "button", "data-role": "create-session" }, "create session");
  create.addEventListener("click", () => {
    const grid = collectGrid(rows);
    if (typeof grid === "string") {
      setClientError(root, grid);
      return;
    }
    const raw = epsilon.value.trim();
    hooks.onCreate(grid, raw ? raw : undefined);
  });
  section.append(
    add,
    el(doc, "label", {}, "tolerance ", epsilon),
    create,
    el(doc, "p", { class: "client-error", "data-role": "client-error" }),
    el(doc, "div", { "data-role": "service-error-area" }),
  );
  root.append(section);
}
