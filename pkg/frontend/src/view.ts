/**
 * The decision-maker console: sliders in, reduced Pareto set out.
 *
 * Weight sliders carry live consistency and natural-compromise badges,
 * confidence sliders show which branch of the three-stage procedure is
 * active, and every accepted response paints the membership heatmap,
 * refreshes the tier legend and appends a history chip.  Submit stays
 * disabled whenever the local validator (which mirrors the server)
 * rejects the draft.
 */

import { ApiClient } from "./api.js";
import { HeatmapRenderer, legendItems } from "./heatmap.js";
import { ExplorerState, ScenarioDraft } from "./state.js";
import { consistencyStatus } from "./validation.js";
import type { ReduceRequest, ReduceResponse } from "./types.js";

interface SliderSpec {
  label: string;
  min: number;
  max: number;
  step: number;
  get(request: ReduceRequest): number;
  set(request: ReduceRequest, value: number): void;
}

const WEIGHT_SLIDERS: Array<[string, SliderSpec]> = (
  [
    ["q1w1", "quantum1", "w1"],
    ["q1w2", "quantum1", "w2"],
    ["q1w3", "quantum1", "w3"],
    ["q2w1", "quantum2", "w1"],
    ["q2w2", "quantum2", "w2"],
    ["q2w3", "quantum2", "w3"],
  ] as Array<[string, "quantum1" | "quantum2", "w1" | "w2" | "w3"]>
).map(([id, section, name]) => [
  id,
  {
    label: `${section === "quantum1" ? "w(1)" : "w(2)"} ${name}`,
    min: 0.1,
    max: 10,
    step: 0.1,
    get: (request) => request[section][name],
    set: (request, value) => {
      request[section][name] = value;
    },
  },
]);

const CONFIDENCE_SLIDERS: Array<[string, SliderSpec]> = (
  [
    ["mu1", "quantum1"],
    ["mu2", "quantum2"],
  ] as Array<[string, "quantum1" | "quantum2"]>
).map(([id, section]) => [
  id,
  {
    label: id,
    min: 0,
    max: 1,
    step: 0.01,
    get: (request) => request[section].mu ?? 0,
    set: (request, value) => {
      request[section].mu = value;
    },
  },
]);

export class ExplorerView {
  readonly state: ExplorerState;
  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private readonly sliders = new Map<string, HTMLInputElement>();
  private heatmap!: HeatmapRenderer;
  private inFlight = false;
  private lastResponse: ReduceResponse | null = null;

  constructor(root: HTMLElement, api: ApiClient, draft?: ScenarioDraft) {
    this.root = root;
    this.api = api;
    this.state = new ExplorerState(draft ?? new ScenarioDraft());
    this.build();
    this.refreshControls();
  }

  private element<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    id: string,
    parent: HTMLElement,
    text = "",
  ): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    node.id = id;
    if (text) node.textContent = text;
    parent.appendChild(node);
    return node;
  }

  private slider(id: string, spec: SliderSpec, parent: HTMLElement): void {
    const wrap = this.element("label", `${id}-label`, parent, spec.label + " ");
    const input = document.createElement("input");
    input.type = "range";
    input.id = id;
    input.min = String(spec.min);
    input.max = String(spec.max);
    input.step = String(spec.step);
    input.value = String(spec.get(this.state.draft.request));
    const value = this.element("output", `${id}-value`, wrap, input.value);
    input.addEventListener("input", () => {
      spec.set(this.state.draft.request, Number(input.value));
      value.textContent = input.value;
      this.refreshControls();
    });
    wrap.appendChild(input);
    this.sliders.set(id, input);
  }

  private build(): void {
    const controls = this.element("section", "controls", this.root);
    const weights = this.element("fieldset", "weights", controls);
    this.element("legend", "weights-title", weights, "trade-off weights");
    for (const [id, spec] of WEIGHT_SLIDERS) this.slider(id, spec, weights);

    const confidences = this.element("fieldset", "confidences", controls);
    this.element("legend", "confidences-title", confidences, "confidences");
    for (const [id, spec] of CONFIDENCE_SLIDERS) this.slider(id, spec, confidences);
    this.element("div", "branch-label", confidences);

    const badges = this.element("div", "badges", controls);
    this.element("span", "consistency-badge", badges);
    this.element("span", "compromise-badge", badges);

    const submit = this.element("button", "submit", controls, "reduce");
    submit.addEventListener("click", () => {
      void this.submit();
    });
    this.element("div", "service-error", controls);

    const display = this.element("section", "display", this.root);
    const canvas = document.createElement("canvas");
    canvas.id = "heatmap";
    canvas.width = 480;
    canvas.height = 480;
    display.appendChild(canvas);
    this.heatmap = new HeatmapRenderer(canvas);
    this.element("ul", "legend", display);
    const toggles = this.element("div", "toggles", display);
    for (const [id, label] of [
      ["show-rays", "ray overlay"],
      ["show-reference", "reference formulas"],
    ] as const) {
      const wrap = this.element("label", `${id}-label`, toggles, label + " ");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.id = id;
      box.checked = id === "show-rays";
      box.addEventListener("change", () => this.repaint());
      wrap.appendChild(box);
    }
    this.element("div", "inclusions", display);
    this.element("ol", "history", this.root);
  }

  /** Re-derive badges, branch label and submit enablement from the draft. */
  refreshControls(): void {
    const draft = this.state.draft;
    const status = consistencyStatus(draft.request.quantum1, draft.request.quantum2);
    const consistency = this.root.querySelector("#consistency-badge")!;
    consistency.textContent = `consistency: ${status}`;
    const compromise = this.root.querySelector("#compromise-badge")!;
    const violations = draft.compromiseViolations();
    compromise.textContent = violations.length
      ? `natural compromise violated: ${violations.join(", ")}`
      : "natural compromise: ok";
    this.root.querySelector("#branch-label")!.textContent = `branch: ${draft.branchLabel()}`;
    const submit = this.root.querySelector("#submit") as HTMLButtonElement;
    submit.disabled = this.inFlight || !draft.canSubmit();
  }

  setSlider(id: string, value: number): void {
    const input = this.sliders.get(id);
    if (!input) throw new Error(`no slider ${id}`);
    input.value = String(value);
    input.dispatchEvent(new Event("input"));
  }

  async submit(): Promise<boolean> {
    const draft = this.state.draft;
    if (this.inFlight || !draft.canSubmit()) return false;
    this.inFlight = true;
    this.refreshControls();
    const request = draft.snapshot();
    const seq = this.state.nextSeq();
    try {
      const result = await this.api.reduce(request);
      if (!result.ok) {
        const detail = result.violations
          .map((v) => (typeof v === "string" ? v : `${v.field}: ${v.message}`))
          .join("; ");
        this.root.querySelector("#service-error")!.textContent =
          `${result.error} (${result.status}): ${detail}`;
        return false;
      }
      if (!this.state.accept(seq, request, result.data)) return false;
      this.root.querySelector("#service-error")!.textContent = "";
      this.lastResponse = result.data;
      this.render(result.data);
      return true;
    } finally {
      this.inFlight = false;
      this.refreshControls();
    }
  }

  /** Re-submit a history entry; determinism gives back its stored counts. */
  async resubmit(seq: number): Promise<boolean> {
    const entry = this.state.history.find((e) => e.seq === seq);
    if (!entry) return false;
    this.state.draft.request = JSON.parse(JSON.stringify(entry.request));
    for (const [id, spec] of [...WEIGHT_SLIDERS, ...CONFIDENCE_SLIDERS]) {
      const input = this.sliders.get(id)!;
      input.value = String(spec.get(this.state.draft.request));
    }
    this.refreshControls();
    return this.submit();
  }

  private repaint(): void {
    if (this.lastResponse) this.render(this.lastResponse);
  }

  private render(response: ReduceResponse): void {
    const showRays = (this.root.querySelector("#show-rays") as HTMLInputElement).checked;
    const showReference = (
      this.root.querySelector("#show-reference") as HTMLInputElement
    ).checked;
    this.heatmap.draw(response, showRays, showReference);

    const legend = this.root.querySelector("#legend")!;
    legend.innerHTML = "";
    for (const item of legendItems(response.tierValues)) {
      const li = document.createElement("li");
      li.className = "legend-item";
      li.dataset.tier = item.tier;
      li.dataset.value = String(item.value);
      li.textContent = `${item.tier}: ${item.value}`;
      (li.style as CSSStyleDeclaration).borderLeftColor = item.color;
      legend.appendChild(li);
    }

    const inclusions = this.root.querySelector("#inclusions")!;
    const verdicts = response.inclusions;
    inclusions.textContent =
      `inclusions: core within stage2 ${verdicts.coreWithinStage2}, ` +
      `stage2 within full ${verdicts.stage2WithinFull}, ` +
      `full is whole grid ${verdicts.fullIsWholeGrid}`;

    const history = this.root.querySelector("#history")!;
    history.innerHTML = "";
    for (const entry of this.state.history) {
      const li = document.createElement("li");
      li.className = "history-entry";
      li.dataset.seq = String(entry.seq);
      li.textContent =
        `#${entry.seq} ${entry.branch} ` +
        `CORE ${entry.tierCounts.CORE} / MID ${entry.tierCounts.MID} / ` +
        `OUTER ${entry.tierCounts.OUTER}`;
      li.addEventListener("click", () => {
        void this.resubmit(entry.seq);
      });
      history.appendChild(li);
    }
  }
}
