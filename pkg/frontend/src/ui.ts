// DOM board: coin chips colored by classification, one widget per scale,
// minute counter with the optimal badge, history log, hint panel, and the
// accuse dialog. Rendering always reflects the latest server view.

import { ApiError, Client } from "./api.js";
import { GameFlow, type PanSide } from "./flow.js";

const CHIP_CLASSES: Record<string, string> = {
  unknown: "chip-unknown",
  "potentially-light": "chip-light",
  "potentially-heavy": "chip-heavy",
  real: "chip-real",
};

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  readonly flow: GameFlow;
  private readonly doc: Document;
  private readonly root: HTMLElement;
  private selectedCoin: number | null = null;
  private accuseCoin: number | null = null;
  private accuseLabel: string | null = null;
  private statusLine = "";
  private badge = "…";

  constructor(doc: Document, root: HTMLElement, client: Client) {
    this.doc = doc;
    this.root = root;
    this.flow = new GameFlow(client);
    this.renderSetupForm();
  }

  // ----- actions (buttons call these; tests may call them directly) -----

  async newGame(
    coins: number,
    scales: number,
    problem: string,
    adversary?: string,
  ): Promise<void> {
    await this.flow.newGame({ coins, scales, problem, adversary });
    this.statusLine = "";
    this.selectedCoin = null;
    this.badge = "…";
    const hash = this.flow.session ? `#${this.flow.session.id}` : "";
    if (this.doc.defaultView) {
      try {
        this.doc.defaultView.location.hash = hash;
      } catch {
        // hash persistence is best-effort (not available in tests)
      }
    }
    this.render();
    this.badge = await this.flow.optimalBadge();
    this.render();
  }

  async resume(sessionId: string): Promise<void> {
    await this.flow.resume(sessionId);
    this.render();
    this.badge = await this.flow.optimalBadge();
    this.render();
  }

  selectCoin(coin: number): void {
    this.selectedCoin = this.selectedCoin === coin ? null : coin;
    this.render();
  }

  placeSelected(scale: number, side: PanSide): void {
    if (this.selectedCoin === null) return;
    this.flow.place(this.selectedCoin, scale, side);
    this.selectedCoin = null;
    this.render();
  }

  unplace(coin: number): void {
    this.flow.remove(coin);
    this.render();
  }

  async submitStaged(): Promise<void> {
    try {
      const result = await this.flow.submitWeighing();
      this.statusLine = `outcome ${result.outcome} — ${result.suspects_remaining} suspect(s) left`;
    } catch (error) {
      this.statusLine = this.describeError(error);
    }
    this.render();
  }

  async hint(): Promise<void> {
    try {
      const hint = await this.flow.requestHint();
      if (hint.weighing === null && hint.answer) {
        this.statusLine = `hint: accuse coin ${hint.answer.coin}`;
        this.accuseCoin = hint.answer.coin;
        this.accuseLabel = hint.answer.label;
      } else {
        this.flow.applyHint(hint);
        this.statusLine = "hint placed on the scales";
      }
    } catch (error) {
      this.statusLine = this.describeError(error);
    }
    this.render();
  }

  setAccusation(coin: number | null, label: string | null): void {
    this.accuseCoin = coin;
    this.accuseLabel = label;
    this.render();
  }

  async accuse(): Promise<void> {
    if (this.accuseCoin === null) return;
    try {
      const result = await this.flow.accuse(this.accuseCoin, this.accuseLabel);
      if (result.verdict === "won") {
        this.statusLine = "you win — the accusation was forced";
      } else if (result.counterexample) {
        this.statusLine =
          `you lose — coin ${result.counterexample.coin} could still be ` +
          result.counterexample.sign;
      } else {
        this.statusLine = "you lose";
      }
    } catch (error) {
      this.statusLine = this.describeError(error);
    }
    this.render();
  }

  private describeError(error: unknown): string {
    if (error instanceof ApiError) {
      return `rejected (${error.code}): ${error.message}`;
    }
    return `error: ${String(error)}`;
  }

  // ----- rendering -----

  private renderSetupForm(): void {
    this.root.innerHTML = "";
    const form = el(this.doc, "div", "setup");
    form.append(
      this.numberInput("coins", "Coins", 11),
      this.numberInput("scales", "Scales", 2),
      this.selectInput("problem", "Problem", ["just-find", "find-and-label"]),
      this.selectInput("adversary", "Adversary", ["exact", "greedy"]),
    );
    const start = el(this.doc, "button", "start", "New game");
    start.id = "new-game";
    start.addEventListener("click", () => {
      const coins = this.readNumber("coins", 11);
      const scales = this.readNumber("scales", 2);
      const problem = this.readValue("problem", "just-find");
      const adversary = this.readValue("adversary", "exact");
      void this.newGame(coins, scales, problem, adversary);
    });
    form.append(start);
    this.root.append(form);
    this.root.append(el(this.doc, "div", "board"));
  }

  private numberInput(id: string, label: string, value: number): HTMLElement {
    const wrap = el(this.doc, "label", "field", `${label} `);
    const input = el(this.doc, "input");
    input.id = id;
    input.type = "number";
    input.value = String(value);
    wrap.append(input);
    return wrap;
  }

  private selectInput(id: string, label: string, options: string[]): HTMLElement {
    const wrap = el(this.doc, "label", "field", `${label} `);
    const select = el(this.doc, "select");
    select.id = id;
    for (const option of options) {
      const node = el(this.doc, "option", undefined, option);
      node.value = option;
      select.append(node);
    }
    wrap.append(select);
    return wrap;
  }

  private readNumber(id: string, fallback: number): number {
    const input = this.doc.getElementById(id) as HTMLInputElement | null;
    const value = input ? Number.parseInt(input.value, 10) : NaN;
    return Number.isFinite(value) ? value : fallback;
  }

  private readValue(id: string, fallback: string): string {
    const input = this.doc.getElementById(id) as HTMLSelectElement | null;
    return input && input.value ? input.value : fallback;
  }

  render(): void {
    const board = this.root.querySelector(".board") as HTMLElement | null;
    if (!board) return;
    board.innerHTML = "";
    const session = this.flow.session;
    if (!session) return;

    const status = el(this.doc, "div", "status-bar");
    status.append(
      el(this.doc, "span", "minute-counter", `minute ${session.minutes_used}/${session.budget}`),
      el(this.doc, "span", "optimal-badge", `optimal: ${this.badge}`),
      el(this.doc, "span", `state state-${session.status}`, session.status),
    );
    board.append(status);

    if (this.statusLine) {
      board.append(el(this.doc, "div", "status-line", this.statusLine));
    }

    // coin chips (suspects only; supply coins stay in the tray implicitly)
    const tray = el(this.doc, "div", "tray");
    session.classification.forEach((kind, coin) => {
      if (this.flow.placement(coin)) return;
      tray.append(this.chip(coin, kind));
    });
    board.append(tray);

    // scales
    const scalesBox = el(this.doc, "div", "scales");
    for (let index = 0; index < session.scales; index += 1) {
      scalesBox.append(this.scaleWidget(index));
    }
    board.append(scalesBox);

    const submit = el(this.doc, "button", "submit", "Weigh");
    submit.id = "submit-weighing";
    const issue = this.flow.stagedIssue();
    if (session.status !== "active" || issue) {
      submit.disabled = true;
      if (issue) submit.title = `${issue.code}: ${issue.message}`;
    }
    submit.addEventListener("click", () => void this.submitStaged());
    board.append(submit);

    const hint = el(this.doc, "button", "hint", "Hint");
    hint.id = "request-hint";
    hint.disabled = session.status !== "active";
    hint.addEventListener("click", () => void this.hint());
    board.append(hint);

    board.append(this.accuseDialog(session.problem));
    board.append(this.historyLog());
  }

  private chip(coin: number, kind: string): HTMLElement {
    const chip = el(this.doc, "span", `chip ${CHIP_CLASSES[kind] ?? "chip-unknown"}`, String(coin));
    chip.dataset.coin = String(coin);
    if (this.selectedCoin === coin) chip.classList.add("selected");
    chip.addEventListener("click", () => this.selectCoin(coin));
    return chip;
  }

  private scaleWidget(index: number): HTMLElement {
    const session = this.flow.session!;
    const widget = el(this.doc, "div", "scale");
    widget.append(el(this.doc, "div", "scale-name", `Scale ${String.fromCharCode(65 + index)}`));
    const pans = el(this.doc, "div", "pans");
    for (const side of ["left", "right"] as PanSide[]) {
      const pan = el(this.doc, "div", `pan pan-${side}`);
      pan.dataset.scale = String(index);
      pan.dataset.side = side;
      for (const coin of this.flow.staged[index][side]) {
        const kind = session.classification[coin] ?? "real";
        const chip = this.chip(coin, kind);
        chip.classList.add("placed");
        chip.addEventListener("click", (event) => {
          event.stopPropagation();
          this.unplace(coin);
        });
        pan.append(chip);
      }
      pan.addEventListener("click", () => this.placeSelected(index, side));
      pans.append(pan);
    }
    widget.append(pans);
    return widget;
  }

  private accuseDialog(problem: string): HTMLElement {
    const dialog = el(this.doc, "div", "accuse");
    dialog.append(el(this.doc, "span", undefined, "Accuse coin "));
    const coin = el(this.doc, "input");
    coin.id = "accuse-coin";
    coin.type = "number";
    if (this.accuseCoin !== null) coin.value = String(this.accuseCoin);
    coin.addEventListener("input", () => {
      const value = Number.parseInt(coin.value, 10);
      this.accuseCoin = Number.isFinite(value) ? value : null;
      this.syncAccuseButton();
    });
    dialog.append(coin);

    if (problem === "find-and-label") {
      const label = el(this.doc, "select");
      label.id = "accuse-label";
      for (const option of ["", "light", "heavy"]) {
        const node = el(this.doc, "option", undefined, option || "pick a label");
        node.value = option;
        label.append(node);
      }
      if (this.accuseLabel) label.value = this.accuseLabel;
      label.addEventListener("change", () => {
        this.accuseLabel = label.value || null;
        this.syncAccuseButton();
      });
      dialog.append(label);
    }

    const button = el(this.doc, "button", undefined, "Accuse");
    button.id = "accuse-button";
    button.addEventListener("click", () => void this.accuse());
    dialog.append(button);
    this.syncAccuseButton(dialog);
    return dialog;
  }

  private syncAccuseButton(scope?: HTMLElement): void {
    const session = this.flow.session;
    const button = (scope ?? this.root).querySelector(
      "#accuse-button",
    ) as HTMLButtonElement | null;
    if (!button || !session) return;
    const needLabel = session.problem === "find-and-label" && !this.accuseLabel;
    button.disabled =
      session.status !== "active" || this.accuseCoin === null || needLabel;
  }

  private historyLog(): HTMLElement {
    const session = this.flow.session!;
    const log = el(this.doc, "ol", "history");
    for (const entry of session.history) {
      const parts = entry.scales
        .map((load, index) => {
          if (!load.left.length && !load.right.length) return null;
          return `${String.fromCharCode(65 + index)}: ${load.left.join(" ")} v ${load.right.join(" ")}`;
        })
        .filter((part): part is string => part !== null);
      log.append(
        el(
          this.doc,
          "li",
          undefined,
          `${parts.join("; ") || "idle"} → ${entry.outcome}`,
        ),
      );
    }
    return log;
  }
}

export function initApp(doc: Document, root: HTMLElement, baseUrl: string): App {
  return new App(doc, root, new Client(baseUrl));
}
