// Game flow state machine: staged pans, submissions, hints, accusations.
// Holds the latest server view verbatim; the DOM layer renders from here.

import {
  ApiError,
  Client,
  type AnswerResult,
  type HintResult,
  type LoadWire,
  type NewGameOptions,
  type SessionView,
  type WeighResult,
} from "./api.js";
import { validateWeighing } from "./validate.js";

export type PanSide = "left" | "right";

export class GameFlow {
  session: SessionView | null = null;
  staged: LoadWire[] = [];
  highlighted: LoadWire[] | null = null;

  constructor(readonly client: Client) {}

  get coinLimit(): number | null {
    if (!this.session) return null;
    if (this.session.supply === "unlimited") return null;
    const extra =
      typeof this.session.supply === "number" ? this.session.supply : 0;
    return this.session.coins + extra;
  }

  async newGame(options: NewGameOptions): Promise<SessionView> {
    this.session = await this.client.createSession(options);
    this.resetStaging();
    return this.session;
  }

  async resume(id: string): Promise<SessionView> {
    this.session = await this.client.getSession(id);
    this.resetStaging();
    return this.session;
  }

  async refresh(): Promise<SessionView> {
    if (!this.session) throw new Error("no session");
    this.session = await this.client.getSession(this.session.id);
    return this.session;
  }

  resetStaging(): void {
    const scales = this.session ? this.session.scales : 0;
    this.staged = Array.from({ length: scales }, () => ({ left: [], right: [] }));
    this.highlighted = null;
  }

  /** Where a coin currently sits, if staged. */
  placement(coin: number): { scale: number; side: PanSide } | null {
    for (let scale = 0; scale < this.staged.length; scale += 1) {
      if (this.staged[scale].left.includes(coin)) return { scale, side: "left" };
      if (this.staged[scale].right.includes(coin)) return { scale, side: "right" };
    }
    return null;
  }

  /** Stage a coin on a pan; a chip occupies at most one pan. */
  place(coin: number, scale: number, side: PanSide): void {
    this.remove(coin);
    this.staged[scale][side].push(coin);
    this.staged[scale][side].sort((a, b) => a - b);
  }

  remove(coin: number): void {
    for (const load of this.staged) {
      load.left = load.left.filter((c) => c !== coin);
      load.right = load.right.filter((c) => c !== coin);
    }
  }

  stagedIssue() {
    if (!this.session) return null;
    return validateWeighing(this.staged, this.session.scales, this.coinLimit);
  }

  async submitWeighing(): Promise<WeighResult> {
    if (!this.session) throw new Error("no session");
    const issue = this.stagedIssue();
    if (issue) {
      // same shape the server would return, without the round trip
      throw new ApiError(422, issue.code, issue.message);
    }
    const result = await this.client.weigh(this.session.id, this.staged);
    await this.refresh();
    this.resetStaging();
    return result;
  }

  async requestHint(): Promise<HintResult> {
    if (!this.session) throw new Error("no session");
    const hint = await this.client.hint(this.session.id);
    this.highlighted = hint.weighing;
    return hint;
  }

  /** Copy a hint's placement onto the staging area. */
  applyHint(hint: HintResult): void {
    if (!hint.weighing) return;
    this.staged = hint.weighing.map((load) => ({
      left: [...load.left],
      right: [...load.right],
    }));
  }

  async accuse(coin: number, label?: string | null): Promise<AnswerResult> {
    if (!this.session) throw new Error("no session");
    const result = await this.client.answer(this.session.id, coin, label ?? null);
    await this.refresh();
    return result;
  }

  /** Optimal-minutes badge value, derived from the capacity endpoint.
   * Finite supplies have no closed form, so the badge reads "unknown". */
  async optimalBadge(): Promise<string> {
    if (!this.session) return "unknown";
    const { coins, scales, problem, supply } = this.session;
    if (typeof supply === "number" && supply > 0) return "unknown";
    if (coins === 2 && supply !== "unlimited") return "unsolvable";
    if (coins === 1 && supply !== "unlimited" && problem === "find-and-label") {
      return "unsolvable";
    }
    if (coins === 1 && problem === "just-find") return "0";
    for (let minutes = 1; minutes <= 12; minutes += 1) {
      const capacity = await this.client.capacity(scales, minutes, problem, supply);
      if (capacity >= coins) return String(minutes);
    }
    return "unknown";
  }
}
