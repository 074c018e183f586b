// Typed client for the play service. Every game fact comes from these
// responses; the UI never derives outcomes or classifications itself.

export interface LoadWire {
  left: number[];
  right: number[];
}

export interface HistoryEntry {
  scales: LoadWire[];
  outcome: string;
}

export interface SessionView {
  id: string;
  coins: number;
  scales: number;
  problem: string;
  supply: string | number;
  budget: number;
  adversary: string;
  optimal_minutes: number | null;
  status: string;
  minutes_used: number;
  minutes_left: number;
  suspects_remaining: number;
  hypotheses_remaining: number;
  classification: string[];
  classification_counts: Record<string, number>;
  counterexample: Counterexample | null;
  history: HistoryEntry[];
}

export interface WeighResult {
  outcome: string;
  status: string;
  minutes_used: number;
  minutes_left: number;
  suspects_remaining: number;
  hypotheses_remaining: number;
  classification: string[];
  classification_counts: Record<string, number>;
}

export interface Counterexample {
  coin: number;
  sign: string;
}

export interface AnswerResult {
  verdict: string;
  status: string;
  counterexample: Counterexample | null;
}

export interface HintResult {
  weighing: LoadWire[] | null;
  answer: { coin: number; label: string | null } | null;
}

export interface NewGameOptions {
  coins: number;
  scales: number;
  problem: string;
  supply?: string | number;
  adversary?: string;
  budget?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const code = body && body.code ? body.code : `http-${response.status}`;
      const message = body && body.message ? body.message : response.statusText;
      throw new ApiError(response.status, code, message);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  createSession(options: NewGameOptions): Promise<SessionView> {
    return this.post<SessionView>("/sessions", options);
  }

  getSession(id: string): Promise<SessionView> {
    return this.request<SessionView>(`/sessions/${id}`);
  }

  weigh(id: string, scales: LoadWire[]): Promise<WeighResult> {
    return this.post<WeighResult>(`/sessions/${id}/weigh`, { scales });
  }

  answer(id: string, coin: number, label?: string | null): Promise<AnswerResult> {
    return this.post<AnswerResult>(`/sessions/${id}/answer`, {
      coin,
      label: label ?? null,
    });
  }

  hint(id: string): Promise<HintResult> {
    return this.request<HintResult>(`/sessions/${id}/hint`);
  }

  capacity(
    scales: number,
    minutes: number,
    problem: string,
    supply: string | number = "none",
  ): Promise<number> {
    const params = new URLSearchParams({
      scales: String(scales),
      minutes: String(minutes),
      problem,
      supply: String(supply),
    });
    return this.request<number>(`/capacity?${params}`);
  }
}
