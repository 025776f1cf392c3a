/**
 * Typed client for the advisor HTTP API. The UI talks to the documented JSON
 * endpoints and nothing else.
 */

import { asSessionView, CreateSessionParams, SessionView, WhatIfView } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }

  /** Submissions for points that are no longer pending. */
  get isConflict(): boolean {
    return this.status === 409;
  }
}

export interface SubmitValue {
  point: number | string;
  value: number;
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      const detail =
        typeof body === "object" && body !== null && "detail" in body
          ? JSON.stringify((body as { detail: unknown }).detail)
          : resp.statusText;
      throw new ApiError(resp.status, detail);
    }
    return body;
  }

  async health(): Promise<boolean> {
    try {
      await this.request("/healthz");
      return true;
    } catch {
      return false;
    }
  }

  async createSession(params: CreateSessionParams): Promise<SessionView> {
    return asSessionView(
      await this.request("/sessions", {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(params),
      }),
    );
  }

  async getSession(id: string): Promise<SessionView> {
    return asSessionView(await this.request(`/sessions/${id}`));
  }

  async submitResults(id: string, values: SubmitValue[]): Promise<SessionView> {
    return asSessionView(
      await this.request(`/sessions/${id}/results`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ values }),
      }),
    );
  }

  async whatIf(id: string, cell: number): Promise<WhatIfView> {
    return (await this.request(`/sessions/${id}/whatif?cell=${cell}`)) as WhatIfView;
  }
}
