/** Thin typed client over the workbench service. */

import type { ApiResult, ReduceRequest, ReduceResponse, Violation } from "./types.js";

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  async health(): Promise<{ status: string; version: string }> {
    const response = await fetch(`${this.baseUrl}/healthz`);
    if (!response.ok) throw new Error(`healthz answered ${response.status}`);
    return response.json();
  }

  private async post<T>(path: string, body: unknown): Promise<ApiResult<T>> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (response.ok) {
      return { ok: true, data: (await response.json()) as T };
    }
    let error = `http ${response.status}`;
    let violations: Array<Violation | string> = [];
    try {
      const payload = await response.json();
      error = payload.error ?? error;
      violations = payload.violations ?? [];
    } catch {
      // non-JSON error body; keep the status text
    }
    return { ok: false, status: response.status, error, violations };
  }

  reduce(request: ReduceRequest): Promise<ApiResult<ReduceResponse>> {
    return this.post<ReduceResponse>("/api/v1/reduce", request);
  }

  compare(request: ReduceRequest): Promise<ApiResult<Record<string, unknown>>> {
    return this.post<Record<string, unknown>>("/api/v1/compare", request);
  }
}
