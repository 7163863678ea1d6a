/**
 * Draft and history state for the what-if loop.
 *
 * The draft owns the editable scenario; history keeps immutable records
 * of submitted scenarios with their tier counts.  Responses carry the
 * sequence number of the submission they answer, and stale ones (a newer
 * draft was submitted meanwhile) are discarded.
 */

import { draftAcceptable, naturalCompromiseViolations, validateReduceRequest } from "./validation.js";
import type { ReduceRequest, ReduceResponse, Tier, Violation } from "./types.js";

export const DEFAULT_REQUEST: ReduceRequest = {
  ces: { F: 0.6, a: 0.3, r: 1.0 },
  prices: { pK: 1.0, pL: 1.0, pQ: 1.0 },
  quantum1: { w1: 2.0, w2: 2.0, w3: 1.5, mu: 0.8 },
  quantum2: { w1: 2.0, w2: 2.0, w3: 3.0, mu: 0.5 },
  grid: { kMin: 0.1, kMax: 10.0, lMin: 0.1, lMax: 10.0, nK: 40, nL: 40, scale: "log" },
  sweep: { samples: 120, seed: 42 },
};

export interface HistoryEntry {
  readonly seq: number;
  readonly request: ReduceRequest;
  readonly branch: string;
  readonly tierCounts: Record<Tier, number>;
  readonly tierValues: Record<Tier, number>;
}

function cloneRequest(request: ReduceRequest): ReduceRequest {
  return JSON.parse(JSON.stringify(request)) as ReduceRequest;
}

export class ScenarioDraft {
  request: ReduceRequest;

  constructor(request: ReduceRequest = DEFAULT_REQUEST) {
    this.request = cloneRequest(request);
  }

  violations(): Violation[] {
    return validateReduceRequest(this.request);
  }

  compromiseViolations(): string[] {
    return naturalCompromiseViolations(this.request.quantum1, this.request.quantum2);
  }

  canSubmit(): boolean {
    return draftAcceptable(this.request);
  }

  branchLabel(): string {
    const mu1 = this.request.quantum1.mu ?? 0;
    const mu2 = this.request.quantum2.mu ?? 0;
    return mu1 >= mu2 ? "mu1 >= mu2" : "mu1 < mu2";
  }

  snapshot(): ReduceRequest {
    return cloneRequest(this.request);
  }
}

export class ExplorerState {
  readonly draft: ScenarioDraft;
  private seq = 0;
  private latestAccepted = 0;
  private entries: HistoryEntry[] = [];

  constructor(draft: ScenarioDraft = new ScenarioDraft()) {
    this.draft = draft;
  }

  get history(): readonly HistoryEntry[] {
    return this.entries;
  }

  nextSeq(): number {
    this.seq += 1;
    return this.seq;
  }

  /** Record a response; returns false when a newer submission superseded it. */
  accept(seq: number, request: ReduceRequest, response: ReduceResponse): boolean {
    if (seq !== this.seq || seq <= this.latestAccepted) return false;
    this.latestAccepted = seq;
    this.entries = [
      ...this.entries,
      {
        seq,
        request: JSON.parse(JSON.stringify(request)),
        branch: response.branch,
        tierCounts: { ...response.tierCounts },
        tierValues: { ...response.tierValues },
      },
    ];
    return true;
  }
}
