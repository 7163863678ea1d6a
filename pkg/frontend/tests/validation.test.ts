import { describe, expect, it } from "vitest";

import { DEFAULT_REQUEST, ScenarioDraft } from "../src/state.js";
import {
  consistencyStatus,
  draftAcceptable,
  naturalCompromiseViolations,
  validateReduceRequest,
} from "../src/validation.js";
import type { ReduceRequest } from "../src/types.js";

function draft(): ReduceRequest {
  return JSON.parse(JSON.stringify(DEFAULT_REQUEST)) as ReduceRequest;
}

describe("consistencyStatus", () => {
  it("classifies the canonical weight pairs", () => {
    expect(consistencyStatus({ w1: 2, w2: 2, w3: 1 }, { w1: 1, w2: 1, w3: 3 })).toBe("bothHold");
    expect(consistencyStatus({ w1: 2, w2: 1, w3: 1 }, { w1: 1, w2: 4, w3: 2 })).toBe("firstOnly");
    expect(consistencyStatus({ w1: 1, w2: 1, w3: 2 }, { w1: 2, w2: 2, w3: 1 })).toBe(
      "inconsistent",
    );
  });
});

describe("naturalCompromiseViolations", () => {
  it("is empty for the default draft", () => {
    const request = draft();
    expect(naturalCompromiseViolations(request.quantum1, request.quantum2)).toEqual([]);
  });

  it("names the broken inequality", () => {
    expect(naturalCompromiseViolations({ w1: 1, w2: 2, w3: 1 }, { w1: 1, w2: 1, w3: 3 })).toEqual([
      "w1(1) > w3(1)",
    ]);
  });
});

describe("validateReduceRequest", () => {
  it("accepts the default draft", () => {
    expect(validateReduceRequest(draft())).toEqual([]);
  });

  it("rejects out-of-range technology parameters", () => {
    const request = draft();
    request.ces.a = 1.2;
    request.ces.r = 0;
    const fields = validateReduceRequest(request).map((v) => v.field);
    expect(fields).toContain("ces.a");
    expect(fields).toContain("ces.r");
  });

  it("requires confidences for the reduce endpoint", () => {
    const request = draft();
    delete request.quantum1.mu;
    const fields = validateReduceRequest(request).map((v) => v.field);
    expect(fields).toContain("quantum1.mu");
  });

  it("enforces the grid cap", () => {
    const request = draft();
    request.grid.nK = 600;
    request.grid.nL = 600;
    const fields = validateReduceRequest(request).map((v) => v.field);
    expect(fields).toContain("grid");
  });

  it("rejects non-integer counts and seeds", () => {
    const request = draft();
    request.grid.nK = 10.5;
    request.sweep.seed = -1;
    const fields = validateReduceRequest(request).map((v) => v.field);
    expect(fields).toContain("grid");
    expect(fields).toContain("sweep.seed");
  });
});

describe("draftAcceptable", () => {
  it("combines structural and compromise checks", () => {
    const request = draft();
    expect(draftAcceptable(request)).toBe(true);
    request.quantum1.w1 = 0.5; // below w3: compromise broken, shape still fine
    expect(validateReduceRequest(request)).toEqual([]);
    expect(draftAcceptable(request)).toBe(false);
  });
});

describe("ScenarioDraft", () => {
  it("exposes branch label and submit gating", () => {
    const scenario = new ScenarioDraft();
    expect(scenario.branchLabel()).toBe("mu1 >= mu2");
    scenario.request.quantum1.mu = 0.2;
    expect(scenario.branchLabel()).toBe("mu1 < mu2");
    expect(scenario.canSubmit()).toBe(true);
    scenario.request.prices.pK = -1;
    expect(scenario.canSubmit()).toBe(false);
  });
});
