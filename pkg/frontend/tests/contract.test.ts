/**
 * Randomized client/server contract: every draft the client validator
 * accepts must be accepted (2xx) by the live service.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { draftAcceptable } from "../src/validation.js";
import type { GridScale, ReduceRequest } from "../src/types.js";
import { integer, mulberry32, onStep, pick, uniform } from "./helpers/random.js";
import { startService, type RunningService } from "./helpers/service.js";

const PORT = 8931;
const CASES = 200;

function randomDraft(rng: () => number): ReduceRequest {
  const weight = () => onStep(uniform(rng, 0.1, 10), 0.1);
  const maybeBad = (value: number, bad: number) => (rng() < 0.12 ? bad : value);
  const draft: ReduceRequest = {
    ces: {
      F: maybeBad(onStep(uniform(rng, 0.2, 3), 0.01), -1),
      a: onStep(uniform(rng, 0.05, 0.95), 0.01),
      r: maybeBad(onStep(uniform(rng, -0.8, 2.5), 0.01), 0),
    },
    prices: {
      pK: onStep(uniform(rng, 0.2, 2.5), 0.01),
      pL: onStep(uniform(rng, 0.2, 2.5), 0.01),
      pQ: maybeBad(onStep(uniform(rng, 0.2, 2.5), 0.01), -0.5),
    },
    quantum1: { w1: weight(), w2: weight(), w3: weight(), mu: onStep(rng(), 0.01) },
    quantum2: { w1: weight(), w2: weight(), w3: weight(), mu: onStep(rng(), 0.01) },
    grid: {
      kMin: onStep(uniform(rng, 0.05, 1.0), 0.01),
      kMax: onStep(uniform(rng, 2.0, 12.0), 0.01),
      lMin: onStep(uniform(rng, 0.05, 1.0), 0.01),
      lMax: maybeBad(onStep(uniform(rng, 2.0, 12.0), 0.01), 0.01),
      nK: integer(rng, 2, 18),
      nL: maybeBad(integer(rng, 2, 18), 1),
      scale: pick(rng, ["linear", "log", "log", "cubic"] as const) as GridScale,
    },
    sweep: {
      samples: integer(rng, 5, 40),
      seed: integer(rng, 0, 1_000_000),
    },
  };
  if (rng() < 0.1) delete draft.quantum1.mu;
  if (rng() < 0.15) {
    // weights biased toward the natural compromise so plenty of drafts pass
    draft.quantum1.w3 = onStep(Math.min(draft.quantum1.w1, draft.quantum1.w2) * 0.5, 0.1) || 0.1;
    draft.quantum2.w3 = onStep(Math.max(draft.quantum2.w1, draft.quantum2.w2) * 1.5, 0.1);
  }
  return draft;
}

describe("client/server validation contract", () => {
  let service: RunningService;

  beforeAll(async () => {
    service = await startService(PORT);
  }, 30_000);

  afterAll(() => {
    service?.stop();
  });

  it(
    `accepted drafts get 2xx across ${CASES} randomized cases`,
    async () => {
      const rng = mulberry32(20240817);
      let accepted = 0;
      let rejectedByClient = 0;
      while (accepted < CASES) {
        const draft = randomDraft(rng);
        if (!draftAcceptable(draft)) {
          rejectedByClient += 1;
          continue;
        }
        accepted += 1;
        const response = await fetch(`${service.baseUrl}/api/v1/reduce`, {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify(draft),
        });
        if (response.status < 200 || response.status >= 300) {
          const body = await response.text();
          expect.fail(
            `client accepted but server answered ${response.status} for ` +
              `${JSON.stringify(draft)}: ${body}`,
          );
        }
      }
      // the generator must actually exercise the filter in both directions
      expect(rejectedByClient).toBeGreaterThan(20);
    },
    300_000,
  );
});
