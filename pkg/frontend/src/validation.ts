/**
 * Client-side validation, mirroring the service rule for rule.
 *
 * The contract is one-directional: every draft this module accepts, the
 * service accepts with 2xx.  Field paths and the inequality names match
 * the server's payloads so badges can show them verbatim.
 */

import type { QuantumSection, ReduceRequest, Violation } from "./types.js";

export const GRID_CAP = 250_000;

export const NATURAL_COMPROMISE_INEQUALITIES = [
  "w1(1) > w3(1)",
  "w2(1) > w3(1)",
  "w3(2) > w1(2)",
  "w3(2) > w2(2)",
] as const;

export type ConsistencyStatus = "bothHold" | "firstOnly" | "secondOnly" | "inconsistent";

function isFiniteNumber(value: unknown): value is number {
  return typeof value === "number" && Number.isFinite(value);
}

function isInteger(value: unknown): value is number {
  return typeof value === "number" && Number.isInteger(value);
}

/** Which of the two cross-quantum trade-off inequalities hold. */
export function consistencyStatus(q1: QuantumSection, q2: QuantumSection): ConsistencyStatus {
  const first = q1.w1 / q1.w3 > q2.w1 / q2.w3;
  const second = q1.w2 / q1.w3 > q2.w2 / q2.w3;
  if (first && second) return "bothHold";
  if (first) return "firstOnly";
  if (second) return "secondOnly";
  return "inconsistent";
}

/** Violated gain-exceeds-loss inequalities, by their canonical names. */
export function naturalCompromiseViolations(
  q1: QuantumSection,
  q2: QuantumSection,
): string[] {
  const checks = [q1.w1 > q1.w3, q1.w2 > q1.w3, q2.w3 > q2.w1, q2.w3 > q2.w2];
  return NATURAL_COMPROMISE_INEQUALITIES.filter((_, i) => !checks[i]);
}

function checkPositive(
  violations: Violation[],
  section: string,
  name: string,
  value: unknown,
): void {
  if (!isFiniteNumber(value)) {
    violations.push({ field: `${section}.${name}`, message: "must be a number" });
  } else if (!(value > 0)) {
    violations.push({ field: `${section}.${name}`, message: "must be strictly positive" });
  }
}

function checkQuantum(violations: Violation[], section: string, q: QuantumSection): void {
  checkPositive(violations, section, "w1", q.w1);
  checkPositive(violations, section, "w2", q.w2);
  checkPositive(violations, section, "w3", q.w3);
  if (q.mu === undefined) {
    violations.push({ field: `${section}.mu`, message: "missing required field" });
  } else if (!isFiniteNumber(q.mu) || q.mu < 0 || q.mu > 1) {
    violations.push({ field: `${section}.mu`, message: "must lie in [0, 1]" });
  }
}

/**
 * Structural and invariant checks for a reduce request; consistency is
 * reported separately because the server answers it with 422, not 400.
 */
export function validateReduceRequest(req: ReduceRequest): Violation[] {
  const violations: Violation[] = [];

  checkPositive(violations, "ces", "F", req.ces.F);
  if (!isFiniteNumber(req.ces.a) || !(req.ces.a > 0 && req.ces.a < 1)) {
    violations.push({ field: "ces.a", message: "must lie strictly between 0 and 1" });
  }
  if (!isFiniteNumber(req.ces.r) || !(req.ces.r > -1)) {
    violations.push({ field: "ces.r", message: "must be greater than -1" });
  } else if (req.ces.r === 0) {
    violations.push({ field: "ces.r", message: "must be nonzero" });
  }

  checkPositive(violations, "prices", "pK", req.prices.pK);
  checkPositive(violations, "prices", "pL", req.prices.pL);
  checkPositive(violations, "prices", "pQ", req.prices.pQ);

  checkQuantum(violations, "quantum1", req.quantum1);
  checkQuantum(violations, "quantum2", req.quantum2);

  const g = req.grid;
  if (!isFiniteNumber(g.kMin) || !isFiniteNumber(g.kMax) || !(g.kMin > 0 && g.kMin < g.kMax)) {
    violations.push({ field: "grid", message: "requires 0 < kMin < kMax" });
  }
  if (!isFiniteNumber(g.lMin) || !isFiniteNumber(g.lMax) || !(g.lMin > 0 && g.lMin < g.lMax)) {
    violations.push({ field: "grid", message: "requires 0 < lMin < lMax" });
  }
  if (!isInteger(g.nK) || !isInteger(g.nL) || g.nK < 2 || g.nL < 2) {
    violations.push({ field: "grid", message: "requires integer nK >= 2 and nL >= 2" });
  } else if (g.nK * g.nL > GRID_CAP) {
    violations.push({ field: "grid", message: `exceeds the cap of ${GRID_CAP} nodes` });
  }
  if (g.scale !== "linear" && g.scale !== "log") {
    violations.push({ field: "grid.scale", message: "must be 'linear' or 'log'" });
  }

  if (!isInteger(req.sweep.samples) || req.sweep.samples < 10) {
    violations.push({ field: "sweep.samples", message: "must be an integer of at least 10" });
  }
  if (!isInteger(req.sweep.seed) || req.sweep.seed < 0 || req.sweep.seed >= 2 ** 64) {
    violations.push({ field: "sweep.seed", message: "must fit an unsigned 64-bit integer" });
  }

  return violations;
}

/** True when the service is guaranteed to answer 2xx for this draft. */
export function draftAcceptable(req: ReduceRequest): boolean {
  if (validateReduceRequest(req).length > 0) return false;
  return naturalCompromiseViolations(req.quantum1, req.quantum2).length === 0;
}
