/** Wire shapes of the workbench service. */

export interface CesSection {
  F: number;
  a: number;
  r: number;
}

export interface PricesSection {
  pK: number;
  pL: number;
  pQ: number;
}

export interface QuantumSection {
  w1: number;
  w2: number;
  w3: number;
  mu?: number;
}

export type GridScale = "linear" | "log";

export interface GridSection {
  kMin: number;
  kMax: number;
  lMin: number;
  lMax: number;
  nK: number;
  nL: number;
  scale: GridScale;
}

export interface SweepSection {
  samples: number;
  seed: number;
}

export interface ReduceRequest {
  ces: CesSection;
  prices: PricesSection;
  quantum1: QuantumSection;
  quantum2: QuantumSection;
  grid: GridSection;
  sweep: SweepSection;
}

export interface Violation {
  field: string;
  message: string;
}

export type Tier = "CORE" | "MID" | "OUTER";

export interface RayRow {
  source: "derived" | "reference";
  kind: string;
  rho: number;
  lambda1: number;
  lambda2: number;
  lambda3: number;
  lambda4: number | null;
}

export interface ReduceResponse {
  version: string;
  branch: string;
  seed: number;
  membership: {
    k: number[];
    l: number[];
    tier: Tier[];
    lambda: number[];
  };
  tierValues: Record<Tier, number>;
  tierCounts: Record<Tier, number>;
  inclusions: {
    coreWithinStage2: boolean;
    stage2WithinFull: boolean;
    fullIsWholeGrid: boolean;
  };
  rays: RayRow[];
  timing: { totalMs: number; oracleMs: number };
}

export interface ErrorBody {
  error: "validation" | "consistency" | "busy";
  violations?: Violation[] | string[];
}

export type ApiResult<T> =
  | { ok: true; data: T }
  | { ok: false; status: number; error: string; violations: Array<Violation | string> };
