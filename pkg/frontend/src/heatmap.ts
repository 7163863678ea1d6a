/**
 * Canvas heatmap of the membership map, with ray overlays.
 *
 * Cells are painted exactly as the server labels them (no client-side
 * resampling): tier membership is a set fact, not a continuous field.
 */

import type { RayRow, ReduceResponse, Tier } from "./types.js";

export const TIER_COLORS: Record<Tier, string> = {
  CORE: "#1a5fb4",
  MID: "#62a0ea",
  OUTER: "#deddda",
};

export interface LegendItem {
  tier: Tier;
  value: number;
  color: string;
}

/** Legend rows in CORE, MID, OUTER order with the server's values. */
export function legendItems(tierValues: Record<Tier, number>): LegendItem[] {
  const order: Tier[] = ["CORE", "MID", "OUTER"];
  return order.map((tier) => ({ tier, value: tierValues[tier], color: TIER_COLORS[tier] }));
}

interface Window {
  kMin: number;
  kMax: number;
  lMin: number;
  lMax: number;
  log: boolean;
}

function windowOf(response: ReduceResponse): Window {
  const k = response.membership.k;
  const l = response.membership.l;
  return {
    kMin: Math.min(...k),
    kMax: Math.max(...k),
    lMin: Math.min(...l),
    lMax: Math.max(...l),
    log: true,
  };
}

function axisPos(value: number, lo: number, hi: number, log: boolean): number {
  if (log) return (Math.log(value) - Math.log(lo)) / (Math.log(hi) - Math.log(lo));
  return (value - lo) / (hi - lo);
}

export class HeatmapRenderer {
  constructor(private readonly canvas: HTMLCanvasElement) {}

  /** Paint tiers and, optionally, the derived and reference ray families. */
  draw(response: ReduceResponse, showRays: boolean, showReference: boolean): void {
    const context = this.canvas.getContext("2d");
    if (!context) return; // non-browser DOM in tests
    const { width, height } = this.canvas;
    context.clearRect(0, 0, width, height);

    const win = windowOf(response);
    const { k, l, tier } = response.membership;
    const nK = new Set(k).size;
    const nL = new Set(l).size;
    const cellW = width / nK;
    const cellH = height / nL;
    for (let i = 0; i < k.length; i++) {
      const x = axisPos(k[i], win.kMin, win.kMax, win.log) * (width - cellW);
      const y = (1 - axisPos(l[i], win.lMin, win.lMax, win.log)) * (height - cellH);
      context.fillStyle = TIER_COLORS[tier[i]];
      context.fillRect(x, y, cellW + 0.5, cellH + 0.5);
    }

    if (showRays) {
      this.drawRays(context, response.rays, win, showReference);
    }
  }

  private drawRays(
    context: CanvasRenderingContext2D,
    rays: RayRow[],
    win: Window,
    showReference: boolean,
  ): void {
    const { width, height } = this.canvas;
    for (const ray of rays) {
      if (ray.source === "reference" && !showReference) continue;
      // clip the line L = rho*K to the window
      const kLo = Math.max(win.kMin, win.lMin / ray.rho);
      const kHi = Math.min(win.kMax, win.lMax / ray.rho);
      if (kLo > kHi) continue;
      const x0 = axisPos(kLo, win.kMin, win.kMax, win.log) * width;
      const y0 = (1 - axisPos(kLo * ray.rho, win.lMin, win.lMax, win.log)) * height;
      const x1 = axisPos(kHi, win.kMin, win.kMax, win.log) * width;
      const y1 = (1 - axisPos(kHi * ray.rho, win.lMin, win.lMax, win.log)) * height;
      context.strokeStyle = ray.source === "derived" ? "#26a269" : "#c01c28";
      context.globalAlpha = 0.25;
      context.setLineDash(ray.source === "reference" ? [4, 3] : []);
      context.beginPath();
      context.moveTo(x0, y0);
      context.lineTo(x1, y1);
      context.stroke();
    }
    context.globalAlpha = 1;
    context.setLineDash([]);
  }
}
