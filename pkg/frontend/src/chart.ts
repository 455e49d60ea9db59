/** Client-side SVG rendering from the numeric series the API returns.
 * Pure string builders so they are unit-testable without a DOM. */

import { BudgetResponse, ProfileResponse } from "./api.js";

const WIDTH = 860;
const HEIGHT = 420;
const MARGIN = { left: 60, right: 20, top: 20, bottom: 40 };

interface Scale {
  (value: number): number;
}

function makeScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  return (v) => outLo + ((v - lo) / span) * (outHi - outLo);
}

function polyline(xs: number[], ys: number[], sx: Scale, sy: Scale, color: string): string {
  const pts = xs.map((x, i) => `${sx(x).toFixed(1)},${sy(ys[i]).toFixed(1)}`).join(" ");
  return `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${pts}"/>`;
}

function frame(inner: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `width="100%" preserveAspectRatio="xMidYMid meet">` +
    `<rect width="100%" height="100%" fill="#ffffff"/>` +
    inner +
    `</svg>`
  );
}

function axes(xLabel: string, yLabel: string): string {
  const l = MARGIN.left;
  const r = WIDTH - MARGIN.right;
  const t = MARGIN.top;
  const b = HEIGHT - MARGIN.bottom;
  return (
    `<line x1="${l}" y1="${b}" x2="${r}" y2="${b}" stroke="#444"/>` +
    `<line x1="${l}" y1="${t}" x2="${l}" y2="${b}" stroke="#444"/>` +
    `<text x="${(l + r) / 2}" y="${HEIGHT - 8}" text-anchor="middle" font-size="12">${xLabel}</text>` +
    `<text x="14" y="${(t + b) / 2}" text-anchor="middle" font-size="12" ` +
    `transform="rotate(-90 14 ${(t + b) / 2})">${yLabel}</text>`
  );
}

/** Terrain profile with the server's LOS, Fresnel contour, terrain and
 * curvature series (same color roles as the server-side charts). */
export function renderProfileSvg(profile: ProfileResponse): string {
  const xs = profile.distances_km;
  const terrain = profile.terrain_m.map((z, i) => z + profile.bulge_m[i]);
  const fresnelLower = profile.los_m.map((z, i) => z - profile.fresnel1_m[i]);
  const minTerrain = Math.min(...profile.terrain_m);
  const bulgeBase = profile.bulge_m.map((b) => minTerrain + b);

  const allY = [...terrain, ...fresnelLower, ...profile.los_m, ...bulgeBase];
  const yLo = Math.min(...allY);
  const yHi = Math.max(...allY);
  const pad = (yHi - yLo || 1) * 0.05;

  const sx = makeScale(xs[0], xs[xs.length - 1], MARGIN.left, WIDTH - MARGIN.right);
  const sy = makeScale(yLo - pad, yHi + pad, HEIGHT - MARGIN.bottom, MARGIN.top);

  const worst = profile.verdict;
  const marker =
    `<circle cx="${sx(worst.worst_distance_km).toFixed(1)}" ` +
    `cy="${sy(terrain[nearestIndex(xs, worst.worst_distance_km)]).toFixed(1)}" ` +
    `r="4" fill="none" stroke="red" stroke-width="1.5"/>`;

  return frame(
    axes("distance (km)", "height (m)") +
      polyline(xs, bulgeBase, sx, sy, "brown") +
      polyline(xs, terrain, sx, sy, "green") +
      polyline(xs, fresnelLower, sx, sy, "magenta") +
      polyline(xs, profile.los_m, sx, sy, "blue") +
      marker,
  );
}

/** Received level against distance with the sensitivity line. */
export function renderPowerSvg(budget: BudgetResponse, sensitivityDbm: number): string {
  const xs = budget.series.map(([d]) => d);
  const ys = budget.series.map(([, level]) => level);
  const yLo = Math.min(...ys, sensitivityDbm);
  const yHi = Math.max(...ys, sensitivityDbm);
  const pad = (yHi - yLo || 1) * 0.05;

  const sx = makeScale(xs[0], xs[xs.length - 1], MARGIN.left, WIDTH - MARGIN.right);
  const sy = makeScale(yLo - pad, yHi + pad, HEIGHT - MARGIN.bottom, MARGIN.top);

  const sensY = sy(sensitivityDbm).toFixed(1);
  const sensLine =
    `<line x1="${MARGIN.left}" y1="${sensY}" x2="${WIDTH - MARGIN.right}" y2="${sensY}" ` +
    `stroke="red" stroke-dasharray="6,4"/>`;

  return frame(
    axes("distance (km)", "level (dBm)") + sensLine + polyline(xs, ys, sx, sy, "blue"),
  );
}

function nearestIndex(xs: number[], x: number): number {
  let best = 0;
  for (let i = 1; i < xs.length; i++) {
    if (Math.abs(xs[i] - x) < Math.abs(xs[best] - x)) best = i;
  }
  return best;
}
