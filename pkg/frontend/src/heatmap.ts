/** Heatmap model for the insolation overlay.
 *
 * Parsed floats drive colour scaling and hit tests only; every value shown
 * to the user (tooltip, legend) is the literal token from the response
 * text, extracted by rawjson.
 */

import type { InsolationPayload } from "./types.js";
import { rawNumberMatrix, rawNumberScalar } from "./rawjson.js";

/** A study as held by the client: parsed payload plus the server's own
 *  number literals for display. */
export interface StudyData {
  payload: InsolationPayload;
  rawHours: string[][];
  rawDaylight: string;
}

/** Pair a parsed sun-study payload with the literals from its body text.
 *  Throws when the literals do not re-parse to the payload values, which
 *  would mean the display could drift from the data. */
export function captureStudy(payload: InsolationPayload, body: string): StudyData {
  const rawHours = rawNumberMatrix(body, "sunlit_hours");
  const rawDaylight = rawNumberScalar(body, "daylight_hours");
  if (rawHours.length !== payload.ny) {
    throw new Error(`raw grid has ${rawHours.length} rows, payload says ${payload.ny}`);
  }
  for (let iy = 0; iy < payload.ny; iy++) {
    if (rawHours[iy].length !== payload.nx) {
      throw new Error(`raw grid row ${iy} has ${rawHours[iy].length} cells, payload says ${payload.nx}`);
    }
    for (let ix = 0; ix < payload.nx; ix++) {
      if (Number(rawHours[iy][ix]) !== payload.sunlit_hours[iy][ix]) {
        throw new Error(`literal mismatch at cell (${ix}, ${iy})`);
      }
    }
  }
  if (Number(rawDaylight) !== payload.daylight_hours) {
    throw new Error("daylight_hours literal mismatch");
  }
  return { payload, rawHours, rawDaylight };
}

/** Cell index under a ground point, or null when outside the grid. */
export function cellAt(p: InsolationPayload, x: number, y: number): { ix: number; iy: number } | null {
  const ix = Math.floor((x - p.origin[0]) / p.cell_size_m);
  const iy = Math.floor((y - p.origin[1]) / p.cell_size_m);
  if (ix < 0 || iy < 0 || ix >= p.nx || iy >= p.ny) return null;
  return { ix, iy };
}

/** The server's literal for one cell's sunlit hours. */
export function rawHoursAt(study: StudyData, ix: number, iy: number): string {
  return study.rawHours[iy][ix];
}

export function tooltipText(study: StudyData, ix: number, iy: number): string {
  const base =
    `cell (${ix}, ${iy}): ${rawHoursAt(study, ix, iy)} h sunlit` +
    ` of ${study.rawDaylight} h daylight`;
  return study.payload.occupied[iy][ix] ? `${base} (occupied)` : base;
}

/** Legend endpoints as the server wrote them: the literals of the cells
 *  holding the minimum and maximum parsed values. */
export function legendStrings(study: StudyData): { min: string; max: string } {
  const p = study.payload;
  let minIx = 0, minIy = 0, maxIx = 0, maxIy = 0;
  for (let iy = 0; iy < p.ny; iy++) {
    for (let ix = 0; ix < p.nx; ix++) {
      const v = p.sunlit_hours[iy][ix];
      if (v < p.sunlit_hours[minIy][minIx]) { minIx = ix; minIy = iy; }
      if (v > p.sunlit_hours[maxIy][maxIx]) { maxIx = ix; maxIy = iy; }
    }
  }
  return { min: rawHoursAt(study, minIx, minIy), max: rawHoursAt(study, maxIx, maxIy) };
}

export interface HoursScale {
  min: number;
  max: number;
}

export function hoursScale(p: InsolationPayload): HoursScale {
  let min = Infinity;
  let max = -Infinity;
  for (const row of p.sunlit_hours) {
    for (const v of row) {
      if (v < min) min = v;
      if (v > max) max = v;
    }
  }
  return { min, max };
}

/** Colour stops for the ramp, t = 0 (shaded) to t = 1 (full sun). */
export const RAMP: [number, number, number][] = [
  [0.10, 0.13, 0.32],
  [0.15, 0.45, 0.60],
  [0.98, 0.82, 0.32],
];

/** Shaded-to-sunlit colour ramp, piecewise linear over RAMP. */
export function rampColor(t: number): [number, number, number] {
  const x = Math.min(1, Math.max(0, t)) * (RAMP.length - 1);
  const i = Math.min(RAMP.length - 2, Math.floor(x));
  const f = x - i;
  const a = RAMP[i];
  const b = RAMP[i + 1];
  return [a[0] + (b[0] - a[0]) * f, a[1] + (b[1] - a[1]) * f, a[2] + (b[2] - a[2]) * f];
}

export const OCCUPIED_COLOR: [number, number, number] = [0.32, 0.32, 0.34];

/** Fill colour for one cell. Occupied cells get a flat grey (hatching is
 *  drawn on top); a uniform grid maps to the ramp midpoint. */
export function cellColor(
  p: InsolationPayload,
  scale: HoursScale,
  ix: number,
  iy: number,
): [number, number, number] {
  if (p.occupied[iy][ix]) return OCCUPIED_COLOR;
  const span = scale.max - scale.min;
  const t = span > 0 ? (p.sunlit_hours[iy][ix] - scale.min) / span : 0.5;
  return rampColor(t);
}
