/**
 * Orbit probe: resolve (c, z0) from the view kind and a click, call
 * /api/orbit, and shape the result for the overlay (polyline + badge).
 */
import { Complex, screenToPlane } from "./coords.js";
import { ViewState } from "./state.js";

export interface OrbitResponse {
  status: "escaped" | "periodic" | "bounded";
  final: [number, number];
  steps: number;
  period: number | null;
  steps_to_lock: number | null;
  trace: [number, number][];
}

export interface Probe {
  c: Complex;
  z0: Complex;
}

/**
 * A click probes the orbit the view is actually showing: on a Julia
 * view the click picks z0 (c is the view's parameter); on a parameter
 * view the click picks c and the orbit starts at the configured start
 * point; on a portrait it starts at the click with c = 0.
 */
export function resolveProbe(state: ViewState, x: number, y: number,
                             startLocation: Complex): Probe {
  const p = screenToPlane(state.view, x, y);
  if (state.kind === "julia") {
    return { c: state.c ?? { re: 0, im: 0 }, z0: p };
  }
  if (state.kind === "parameter") {
    return { c: p, z0: startLocation };
  }
  return { c: { re: 0, im: 0 }, z0: p };
}

export function orbitQuery(state: ViewState, probe: Probe): string {
  return new URLSearchParams({
    function: state.fn,
    family: state.family,
    c: `${probe.c.re},${probe.c.im}`,
    z0: `${probe.z0.re},${probe.z0.im}`,
  }).toString();
}

/** Badge text, e.g. "periodic 1", "escaped @ 17", "max-iter". */
export function badgeText(orbit: OrbitResponse): string {
  if (orbit.status === "periodic") return `periodic ${orbit.period}`;
  if (orbit.status === "escaped") return `escaped @ ${orbit.steps}`;
  return "max-iter";
}

export function tracePolyline(orbit: OrbitResponse): Complex[] {
  return orbit.trace.map(([re, im]) => ({ re, im }));
}
