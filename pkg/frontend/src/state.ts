/**
 * View state for one pane, plus the parameter->Julia spawning rule and
 * the URL-fragment codec for deep links.
 *
 * Fragment grammar: `#key=value&key=value` with keys
 *   view (portrait|parameter|julia), fn, family, start, c, cre, cim,
 *   re, im, w, scheme  - numbers in plain decimal.
 */
import { Complex, ViewRect, screenToPlane } from "./coords.js";

export type ViewKind = "portrait" | "parameter" | "julia";
export type Family = "additive" | "multiplicative";

export interface ViewState {
  kind: ViewKind;
  fn: string;          // zeta | eta | xi | rosetta | quadratic | dirichlet:q:k
  family: Family;
  start: string;       // critical label or "re,im" (parameter views)
  c: Complex | null;   // julia parameter (julia views)
  view: ViewRect;
  scheme: string;      // portrait | steps | period
}

export const CENTRAL_VALLEY: ViewRect = {
  centerRe: -2.0,
  centerIm: 0.0,
  width: 30.0,
  pxW: 512,
  pxH: 512,
};

export function defaultState(): ViewState {
  return {
    kind: "parameter",
    fn: "zeta",
    family: "additive",
    start: "z1000",
    c: null,
    view: { centerRe: -5, centerIm: 0, width: 40, pxW: 512, pxH: 512 },
    scheme: "steps",
  };
}

/**
 * Click on a parameter plane spawns the corresponding Julia view: the
 * new c is exactly the plane point under the click, and the viewport
 * opens on the central valley.
 */
export function spawnJulia(state: ViewState, x: number, y: number): ViewState {
  if (state.kind !== "parameter") {
    throw new Error("julia views spawn from parameter views");
  }
  const c = screenToPlane(state.view, x, y);
  return {
    kind: "julia",
    fn: state.fn,
    family: state.family,
    start: state.start,
    c,
    view: { ...CENTRAL_VALLEY, pxW: state.view.pxW, pxH: state.view.pxH },
    scheme: state.scheme === "portrait" ? "steps" : state.scheme,
  };
}

export function encodeFragment(s: ViewState): string {
  const parts = [
    `view=${s.kind}`,
    `fn=${s.fn}`,
    `family=${s.family}`,
    `re=${s.view.centerRe}`,
    `im=${s.view.centerIm}`,
    `w=${s.view.width}`,
    `scheme=${s.scheme}`,
  ];
  if (s.kind === "parameter") parts.push(`start=${s.start}`);
  if (s.kind === "julia" && s.c) parts.push(`cre=${s.c.re}`, `cim=${s.c.im}`);
  return "#" + parts.join("&");
}

export function decodeFragment(frag: string, pxW: number, pxH: number): ViewState {
  const out = defaultState();
  out.view = { ...out.view, pxW, pxH };
  const body = frag.startsWith("#") ? frag.slice(1) : frag;
  if (!body) return out;
  const kv = new Map<string, string>();
  for (const part of body.split("&")) {
    const eq = part.indexOf("=");
    if (eq > 0) kv.set(part.slice(0, eq), decodeURIComponent(part.slice(eq + 1)));
  }
  const num = (key: string, fall: number) => {
    const v = kv.get(key);
    const f = v === undefined ? NaN : Number(v);
    return Number.isFinite(f) ? f : fall;
  };
  const kind = kv.get("view");
  if (kind === "portrait" || kind === "parameter" || kind === "julia") out.kind = kind;
  out.fn = kv.get("fn") ?? out.fn;
  const fam = kv.get("family");
  if (fam === "additive" || fam === "multiplicative") out.family = fam;
  out.start = kv.get("start") ?? out.start;
  out.scheme = kv.get("scheme") ?? out.scheme;
  out.view.centerRe = num("re", out.view.centerRe);
  out.view.centerIm = num("im", out.view.centerIm);
  const w = num("w", out.view.width);
  if (w > 0) out.view.width = w;
  if (kv.has("cre") || kv.has("cim")) {
    out.c = { re: num("cre", 0), im: num("cim", 0) };
  }
  return out;
}

/** Tile request query string for a view state (one canvas = one tile). */
export function tileQuery(s: ViewState): string {
  const q = new URLSearchParams({
    view: s.kind,
    function: s.fn,
    family: s.family,
    center: `${s.view.centerRe},${s.view.centerIm}`,
    width: String(s.view.width),
    px: String(s.view.pxW),
    px_h: String(s.view.pxH),
    scheme: s.scheme,
  });
  if (s.kind === "parameter") q.set("start", s.start);
  if (s.kind === "julia" && s.c) q.set("c", `${s.c.re},${s.c.im}`);
  return q.toString();
}
