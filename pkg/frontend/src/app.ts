/**
 * Explorer shell: a parameter pane on the left, a spawned Julia pane on
 * the right, orbit probing with shift-click, overlay toggles fed by the
 * catalog endpoints. All numerics live server-side; this file only maps
 * pixels to plane points and back.
 */
import { planeToScreen, zoomAbout, panByPixels, Complex } from "./coords.js";
import { ViewState, defaultState, spawnJulia, encodeFragment, decodeFragment, tileQuery } from "./state.js";
import { TileCache } from "./tiles.js";
import { OrbitResponse, badgeText, orbitQuery, resolveProbe, tracePolyline } from "./orbit.js";

interface Marker {
  pos: Complex;
  kind: "critical" | "principal" | "fixed-value" | "zero";
}

const MARKER_COLORS: Record<Marker["kind"], string> = {
  critical: "#ffffff",
  principal: "#ffdc00",
  "fixed-value": "#00ffff",
  zero: "#ff8c00",
};

class Pane {
  state: ViewState;
  private img: HTMLImageElement | null = null;
  private markers: Marker[] = [];
  private badge = "";
  private trace: Complex[] = [];
  private startLocation: Complex = { re: 1000, im: 0 };

  constructor(
    readonly canvas: HTMLCanvasElement,
    readonly cache: TileCache,
    state: ViewState,
    private onSpawn?: (child: ViewState) => void,
  ) {
    this.state = state;
    canvas.addEventListener("wheel", (e) => this.onWheel(e), { passive: false });
    canvas.addEventListener("pointerdown", (e) => this.onPointerDown(e));
    canvas.addEventListener("click", (e) => this.onClick(e));
  }

  private canvasPos(e: MouseEvent): { x: number; y: number } {
    const r = this.canvas.getBoundingClientRect();
    return {
      x: ((e.clientX - r.left) / r.width) * this.state.view.pxW,
      y: ((e.clientY - r.top) / r.height) * this.state.view.pxH,
    };
  }

  private onWheel(e: WheelEvent): void {
    e.preventDefault();
    const { x, y } = this.canvasPos(e);
    const factor = e.deltaY < 0 ? 1.25 : 0.8;
    this.state = { ...this.state, view: zoomAbout(this.state.view, x, y, factor) };
    this.refresh();
  }

  private onPointerDown(e: PointerEvent): void {
    if (e.shiftKey || e.button !== 0) return;
    const startX = e.clientX;
    const startY = e.clientY;
    const startView = this.state.view;
    let moved = false;
    const move = (ev: PointerEvent) => {
      const r = this.canvas.getBoundingClientRect();
      const dx = ((ev.clientX - startX) / r.width) * startView.pxW;
      const dy = ((ev.clientY - startY) / r.height) * startView.pxH;
      if (Math.abs(dx) + Math.abs(dy) > 3) moved = true;
      if (moved) {
        this.state = { ...this.state, view: panByPixels(startView, dx, dy) };
        this.draw();
      }
    };
    const up = () => {
      window.removeEventListener("pointermove", move);
      window.removeEventListener("pointerup", up);
      if (moved) this.refresh();
    };
    window.addEventListener("pointermove", move);
    window.addEventListener("pointerup", up);
  }

  private onClick(e: MouseEvent): void {
    const { x, y } = this.canvasPos(e);
    if (e.shiftKey) {
      void this.probe(x, y);
      return;
    }
    if (this.state.kind === "parameter" && this.onSpawn) {
      this.onSpawn(spawnJulia(this.state, x, y));
    }
  }

  async probe(x: number, y: number): Promise<void> {
    const probe = resolveProbe(this.state, x, y, this.startLocation);
    const resp = await fetch(`/api/orbit?${orbitQuery(this.state, probe)}`);
    if (!resp.ok) return;
    const orbit = (await resp.json()) as OrbitResponse;
    this.badge = badgeText(orbit);
    this.trace = tracePolyline(orbit);
    this.draw();
  }

  async loadOverlays(): Promise<void> {
    this.markers = [];
    try {
      if (this.state.fn === "zeta") {
        const zeros = await (await fetch("/api/zeros?lo=0&hi=60")).json();
        for (const z of zeros) this.markers.push({ pos: { re: z.re, im: z.im }, kind: "zero" });
        const crits = await (await fetch("/api/criticals?kind=real&lo=-20&hi=0")).json();
        for (const c of crits) this.markers.push({ pos: { re: c.re, im: c.im }, kind: "critical" });
      }
      // transfer analysis of the current start: principal point + fixed values
      if (this.state.kind === "parameter" && /^[a-zA-Z]+-?\d+$/.test(this.state.start)) {
        const v = this.state.view;
        const q = new URLSearchParams({
          function: this.state.fn,
          critical: this.state.start,
          family: this.state.family,
          center: `${v.centerRe},${v.centerIm}`,
          width: String(v.width),
        });
        const resp = await fetch(`/api/transfer?${q}`);
        if (resp.ok) {
          const ta = await resp.json();
          this.markers.push({
            pos: { re: ta.principal_re, im: ta.principal_im }, kind: "principal",
          });
          for (const fv of ta.fixed_values) {
            this.markers.push({ pos: { re: fv.c_re, im: fv.c_im }, kind: "fixed-value" });
          }
          const crit = ta.critical;
          this.markers.push({ pos: { re: crit.re, im: crit.im }, kind: "critical" });
          this.setStartLocation({ re: crit.re, im: crit.im });
        }
      }
    } catch {
      /* overlays are cosmetic; missing catalogs are fine */
    }
    this.draw();
  }

  setStartLocation(p: Complex): void {
    this.startLocation = p;
  }

  async refresh(): Promise<void> {
    this.cache.cancelPending();
    const url = `/api/tile?${tileQuery(this.state)}`;
    try {
      const blob = await this.cache.get(url);
      const img = new Image();
      img.src = URL.createObjectURL(blob);
      await img.decode();
      this.img = img;
    } catch {
      this.img = null;
    }
    this.draw();
  }

  draw(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    ctx.fillStyle = "#101018";
    ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
    if (this.img) ctx.drawImage(this.img, 0, 0, this.canvas.width, this.canvas.height);
    for (const m of this.markers) {
      const { x, y } = planeToScreen(this.state.view, m.pos);
      if (x < 0 || y < 0 || x >= this.state.view.pxW || y >= this.state.view.pxH) continue;
      ctx.strokeStyle = MARKER_COLORS[m.kind];
      ctx.strokeRect(x - 3, y - 3, 6, 6);
    }
    if (this.trace.length > 1) {
      ctx.strokeStyle = "#ff4060";
      ctx.beginPath();
      this.trace.forEach((p, i) => {
        const { x, y } = planeToScreen(this.state.view, p);
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      });
      ctx.stroke();
    }
    if (this.badge) {
      ctx.fillStyle = "#ffffff";
      ctx.font = "14px monospace";
      ctx.fillText(this.badge, 8, 18);
    }
    const info = document.getElementById(`${this.canvas.id}-info`);
    if (info) {
      const s = this.state;
      const cTxt = s.c ? ` c=${s.c.re.toFixed(6)},${s.c.im.toFixed(6)}` : "";
      info.textContent =
        `${s.kind} ${s.fn} ${s.family}${cTxt} @ ${s.view.centerRe.toPrecision(6)},` +
        `${s.view.centerIm.toPrecision(6)} w=${s.view.width.toPrecision(4)}`;
    }
  }
}

export function boot(): void {
  const left = document.getElementById("plane-left") as HTMLCanvasElement;
  const right = document.getElementById("plane-right") as HTMLCanvasElement;
  const cache = new TileCache((url, init) => fetch(url, init));

  const initial = decodeFragment(window.location.hash, left.width, left.height);
  let juliaPane: Pane | null = null;

  const paramPane = new Pane(left, cache, initial, (child) => {
    child.view = { ...child.view, pxW: right.width, pxH: right.height };
    if (juliaPane) {
      juliaPane.state = child;
      void juliaPane.refresh();
    }
    window.location.hash = encodeFragment(child);
  });

  juliaPane = new Pane(right, cache, {
    ...defaultState(),
    kind: "julia",
    c: { re: 0, im: 0 },
    view: { centerRe: -2, centerIm: 0, width: 30, pxW: right.width, pxH: right.height },
  });

  const fnSel = document.getElementById("fn") as HTMLSelectElement | null;
  const famSel = document.getElementById("family") as HTMLSelectElement | null;
  const startInp = document.getElementById("start") as HTMLInputElement | null;
  const schemeSel = document.getElementById("scheme") as HTMLSelectElement | null;
  const apply = document.getElementById("apply");
  apply?.addEventListener("click", () => {
    paramPane.state = {
      ...paramPane.state,
      fn: fnSel?.value ?? "zeta",
      family: (famSel?.value as "additive" | "multiplicative") ?? "additive",
      start: startInp?.value || "z1000",
      scheme: schemeSel?.value ?? "steps",
    };
    window.location.hash = encodeFragment(paramPane.state);
    void paramPane.refresh();
  });
  document.getElementById("overlays")?.addEventListener("click", () => {
    void paramPane.loadOverlays();
  });

  void paramPane.refresh();
  void juliaPane.refresh();
}

if (typeof document !== "undefined" && document.getElementById("plane-left")) {
  boot();
}
