"""Stateless HTTP facade over the rendering and analysis library.

Endpoints (all GET, query-string parameters):
  /api/tile       portrait / parameter / julia renders as PNG
  /api/orbit      single-orbit probe as JSON (trace capped at 512 points)
  /api/criticals  critical-point catalogs
  /api/zeros      nontrivial zeros
  /api/transfer   transfer-function analysis for a critical point
  /api/presets    the named preset table

Handlers call the pure library functions; tile bytes are identical to a
direct render with the same parameters and carry a sha256 ETag.  The
only shared state is an idempotent in-process cache for the heavier
catalog scans.
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response

from . import criticals as crit
from . import transfer as xfer
from .dynamics import (DEFAULT_ITER, FamilyKind, IterationParams,
                       iterate_orbit)
from .params import EvalMode, EvalParams, FunctionId, parse_complex, parse_function_id
from .presets import load_presets
from .render import (ESCAPE_STEPS, PORTRAIT, STEP_PERIOD, ColorScheme,
                     SchemeTag, Viewport, render_julia,
                     render_parameter_plane, render_portrait)

_TRACE_CAP = 512

_SCHEMES = {
    "portrait": PORTRAIT,
    "steps": ESCAPE_STEPS,
    "period": STEP_PERIOD,
}


@dataclass(frozen=True)
class Settings:
    max_px: int = 1024
    max_im: float = 300.0
    max_iter_limit: int = 4096
    default_mode: str = "accelerated"
    default_terms: int = 64
    frontend_dir: str | None = None

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            max_px=int(os.environ.get("ZETASCAPE_MAX_PX", 1024)),
            max_im=float(os.environ.get("ZETASCAPE_MAX_IM", 300.0)),
            max_iter_limit=int(os.environ.get("ZETASCAPE_MAX_ITER", 4096)),
            default_mode=os.environ.get("ZETASCAPE_MODE", "accelerated"),
            default_terms=int(os.environ.get("ZETASCAPE_TERMS", 64)),
            frontend_dir=os.environ.get("ZETASCAPE_FRONTEND_DIR"),
        )


def _bad(msg: str) -> HTTPException:
    return HTTPException(status_code=400, detail=msg)


def _parse(kind, text, what):
    try:
        return kind(text)
    except (ValueError, TypeError) as exc:
        raise _bad(f"invalid {what}: {exc}") from exc


def _complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


@lru_cache(maxsize=256)
def _cached_real_criticals(fid: FunctionId, lo: float, hi: float):
    return crit.find_real_criticals(fid, lo, hi)


@lru_cache(maxsize=256)
def _cached_unreal_criticals(fid: FunctionId, lo: float, hi: float):
    return crit.find_unreal_criticals(fid, lo, hi)


@lru_cache(maxsize=256)
def _cached_zeros(fid: FunctionId, lo: float, hi: float):
    return crit.find_zeros(fid, lo, hi)


def create_app(settings: Settings | None = None) -> FastAPI:
    s = settings or Settings.from_env()
    app = FastAPI(title="zetascape", docs_url=None, redoc_url=None)

    def resolve_start(fid: FunctionId, text: str):
        if "," in text or text.lstrip("+-").replace(".", "").isdigit():
            return _parse(parse_complex, text, "start")
        try:
            return crit.resolve_critical_label(fid, text)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    def iteration_params(max_iter: int, escape_radius: float, plateau_re: float,
                         eps_cycle: float) -> IterationParams:
        if not 1 <= max_iter <= s.max_iter_limit:
            raise _bad(f"max_iter must be in [1, {s.max_iter_limit}]")
        try:
            return IterationParams(max_iter=max_iter, escape_radius=escape_radius,
                                   plateau_re=plateau_re, eps_cycle=eps_cycle)
        except ValueError as exc:
            raise _bad(str(exc)) from exc

    def eval_params(mode: str, terms: int, deriv_step: float) -> EvalParams:
        try:
            m = EvalMode(mode)
            return EvalParams(mode=m, terms=terms, deriv_step=deriv_step)
        except ValueError as exc:
            raise _bad(str(exc)) from exc

    @app.get("/api/tile")
    def tile(view: str = "portrait", function: str = "zeta",
             family: str = "additive", start: str = "z1000", c: str = "0,0",
             center: str = "0,0", width: float = 4.0,
             px: int = 256, px_h: int | None = None, scheme: str | None = None,
             max_iter: int = DEFAULT_ITER.max_iter,
             escape_radius: float = DEFAULT_ITER.escape_radius,
             plateau_re: float = DEFAULT_ITER.plateau_re,
             eps_cycle: float = DEFAULT_ITER.eps_cycle,
             mode: str | None = None, terms: int | None = None,
             deriv_step: float = 1e-6, derivative: bool = False):
        mode = mode if mode is not None else s.default_mode
        terms = terms if terms is not None else s.default_terms
        px_h = px if px_h is None else px_h
        if not (1 <= px <= s.max_px and 1 <= px_h <= s.max_px):
            raise _bad(f"pixel dimensions must be in [1, {s.max_px}]")
        if width <= 0:
            raise _bad("width must be positive")
        fid = _parse(parse_function_id, function, "function")
        vp = Viewport(_parse(parse_complex, center, "center"), width, px, px_h)
        ep = eval_params(mode, terms, deriv_step)
        if scheme is None:
            scheme = "portrait" if view == "portrait" else "steps"
        if scheme not in _SCHEMES:
            raise _bad(f"unknown scheme {scheme!r}")
        cs: ColorScheme = _SCHEMES[scheme]

        try:
            if view == "portrait":
                img = render_portrait(fid, vp, cs if cs.tag is SchemeTag.PORTRAIT else PORTRAIT,
                                      ep, derivative=derivative)
            elif view in ("parameter", "julia"):
                try:
                    fam = FamilyKind(family)
                except ValueError as exc:
                    raise _bad(f"unknown family {family!r}") from exc
                if cs.tag is SchemeTag.PORTRAIT:
                    cs = ESCAPE_STEPS
                ip = iteration_params(max_iter, escape_radius, plateau_re, eps_cycle)
                if view == "parameter":
                    start_pt = resolve_start(fid, start)
                    img = render_parameter_plane(fid, fam, start_pt, vp, cs, ip, ep)
                else:
                    cz = _parse(parse_complex, c, "c")
                    img = render_julia(fid, fam, cz, vp, cs, ip, ep)
            else:
                raise _bad(f"unknown view {view!r}")
        except ValueError as exc:  # e.g. char_index out of range for q
            raise _bad(str(exc)) from exc

        png = img.to_png()
        etag = hashlib.sha256(png).hexdigest()
        return Response(content=png, media_type="image/png",
                        headers={"ETag": etag, "Cache-Control": "public, max-age=86400"})

    @app.get("/api/orbit")
    def orbit(function: str = "zeta", family: str = "additive",
              c: str = "0,0", z0: str = "0,0",
              max_iter: int = DEFAULT_ITER.max_iter,
              escape_radius: float = DEFAULT_ITER.escape_radius,
              plateau_re: float = DEFAULT_ITER.plateau_re,
              eps_cycle: float = DEFAULT_ITER.eps_cycle,
              mode: str | None = None, terms: int | None = None):
        mode = mode if mode is not None else s.default_mode
        terms = terms if terms is not None else s.default_terms
        fid = _parse(parse_function_id, function, "function")
        try:
            fam = FamilyKind(family)
        except ValueError as exc:
            raise _bad(f"unknown family {family!r}") from exc
        ip = iteration_params(max_iter, escape_radius, plateau_re, eps_cycle)
        ep = eval_params(mode, terms, 1e-6)
        cz = _parse(parse_complex, c, "c")
        z0z = _parse(parse_complex, z0, "z0")
        res = iterate_orbit(fid, fam, cz, z0z, ip, ep)
        body = {
            "status": res.status.value,
            "final": _complex_json(res.final),
            "steps": res.steps,
            "period": res.period,
            "steps_to_lock": res.steps_to_lock,
            "cycle": [_complex_json(w) for w in res.cycle] if res.cycle else None,
            "multiplier": _complex_json(res.multiplier) if res.multiplier is not None else None,
            "trace": [_complex_json(w) for w in (res.trace or [])[:_TRACE_CAP]],
        }
        return body

    @app.get("/api/criticals")
    def criticals_endpoint(function: str = "zeta", kind: str = "real",
                           lo: float = -20.0, hi: float = 0.0):
        fid = _parse(parse_function_id, function, "function")
        if max(abs(lo), abs(hi)) > s.max_im:
            raise _bad(f"range exceeds the configured |Im| <= {s.max_im} desk limit")
        try:
            if kind == "real":
                pts = _cached_real_criticals(fid, lo, hi)
            elif kind == "unreal":
                pts = _cached_unreal_criticals(fid, lo, hi)
            else:
                raise _bad(f"unknown kind {kind!r}")
        except ValueError as exc:
            raise _bad(str(exc)) from exc
        return [p.as_dict() for p in pts]

    @app.get("/api/zeros")
    def zeros_endpoint(function: str = "zeta", lo: float = 0.0, hi: float = 50.0):
        fid = _parse(parse_function_id, function, "function")
        if max(abs(lo), abs(hi)) > s.max_im:
            raise _bad(f"range exceeds the configured |Im| <= {s.max_im} desk limit")
        try:
            zs = _cached_zeros(fid, lo, hi)
        except ValueError as exc:
            raise _bad(str(exc)) from exc
        return [z.as_dict() for z in zs]

    @app.get("/api/transfer")
    def transfer_endpoint(function: str = "zeta", critical: str = "z1000",
                          family: str = "additive",
                          center: str = "-7,9.5", width: float = 18.0,
                          px: int = 256):
        fid = _parse(parse_function_id, function, "function")
        try:
            fam = FamilyKind(family)
        except ValueError as exc:
            raise _bad(f"unknown family {family!r}") from exc
        if abs(_parse(parse_complex, center, "center").imag) > s.max_im:
            raise _bad(f"region exceeds the configured |Im| <= {s.max_im} desk limit")
        try:
            cp = crit.resolve_critical_label(fid, critical)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        region = Viewport(_parse(parse_complex, center, "center"), width, px, px)
        try:
            ta = xfer.find_fixed_values(cp, fam, region)
        except ValueError as exc:
            raise _bad(str(exc)) from exc
        return ta.as_dict()

    @app.get("/api/presets")
    def presets_endpoint():
        return load_presets()

    frontend = s.frontend_dir or str(Path(__file__).resolve().parents[2] / "frontend" / "dist")
    if Path(frontend).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=frontend, html=True), name="ui")

    return app


def main(host: str = "127.0.0.1", port: int = 8570,
         settings: Settings | None = None) -> None:
    import uvicorn
    uvicorn.run(create_app(settings), host=host, port=port)
