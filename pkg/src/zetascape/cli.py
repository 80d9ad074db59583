"""Command-line entry point: batch renders, catalog dumps, orbit probes,
Farey statistics, and the HTTP service.

Complex arguments are written "re,im"; critical points by label (z-15,
z95, z1000) or "re,im".
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import replace
from pathlib import Path

# accept "-15.5,0"-style complex values after flags like --center
_NEGATIVE_VALUE = re.compile(r"^-\d+(\.\d*)?([,eE][-+]?[\d.]+)?$")

from . import criticals as crit
from . import transfer as xfer
from .dynamics import DEFAULT_ITER, FamilyKind, iterate_orbit
from .farey import farey, rh_stats
from .params import (EvalMode, EvalParams, parse_complex, parse_function_id)
from .presets import load_presets
from .render import (ESCAPE_STEPS, PORTRAIT, STEP_PERIOD, SchemeTag, Viewport,
                     render_julia, render_parameter_plane, render_portrait)

_SCHEMES = {"portrait": PORTRAIT, "steps": ESCAPE_STEPS, "period": STEP_PERIOD}


def _fail(msg: str) -> "NoReturn":  # noqa: F821
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


def _resolve_start(fid, text: str):
    if "," in text:
        return parse_complex(text)
    try:
        return crit.resolve_critical_label(fid, text)
    except KeyError:
        try:
            return parse_complex(text)
        except ValueError:
            _fail(f"cannot resolve start {text!r}")


def cmd_render(args) -> int:
    spec = {}
    if args.preset:
        table = load_presets(args.presets_file)
        if args.preset not in table:
            _fail(f"unknown preset {args.preset!r}")
        spec = dict(table[args.preset])
    view = args.view or spec.get("view", "portrait")
    function = args.function or spec.get("function", "zeta")
    family = args.family or spec.get("family", "additive")
    start = args.start or spec.get("start", "z1000")
    c = args.c or spec.get("c", "0,0")
    center = args.center or spec.get("center", "0,0")
    width = args.width if args.width is not None else float(spec.get("width", 4.0))
    scheme = args.scheme or spec.get("scheme", "portrait" if view == "portrait" else "steps")
    derivative = args.derivative or bool(spec.get("derivative", False))

    fid = parse_function_id(function)
    vp = Viewport(parse_complex(center), width, args.px, args.px_h or args.px)
    ep = EvalParams(mode=EvalMode(args.mode), terms=args.terms)
    ip = replace(DEFAULT_ITER, max_iter=args.max_iter)
    cs = _SCHEMES.get(scheme) or _fail(f"unknown scheme {scheme!r}")

    if view == "portrait":
        img = render_portrait(fid, vp, cs if cs.tag is SchemeTag.PORTRAIT else PORTRAIT,
                              ep, derivative=derivative, tile_px=args.tile_px,
                              workers=args.workers, supersample=args.supersample)
    elif view == "parameter":
        fam = FamilyKind(family)
        if cs.tag is SchemeTag.PORTRAIT:
            cs = ESCAPE_STEPS
        img = render_parameter_plane(fid, fam, _resolve_start(fid, start), vp, cs,
                                     ip, ep, tile_px=args.tile_px,
                                     workers=args.workers, supersample=args.supersample)
    elif view == "julia":
        fam = FamilyKind(family)
        if cs.tag is SchemeTag.PORTRAIT:
            cs = ESCAPE_STEPS
        img = render_julia(fid, fam, parse_complex(c), vp, cs, ip, ep,
                           tile_px=args.tile_px, workers=args.workers,
                           supersample=args.supersample)
    else:
        _fail(f"unknown view {view!r}")

    out = Path(args.out)
    out.write_bytes(img.to_png())
    resolved = {
        "view": view, "function": function, "family": family,
        "start": start, "c": c, "center": center, "width": width,
        "px": args.px, "px_h": args.px_h or args.px, "scheme": scheme,
        "derivative": derivative, "max_iter": args.max_iter,
        "mode": args.mode, "terms": args.terms, "out": str(out),
    }
    print(json.dumps(resolved, sort_keys=True))
    return 0


def cmd_analyze(args) -> int:
    fid = parse_function_id(getattr(args, "function", "zeta"))
    if args.what == "criticals":
        lo, hi = args.range
        if args.unreal:
            pts = crit.find_unreal_criticals(fid, lo, hi)
        else:
            pts = crit.find_real_criticals(fid, lo, hi)
        print(crit.catalog_json(pts))
    elif args.what == "zeros":
        lo, hi = args.range
        zs = crit.find_zeros(fid, lo, hi)
        print(json.dumps([z.as_dict() for z in zs], indent=2))
    elif args.what == "transfer":
        cp = crit.resolve_critical_label(fid, args.critical)
        fam = FamilyKind(args.family)
        region = Viewport(parse_complex(args.center), args.width, 256, 256)
        print(xfer.find_fixed_values(cp, fam, region).to_json())
    elif args.what == "orbit":
        fam = FamilyKind(args.family)
        ip = replace(DEFAULT_ITER, max_iter=args.max_iter)
        res = iterate_orbit(fid, fam, parse_complex(args.c), parse_complex(args.z0), ip)
        print(json.dumps({
            "status": res.status.value,
            "final": _complex_json(res.final),
            "steps": res.steps,
            "period": res.period,
            "steps_to_lock": res.steps_to_lock,
            "cycle": [_complex_json(w) for w in res.cycle] if res.cycle else None,
            "multiplier": _complex_json(res.multiplier) if res.multiplier is not None else None,
        }, indent=2))
    elif args.what == "farey":
        seq = farey(args.n)
        body = {"n": args.n, "sequence": [str(f) for f in seq]}
        if args.stats:
            st = rh_stats(args.n)
            body["m_n"] = st.m_n
            body["sum_abs_d"] = st.sum_abs_d
            body["sum_sq_d"] = st.sum_sq_d
        print(json.dumps(body, indent=2))
    return 0


def cmd_serve(args) -> int:
    from .service import Settings, main as serve_main
    settings = Settings.from_env()
    if args.frontend_dir:
        settings = Settings(settings.max_px, settings.max_im,
                            settings.max_iter_limit, args.frontend_dir)
    serve_main(host=args.host, port=args.port, settings=settings)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zetascape")
    ap._negative_number_matcher = _NEGATIVE_VALUE
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("render", help="render a preset or explicit view to PNG")
    r._negative_number_matcher = _NEGATIVE_VALUE
    r.add_argument("--preset")
    r.add_argument("--presets-file", help="JSON file of user presets to merge")
    r.add_argument("--view", choices=["portrait", "parameter", "julia"])
    r.add_argument("--function")
    r.add_argument("--family", choices=["additive", "multiplicative"])
    r.add_argument("--start", help="critical label (z-15) or re,im")
    r.add_argument("--c", help="julia parameter re,im")
    r.add_argument("--center", help="viewport center re,im")
    r.add_argument("--width", type=float)
    r.add_argument("--px", type=int, default=256)
    r.add_argument("--px-h", type=int, dest="px_h")
    r.add_argument("--scheme", choices=list(_SCHEMES))
    r.add_argument("--derivative", action="store_true")
    r.add_argument("--max-iter", type=int, default=DEFAULT_ITER.max_iter)
    r.add_argument("--mode", choices=[m.value for m in EvalMode], default="accelerated")
    r.add_argument("--terms", type=int, default=64)
    r.add_argument("--tile-px", type=int, default=256)
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--supersample", type=int, default=1, choices=[1, 2])
    r.add_argument("--out", required=True)
    r.set_defaults(fn=cmd_render)

    a = sub.add_parser("analyze", help="dump catalogs, orbits, farey tables as JSON")
    asub = a.add_subparsers(dest="what", required=True)

    ac = asub.add_parser("criticals")
    ac.add_argument("--function", default="zeta")
    grp = ac.add_mutually_exclusive_group()
    grp.add_argument("--real", action="store_true")
    grp.add_argument("--unreal", action="store_true")
    ac.add_argument("--range", nargs=2, type=float, required=True)

    az = asub.add_parser("zeros")
    az.add_argument("--function", default="zeta")
    az.add_argument("--range", nargs=2, type=float, required=True)

    at = asub.add_parser("transfer")
    at.add_argument("--function", default="zeta")
    at.add_argument("--critical", required=True)
    at.add_argument("--family", default="additive")
    at.add_argument("--center", default="-7,9.5")
    at.add_argument("--width", type=float, default=18.0)

    ao = asub.add_parser("orbit")
    ao.add_argument("--function", default="zeta")
    ao.add_argument("--family", default="additive")
    ao.add_argument("--c", required=True)
    ao.add_argument("--z0", required=True)
    ao.add_argument("--max-iter", type=int, default=DEFAULT_ITER.max_iter)

    af = asub.add_parser("farey")
    af.add_argument("--n", type=int, required=True)
    af.add_argument("--stats", action="store_true")

    for sp in (ac, az, at, ao, af):
        sp.set_defaults(fn=cmd_analyze)
        sp._negative_number_matcher = _NEGATIVE_VALUE

    sv = sub.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8570)
    sv.add_argument("--frontend-dir")
    sv.set_defaults(fn=cmd_serve)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
