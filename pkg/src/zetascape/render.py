"""Deterministic, tile-parallel rendering of function portraits,
parameter planes and Julia sets.

Pixel mapping: pixel (i, j) of a viewport sits at
    center + ((i+0.5)/px_w - 0.5)*width + 1j*(0.5 - (j+0.5)/px_h)*height,
so the imaginary axis increases upward and sampling is at pixel centers.
Internal tiling splits the *pixel grid*, never the plane, and every
pixel's coordinate is computed from the full-viewport formula; output is
therefore byte-identical for any tile size and worker count.

Color mappings are fixed here so golden snapshots are stable:

* PORTRAIT: hue = arg(f) over a green->yellow->red wheel; brightness
  v = 0.35 + 0.55 frac(log2 |f|), scaled toward black below |f| = 0.05;
  a white band where ||f| - 1| < 0.02 |f| (the derivative test device);
  poles/overflow render magenta.
* ESCAPE_STEPS: escaped pixels get a blue ramp 32 + 223 log(1+steps)/
  log(1+max_iter) (green channel at 35% of blue); bounded pixels black.
* STEP_PERIOD: locked pixels get the blue ramp on steps-to-lock plus
  red = min(255, 32*period); still-bounded pixels near-black blue;
  escaped pixels the green ramp.
"""
from __future__ import annotations

import enum
import struct
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .criticals import CriticalPoint
from .dynamics import (DEFAULT_ITER, FamilyKind, IterationParams, orbit_batch,
                       _BOUNDED, _ESCAPED, _PERIODIC)
from .functions import deriv_grid, value_grid
from .params import EvalMode, EvalParams, FunctionId
from .zetafn import DEFAULT_PARAMS

_POLE_COLOR = (255, 0, 255)


@dataclass(frozen=True)
class Viewport:
    center: complex
    width: float
    px_w: int
    px_h: int

    def __post_init__(self) -> None:
        if self.width <= 0:
            raise ValueError("width must be positive")
        if self.px_w < 1 or self.px_h < 1:
            raise ValueError("pixel dimensions must be positive")

    @property
    def height(self) -> float:
        return self.width * self.px_h / self.px_w

    def pixel_center(self, i: int, j: int) -> complex:
        re = self.center.real + ((i + 0.5) / self.px_w - 0.5) * self.width
        im = self.center.imag + (0.5 - (j + 0.5) / self.px_h) * self.height
        return complex(re, im)

    def grid(self, rect: tuple[int, int, int, int] | None = None) -> np.ndarray:
        """(h, w) complex grid of pixel centers for rect = (x0, y0, w, h)."""
        x0, y0, w, h = rect if rect is not None else (0, 0, self.px_w, self.px_h)
        ii = np.arange(x0, x0 + w, dtype=np.float64)
        jj = np.arange(y0, y0 + h, dtype=np.float64)
        re = ((ii + 0.5) / self.px_w - 0.5) * self.width + self.center.real
        im = (0.5 - (jj + 0.5) / self.px_h) * self.height + self.center.imag
        return re[None, :] + 1j * im[:, None]

    def to_pixel(self, z: complex) -> tuple[int, int]:
        """Nearest pixel indices of a plane point (may be out of range)."""
        i = int(np.rint(((z.real - self.center.real) / self.width + 0.5) * self.px_w - 0.5))
        j = int(np.rint((0.5 - (z.imag - self.center.imag) / self.height) * self.px_h - 0.5))
        return i, j

    def max_abs_im(self) -> float:
        half = 0.5 * self.height
        return max(abs(self.center.imag + half), abs(self.center.imag - half))


class SchemeTag(enum.Enum):
    PORTRAIT = "portrait"
    ESCAPE_STEPS = "steps"
    STEP_PERIOD = "period"


@dataclass(frozen=True)
class ColorScheme:
    tag: SchemeTag
    band_tol: float = 0.02   # half-width of the |f| = 1 band, relative
    zero_cut: float = 0.05   # |f| below which brightness fades to black
    period_gain: int = 32    # red per period unit in STEP_PERIOD


PORTRAIT = ColorScheme(SchemeTag.PORTRAIT)
ESCAPE_STEPS = ColorScheme(SchemeTag.ESCAPE_STEPS)
STEP_PERIOD = ColorScheme(SchemeTag.STEP_PERIOD)


@dataclass(frozen=True)
class ImageTile:
    px_w: int
    px_h: int
    pixels: bytes  # row-major RGBA

    def __post_init__(self) -> None:
        if len(self.pixels) != 4 * self.px_w * self.px_h:
            raise ValueError("pixel buffer length mismatch")

    def rgba(self) -> np.ndarray:
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.px_h, self.px_w, 4)

    def to_png(self) -> bytes:
        return encode_png(self.px_w, self.px_h, self.pixels)


def encode_png(width: int, height: int, rgba: bytes) -> bytes:
    """Minimal deterministic PNG writer: 8-bit RGBA, no interlace."""
    def chunk(typ: bytes, data: bytes) -> bytes:
        return (struct.pack(">I", len(data)) + typ + data
                + struct.pack(">I", zlib.crc32(typ + data) & 0xFFFFFFFF))

    stride = 4 * width
    raw = b"".join(b"\x00" + rgba[y * stride:(y + 1) * stride] for y in range(height))
    return (b"\x89PNG\r\n\x1a\n"
            + chunk(b"IHDR", struct.pack(">IIBBBBB", width, height, 8, 6, 0, 0, 0))
            + chunk(b"IDAT", zlib.compress(raw, 9))
            + chunk(b"IEND", b""))


# ------------------------------------------------------------- colorize

def _portrait_colors(f: np.ndarray, cs: ColorScheme) -> np.ndarray:
    flat = f.ravel()
    n = flat.size
    rgb = np.zeros((n, 3), dtype=np.float64)
    absf = np.abs(flat)
    finite = np.isfinite(absf)

    ok = finite & (absf > 0)
    t = (np.angle(flat[ok]) + np.pi) / (2.0 * np.pi)
    lo = t < 0.5
    u = np.empty_like(t)
    col = np.empty((t.size, 3))
    u[lo] = 2.0 * t[lo]
    col[lo, 0] = 255.0 * u[lo]
    col[lo, 1] = 200.0 + 55.0 * u[lo]
    col[lo, 2] = 0.0
    hi = ~lo
    u[hi] = 2.0 * t[hi] - 1.0
    col[hi, 0] = 255.0 - 35.0 * u[hi]
    col[hi, 1] = 255.0 * (1.0 - u[hi])
    col[hi, 2] = 0.0
    v = 0.35 + 0.55 * np.mod(np.log2(absf[ok]), 1.0)
    v *= np.clip(absf[ok] / cs.zero_cut, 0.0, 1.0)
    rgb[ok] = col * v[:, None]

    band = finite & (np.abs(absf - 1.0) < cs.band_tol * absf)
    rgb[band] = 255.0
    bad = ~finite
    rgb[bad] = _POLE_COLOR
    zero = finite & (absf == 0)
    rgb[zero] = 0.0

    out = np.empty((n, 4), dtype=np.uint8)
    out[:, :3] = np.rint(np.clip(rgb, 0, 255)).astype(np.uint8)
    out[:, 3] = 255
    return out.reshape(f.shape + (4,))


def _ramp(x: np.ndarray, total: int) -> np.ndarray:
    return 32.0 + np.rint(223.0 * np.log1p(x) / np.log1p(total))


def _orbit_colors(res: dict, cs: ColorScheme, max_iter: int) -> np.ndarray:
    status = res["status"].ravel()
    steps = res["steps"].ravel().astype(np.float64)
    period = res["period"].ravel().astype(np.float64)
    lock = res["lock"].ravel().astype(np.float64)
    n = status.size
    out = np.zeros((n, 4), dtype=np.uint8)
    out[:, 3] = 255

    esc = status == _ESCAPED
    if cs.tag is SchemeTag.ESCAPE_STEPS:
        b = _ramp(steps[esc], max_iter)
        out[esc, 2] = b.astype(np.uint8)
        out[esc, 1] = np.rint(0.35 * b).astype(np.uint8)
        # periodic and max-iter-bounded pixels stay black
    else:  # STEP_PERIOD
        per = status == _PERIODIC
        out[per, 0] = np.minimum(255.0, cs.period_gain * period[per]).astype(np.uint8)
        out[per, 2] = _ramp(lock[per], max_iter).astype(np.uint8)
        out[esc, 1] = _ramp(steps[esc], max_iter).astype(np.uint8)
        out[status == _BOUNDED, 2] = 16
    return out.reshape(res["status"].shape + (4,))


# ------------------------------------------------------------ rendering

def _adapt_params(ep: EvalParams, vp: Viewport) -> EvalParams:
    """Raise the truncated-series term count with viewport height."""
    if ep.mode is EvalMode.TRUNCATED_ETA:
        need = max(64, 8 * int(np.ceil(vp.max_abs_im())))
        if need > ep.terms:
            return replace(ep, terms=need)
    return ep


def _tile_rects(vp: Viewport, tile_px: int):
    for y0 in range(0, vp.px_h, tile_px):
        for x0 in range(0, vp.px_w, tile_px):
            yield (x0, y0, min(tile_px, vp.px_w - x0), min(tile_px, vp.px_h - y0))


def _assemble(vp: Viewport, pieces) -> ImageTile:
    canvas = np.zeros((vp.px_h, vp.px_w, 4), dtype=np.uint8)
    for (x0, y0, w, h), block in pieces:
        canvas[y0:y0 + h, x0:x0 + w] = block
    return ImageTile(vp.px_w, vp.px_h, canvas.tobytes())


def _run_tiles(vp: Viewport, tile_px: int, workers: int, fn) -> ImageTile:
    rects = list(_tile_rects(vp, tile_px))
    if workers <= 1 or len(rects) == 1:
        return _assemble(vp, [(r, fn(r)) for r in rects])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        blocks = list(pool.map(fn, rects))
    return _assemble(vp, zip(rects, blocks))


def _supersampled(vp: Viewport, tile_px: int, workers: int, supersample: int, fn) -> ImageTile:
    """Render at s x s the pixel density and box-average back down."""
    if supersample <= 1:
        return _run_tiles(vp, tile_px, workers, fn(vp))
    s = int(supersample)
    hi = Viewport(vp.center, vp.width, vp.px_w * s, vp.px_h * s)
    big = _run_tiles(hi, tile_px, workers, fn(hi)).rgba().astype(np.uint32)
    blocks = big.reshape(vp.px_h, s, vp.px_w, s, 4)
    avg = (blocks.sum(axis=(1, 3)) // (s * s)).astype(np.uint8)
    avg[..., 3] = 255
    return ImageTile(vp.px_w, vp.px_h, avg.tobytes())


def render_portrait(fid: FunctionId, vp: Viewport, cs: ColorScheme = PORTRAIT,
                    ep: EvalParams = DEFAULT_PARAMS, derivative: bool = False,
                    tile_px: int = 256, workers: int = 1,
                    supersample: int = 1) -> ImageTile:
    """Color the plane by f (or f' with derivative=True) at pixel centers."""
    if cs.tag is not SchemeTag.PORTRAIT:
        raise ValueError("render_portrait needs a PORTRAIT scheme")
    eff = _adapt_params(ep, vp)
    kernel = deriv_grid if derivative else value_grid

    def make(grid_vp: Viewport):
        def tile(rect):
            z = grid_vp.grid(rect)
            return _portrait_colors(kernel(fid, z, eff), cs)
        return tile

    return _supersampled(vp, tile_px, workers, supersample, make)


def _start_location(start: CriticalPoint | complex) -> complex:
    return start.location if isinstance(start, CriticalPoint) else complex(start)


def render_parameter_plane(fid: FunctionId, fam: FamilyKind,
                           start: CriticalPoint | complex, vp: Viewport,
                           cs: ColorScheme = ESCAPE_STEPS,
                           ip: IterationParams = DEFAULT_ITER,
                           ep: EvalParams = DEFAULT_PARAMS,
                           tile_px: int = 256, workers: int = 1,
                           supersample: int = 1) -> ImageTile:
    """Iterate the chosen start point for every pixel's c value."""
    if cs.tag is SchemeTag.PORTRAIT:
        raise ValueError("parameter planes need an orbit scheme")
    eff = _adapt_params(ep, vp)
    z0 = _start_location(start)

    def make(grid_vp: Viewport):
        def tile(rect):
            c = grid_vp.grid(rect)
            res = orbit_batch(fid, fam, c, np.full_like(c, z0), ip, eff)
            return _orbit_colors(res, cs, ip.max_iter)
        return tile

    return _supersampled(vp, tile_px, workers, supersample, make)


def render_julia(fid: FunctionId, fam: FamilyKind, c: complex, vp: Viewport,
                 cs: ColorScheme = ESCAPE_STEPS,
                 ip: IterationParams = DEFAULT_ITER,
                 ep: EvalParams = DEFAULT_PARAMS,
                 tile_px: int = 256, workers: int = 1,
                 supersample: int = 1) -> ImageTile:
    """Iterate every pixel's z0 under the fixed parameter c."""
    if cs.tag is SchemeTag.PORTRAIT:
        raise ValueError("julia renders need an orbit scheme")
    eff = _adapt_params(ep, vp)

    def make(grid_vp: Viewport):
        def tile(rect):
            z0 = grid_vp.grid(rect)
            res = orbit_batch(fid, fam, np.full_like(z0, complex(c)), z0, ip, eff)
            return _orbit_colors(res, cs, ip.max_iter)
        return tile

    return _supersampled(vp, tile_px, workers, supersample, make)


# -------------------------------------------------------------- overlays

class MarkerKind(enum.Enum):
    CRITICAL = "critical"
    PRINCIPAL = "principal"
    FIXED_VALUE = "fixed-value"
    ZERO = "zero"


_MARKER_COLORS = {
    MarkerKind.CRITICAL: (255, 255, 255),
    MarkerKind.PRINCIPAL: (255, 220, 0),
    MarkerKind.FIXED_VALUE: (0, 255, 255),
    MarkerKind.ZERO: (255, 140, 0),
}

# 5x5 glyph offsets, one distinct shape per marker kind
_GLYPHS = {
    MarkerKind.CRITICAL: [(d, d) for d in range(-2, 3)] + [(d, -d) for d in range(-2, 3)],
    MarkerKind.PRINCIPAL: [(d, 0) for d in range(-2, 3)] + [(0, d) for d in range(-2, 3)],
    MarkerKind.FIXED_VALUE: [(dx, dy) for dx in range(-2, 3) for dy in range(-2, 3)
                             if max(abs(dx), abs(dy)) == 2],
    MarkerKind.ZERO: [(dx, dy) for dx in range(-2, 3) for dy in range(-2, 3)
                      if abs(dx) + abs(dy) == 2],
}


def render_overlays(tile: ImageTile, vp: Viewport,
                    markers: list[tuple[complex, MarkerKind]]) -> ImageTile:
    """Stamp marker glyphs at plane positions; out-of-view markers skipped."""
    if not markers:
        return ImageTile(tile.px_w, tile.px_h, tile.pixels)
    canvas = tile.rgba().copy()
    for pos, kind in markers:
        i, j = vp.to_pixel(pos)
        if not (0 <= i < vp.px_w and 0 <= j < vp.px_h):
            continue
        color = _MARKER_COLORS[kind]
        for dx, dy in _GLYPHS[kind]:
            x, y = i + dx, j + dy
            if 0 <= x < vp.px_w and 0 <= y < vp.px_h:
                canvas[y, x, :3] = color
                canvas[y, x, 3] = 255
    return ImageTile(tile.px_w, tile.px_h, canvas.tobytes())
