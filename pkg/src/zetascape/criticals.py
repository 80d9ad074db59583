"""Locating critical points (zeros of f') and nontrivial zeros.

The 'real' criticals interlace the trivial zeros along the negative
axis; the 'unreal' ones sit just right of the critical line between
consecutive nontrivial zeros.  Labels follow the integer-part naming
convention: z-15 for the critical at -15.3387, z95 for the one at
0.7806 + 95.2930i, z1000 for the conventional plateau stand-in.
"""
from __future__ import annotations

import enum
import json
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import UnsupportedFunctionError
from .functions import deriv_grid, has_plateau, value_grid
from .gammafn import log_gamma_grid
from .params import EvalParams, FunctionId, FunctionTag
from .zetafn import DEFAULT_PARAMS, zeta_deriv_grid, zeta_grid

_NEWTON_STEPS = 50
_DDERIV_STEP = 1e-5


class CriticalKind(enum.Enum):
    REAL_AXIS = "real-axis"
    NEAR_CRITICAL_LINE = "near-critical-line"
    ASYMPTOTIC_QUASI = "asymptotic-quasi"


@dataclass(frozen=True)
class CriticalPoint:
    location: complex
    value: complex
    kind: CriticalKind
    label: str
    fid: FunctionId

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "re": self.location.real,
            "im": self.location.imag,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "kind": self.kind.value,
        }


@dataclass(frozen=True)
class ZeroLocation:
    rho: complex
    index: int  # 1-based ordinal by increasing Im within the searched range

    def as_dict(self) -> dict:
        return {"index": self.index, "re": self.rho.real, "im": self.rho.imag}


def catalog_json(points) -> str:
    return json.dumps([p.as_dict() for p in points], indent=2)


def _second_deriv(fid: FunctionId, z: np.ndarray, ep: EvalParams) -> np.ndarray:
    h = _DDERIV_STEP
    return (deriv_grid(fid, z + h, ep) - deriv_grid(fid, z - h, ep)) / (2.0 * h)


def _newton_on_deriv(fid: FunctionId, seeds: np.ndarray, ep: EvalParams) -> np.ndarray:
    """Batched Newton for f'(z) = 0; returns final iterates (unfiltered)."""
    z = seeds.astype(np.complex128).copy()
    active = np.ones(z.size, dtype=bool)
    for _ in range(_NEWTON_STEPS):
        if not active.any():
            break
        zi = z[active]
        f1 = deriv_grid(fid, zi, ep)
        f2 = _second_deriv(fid, zi, ep)
        with np.errstate(all="ignore"):
            dz = f1 / f2
        bad = ~np.isfinite(dz.real) | ~np.isfinite(dz.imag) | (np.abs(dz) > 2.0)
        dz[bad] = 0.0
        z[active] = zi - dz
        conv = np.abs(dz) < 1e-13 * np.maximum(1.0, np.abs(zi))
        drop = conv | bad
        mask = active.copy()
        mask[active] = ~drop
        active = mask
    return z


def _dedupe(points: np.ndarray, tol: float = 1e-6) -> list[complex]:
    out: list[complex] = []
    for w in points:
        w = complex(w)
        if not any(abs(w - u) < tol for u in out):
            out.append(w)
    return out


def _unique_labels(base: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for lab in base:
        if lab not in seen:
            seen[lab] = 0
            out.append(lab)
        else:
            seen[lab] += 1
            out.append(lab + "bcdefgh"[seen[lab] - 1])
    return out


def find_real_criticals(fid: FunctionId, x_min: float, x_max: float,
                        ep: EvalParams = DEFAULT_PARAMS) -> list[CriticalPoint]:
    """Zeros of f' on [x_min, x_max] of the real axis, sorted by
    decreasing x.  Scans at step 0.05, brackets sign changes, then
    bisection plus a Newton polish."""
    if x_max < x_min:
        raise ValueError("x_max must be >= x_min")
    if fid.tag is FunctionTag.ZETA and x_max > 0:
        raise ValueError("real criticals of zeta live on the negative axis")
    xs = np.arange(x_min, x_max + 0.05, 0.05)
    xs = xs[xs <= x_max + 1e-12]
    vals = deriv_grid(fid, xs.astype(np.complex128), ep).real
    sign = np.sign(vals)
    flip = np.flatnonzero(sign[:-1] * sign[1:] < 0)
    lo = xs[flip].copy()
    hi = xs[flip + 1].copy()
    flo = vals[flip].copy()
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        fm = deriv_grid(fid, mid.astype(np.complex128), ep).real
        left = flo * fm < 0
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
        flo = np.where(left, flo, fm)
    roots = _newton_on_deriv(fid, (0.5 * (lo + hi)).astype(np.complex128), ep)
    roots = roots.real
    keep = (roots >= x_min - 1e-9) & (roots <= x_max + 1e-9)
    final = np.abs(deriv_grid(fid, roots.astype(np.complex128), ep)) < 1e-8
    locs = sorted(_dedupe(roots[keep & final]), key=lambda w: -w.real)
    values = value_grid(fid, np.array(locs, dtype=np.complex128), ep) if locs else []
    labels = _unique_labels([f"{fid.prefix}{int(w.real)}" for w in locs])
    return [CriticalPoint(complex(w.real, 0.0), complex(v), CriticalKind.REAL_AXIS, lab, fid)
            for w, v, lab in zip(locs, values, labels)]


def find_unreal_criticals(fid: FunctionId, t_min: float, t_max: float,
                          ep: EvalParams = DEFAULT_PARAMS,
                          re_range: tuple[float, float] = (0.0, 3.0),
                          re_step: float = 0.25, im_step: float = 0.5) -> list[CriticalPoint]:
    """Criticals near the critical line with Im in [t_min, t_max]:
    Newton on f' seeded from a grid, deduplicated, labeled by floor(Im)."""
    if not (0 < t_min < t_max):
        raise ValueError("need 0 < t_min < t_max")
    res = np.arange(re_range[0], re_range[1] + re_step / 2, re_step)
    ims = np.arange(t_min, t_max + im_step / 2, im_step)
    seeds = (res[:, None] + 1j * ims[None, :]).ravel()
    roots = _newton_on_deriv(fid, seeds, ep)
    good = (np.abs(deriv_grid(fid, roots, ep)) < 1e-8)
    good &= (roots.imag >= t_min) & (roots.imag <= t_max)
    good &= (roots.real > re_range[0] - 1.0) & (roots.real < re_range[1] + 1.0)
    locs = sorted(_dedupe(roots[good]), key=lambda w: w.imag)
    values = value_grid(fid, np.array(locs, dtype=np.complex128), ep) if locs else []
    labels = _unique_labels([f"{fid.prefix}{math.floor(w.imag)}" for w in locs])
    pts = [CriticalPoint(w, complex(v), CriticalKind.NEAR_CRITICAL_LINE, lab, fid)
           for w, v, lab in zip(locs, values, labels)]
    if fid.tag is FunctionTag.ZETA:
        # zeta' has ~ln2/(2 pi) fewer zeros per unit height than zeta, so
        # "one critical per zero gap" over-counts; warn only below that
        # density estimate (with slack) - a real hint of a missed root.
        zeros = find_zeros(fid, t_min, t_max, ep)
        expect = (len(zeros) - 1) - math.log(2) / (2 * math.pi) * (t_max - t_min)
        if len(zeros) >= 2 and len(pts) < expect - 2:
            warnings.warn(
                f"found {len(pts)} criticals but ~{expect:.0f} expected from "
                f"{len(zeros)} zeros in [{t_min}, {t_max}]; a critical may "
                "have been missed (try a finer seed grid)", stacklevel=2)
    return pts


def _siegel_theta(t: np.ndarray) -> np.ndarray:
    lg = log_gamma_grid(0.25 + 0.5j * t)
    return lg.imag - 0.5 * t * math.log(math.pi)


def _z_boundary(t: np.ndarray, ep: EvalParams) -> np.ndarray:
    """Re of the phase-rotated zeta along the critical line (real up to
    rounding); its sign changes bracket the nontrivial zeros."""
    zline = 0.5 + 1j * t
    rot = np.exp(1j * _siegel_theta(t))
    return (rot * zeta_grid(zline, ep)).real


def find_zeros(fid: FunctionId, t_min: float, t_max: float,
               ep: EvalParams = DEFAULT_PARAMS, grid_step: float = 0.2) -> list[ZeroLocation]:
    """Nontrivial zeros with Im in [t_min, t_max], by sign changes of the
    rotated boundary function plus a Newton polish on zeta in the plane."""
    if fid.tag not in (FunctionTag.ZETA, FunctionTag.ETA, FunctionTag.XI):
        raise UnsupportedFunctionError(f"zero scan not supported for {fid}")
    if not (0 <= t_min < t_max):
        raise ValueError("need 0 <= t_min < t_max")
    lo = max(t_min, 1.0)
    ts = np.arange(lo, t_max + grid_step, grid_step)
    vals = _z_boundary(ts, ep)
    flip = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    a = ts[flip].copy()
    b = ts[flip + 1].copy()
    fa = vals[flip].copy()
    for _ in range(40):
        mid = 0.5 * (a + b)
        fm = _z_boundary(mid, ep)
        left = fa * fm < 0
        b = np.where(left, mid, b)
        a = np.where(left, a, mid)
        fa = np.where(left, fa, fm)
    roots = (0.5 + 1j * 0.5 * (a + b)).astype(np.complex128)
    for _ in range(8):
        fz = zeta_grid(roots, ep)
        dz = zeta_deriv_grid(roots, ep)
        with np.errstate(all="ignore"):
            step = fz / dz
        step[~np.isfinite(step.real) | ~np.isfinite(step.imag)] = 0.0
        roots = roots - step
    out = []
    seen: list[complex] = []
    order = np.argsort(roots.imag)
    for w in roots[order]:
        w = complex(w)
        if any(abs(w - u) < 1e-6 for u in seen):
            continue
        if not (t_min - 1e-9 <= w.imag <= t_max + 1e-9):
            continue
        if abs(complex(zeta_grid(np.array([w]), ep)[0])) > 1e-8:
            continue
        if abs(w.real - 0.5) > 1e-6:
            warnings.warn(f"zero off the critical line? {w}", stacklevel=2)
        seen.append(w)
        out.append(ZeroLocation(w, len(out) + 1))
    return out


def quasi_critical(fid: FunctionId, ep: EvalParams = DEFAULT_PARAMS) -> CriticalPoint:
    """The conventional plateau stand-in at 1000 + 0i."""
    if not has_plateau(fid):
        raise UnsupportedFunctionError(
            f"{fid} has no right-half-plane plateau; no quasi-critical point")
    loc = 1000.0 + 0.0j
    val = complex(value_grid(fid, np.array([loc]), ep)[0])
    return CriticalPoint(loc, val, CriticalKind.ASYMPTOTIC_QUASI,
                         f"{fid.prefix}1000", fid)


@lru_cache(maxsize=256)
def _resolve_cached(fid: FunctionId, label: str) -> CriticalPoint | None:
    prefix = fid.prefix
    if not label.startswith(prefix):
        return None
    try:
        n = int(label[len(prefix):])
    except ValueError:
        return None
    if n == 1000:
        try:
            return quasi_critical(fid)
        except UnsupportedFunctionError:
            return None
    if n < 0:
        cands = find_real_criticals(fid, n - 1.0, min(n + 1.0, 0.0))
        for p in cands:
            if p.label == label:
                return p
        return None
    cands = find_unreal_criticals(fid, max(float(n), 1e-6), n + 1.0)
    for p in cands:
        if p.label == label:
            return p
    return None


def resolve_critical_label(fid: FunctionId, label: str) -> CriticalPoint:
    """Map a catalog label (z-15, z95, z1000) to its CriticalPoint.

    Raises KeyError for labels that do not resolve.
    """
    pt = _resolve_cached(fid, label.strip())
    if pt is None:
        raise KeyError(f"unknown critical label {label!r} for {fid}")
    return pt
