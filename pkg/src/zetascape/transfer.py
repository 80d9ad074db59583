"""Transfer-function analysis of a critical point.

For a critical point c_r with value v_r = f(c_r), the transfer function
    T(c) = f(v_r + c) - v_r        (additive family)
    T(c) = f(c v_r) - v_r          (multiplicative family)
vanishes exactly at the parameters c for which the critical value is a
fixed point of f_c.  The principal point c_p = c_r - v_r (additive) or
c_r / v_r (multiplicative) is always such a root, and is superattracting
since f'(c_r) = 0.  A root c induces the fixed point w = v_r + c
(additive) or w = c v_r (multiplicative); the classification derivative
is f'(w), scaled by c in the multiplicative case: attracting roots seat
satellite Mandelbrot sets, repelling ones are Misiurewicz points.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .criticals import CriticalPoint
from .dynamics import FamilyKind, PointClass
from .errors import PoleError
from .functions import deriv_grid, pole_of, value_grid
from .params import EvalParams
from .render import Viewport
from .zetafn import DEFAULT_PARAMS, POLE_TOL

_CLASS_TOL = 1e-6
_ROOT_CERT = 1e-8
_DEDUPE = 1e-6


@dataclass(frozen=True)
class FixedValue:
    c: complex
    fixed_point: complex
    deriv_mod: float
    cls: PointClass

    def as_dict(self) -> dict:
        return {
            "c_re": self.c.real, "c_im": self.c.imag,
            "fixed_re": self.fixed_point.real, "fixed_im": self.fixed_point.imag,
            "deriv_mod": self.deriv_mod,
            "class": self.cls.value,
        }


@dataclass(frozen=True)
class TransferAnalysis:
    critical: CriticalPoint
    family: FamilyKind
    principal: complex
    fixed_values: tuple[FixedValue, ...]

    def as_dict(self) -> dict:
        return {
            "critical": self.critical.as_dict(),
            "family": self.family.value,
            "principal_re": self.principal.real,
            "principal_im": self.principal.imag,
            "fixed_values": [fv.as_dict() for fv in self.fixed_values],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def principal_point(cp: CriticalPoint, fam: FamilyKind) -> complex:
    """c_r - v_r (additive) or c_r / v_r (multiplicative)."""
    if fam is FamilyKind.ADDITIVE:
        return cp.location - cp.value
    if cp.value == 0:
        raise ValueError(
            f"critical point {cp.label} has zero critical value; the "
            "multiplicative principal point is undefined (critical is a zero)")
    return cp.location / cp.value


def _transfer_arg(cp: CriticalPoint, fam: FamilyKind, c: np.ndarray) -> np.ndarray:
    return cp.value + c if fam is FamilyKind.ADDITIVE else c * cp.value


def transfer_value_grid(cp: CriticalPoint, fam: FamilyKind, c: np.ndarray,
                        ep: EvalParams = DEFAULT_PARAMS) -> np.ndarray:
    return value_grid(cp.fid, _transfer_arg(cp, fam, np.asarray(c, dtype=np.complex128)), ep) - cp.value


def transfer_value(cp: CriticalPoint, fam: FamilyKind, c: complex,
                   ep: EvalParams = DEFAULT_PARAMS) -> complex:
    """T(c) for the critical point's own base function."""
    arg = complex(_transfer_arg(cp, fam, np.array([c], dtype=np.complex128))[0])
    pole = pole_of(cp.fid)
    if pole is not None and abs(arg - pole) < POLE_TOL:
        raise PoleError(f"transfer argument hits the pole at {pole}")
    return complex(transfer_value_grid(cp, fam, np.array([c]), ep)[0])


def _classify(mod: float) -> PointClass:
    if mod < 1.0 - _CLASS_TOL:
        return PointClass.ATTRACTING
    if mod > 1.0 + _CLASS_TOL:
        return PointClass.REPELLING
    return PointClass.INDIFFERENT


def find_fixed_values(cp: CriticalPoint, fam: FamilyKind, region: Viewport,
                      ep: EvalParams = DEFAULT_PARAMS,
                      grid_px: int = 256) -> TransferAnalysis:
    """Scan T over the region, polish the near-zeros, classify each root.

    Root candidates are strict local minima of |T| on the sample grid -
    a grid of exact zeros (the plateau, where T underflows to 0 across
    the whole region) yields no strict minimum and hence no candidates,
    which leaves just the principal point, appended when inside.
    """
    scan_vp = Viewport(region.center, region.width, grid_px,
                       max(2, int(round(grid_px * region.px_h / region.px_w))))
    cgrid = scan_vp.grid()
    tv = np.abs(transfer_value_grid(cp, fam, cgrid, ep))
    tv = np.where(np.isfinite(tv), tv, np.inf)

    inner = tv[1:-1, 1:-1]
    is_min = (
        (inner < tv[:-2, 1:-1]) & (inner < tv[2:, 1:-1])
        & (inner < tv[1:-1, :-2]) & (inner < tv[1:-1, 2:])
        & (inner < tv[:-2, :-2]) & (inner < tv[:-2, 2:])
        & (inner < tv[2:, :-2]) & (inner < tv[2:, 2:])
        & (inner < 0.5)
    )
    jj, ii = np.nonzero(is_min)
    seeds = cgrid[jj + 1, ii + 1]

    # Newton on T: T'(c) = f'(w) (additive) or v_r f'(w) (multiplicative)
    roots = seeds.astype(np.complex128)
    for _ in range(30):
        if roots.size == 0:
            break
        w = _transfer_arg(cp, fam, roots)
        t = value_grid(cp.fid, w, ep) - cp.value
        d = deriv_grid(cp.fid, w, ep)
        if fam is FamilyKind.MULTIPLICATIVE:
            d = d * cp.value
        with np.errstate(all="ignore"):
            step = t / d
        step[~np.isfinite(step.real) | ~np.isfinite(step.imag)] = 0.0
        step[np.abs(step) > 1.0] = 0.0
        roots = roots - step

    half_w = 0.5 * region.width
    half_h = 0.5 * region.height
    kept: list[complex] = []
    if roots.size:
        resid = np.abs(transfer_value_grid(cp, fam, roots, ep))
        for r, res in zip(roots, resid):
            r = complex(r)
            if res >= _ROOT_CERT:
                continue
            if abs(r.real - region.center.real) > half_w + 1e-9:
                continue
            if abs(r.imag - region.center.imag) > half_h + 1e-9:
                continue
            if not any(abs(r - u) < _DEDUPE for u in kept):
                kept.append(r)

    principal = principal_point(cp, fam)
    if (abs(principal.real - region.center.real) <= half_w
            and abs(principal.imag - region.center.imag) <= half_h):
        # the closed form is exact; snap any scan root that found the same
        # point (Newton stops at |T| < 1e-8, a few 1e-8 in c) onto it
        kept = [principal if abs(u - principal) < _DEDUPE else u for u in kept]
        if not any(u == principal for u in kept):
            kept.append(principal)

    kept.sort(key=lambda w: (w.imag, w.real))
    fixed = []
    for c in kept:
        w = complex(_transfer_arg(cp, fam, np.array([c]))[0])
        d = complex(deriv_grid(cp.fid, np.array([w]), ep)[0])
        if fam is FamilyKind.MULTIPLICATIVE:
            d = c * d
        mod = abs(d)
        fixed.append(FixedValue(c, w, mod, _classify(mod)))
    return TransferAnalysis(cp, fam, principal, tuple(fixed))
