"""Orbit iteration for the additive f(z)+c and multiplicative c*f(z)
families: escape / periodicity / boundedness classification and cycle
multipliers.

One vectorized kernel serves both the scalar probe (iterate_orbit) and
the tile renderer, so a pixel's class always equals the probe's answer
for the same numbers.

Plateau handling (Dirichlet-series functions only): once an iterate has
Re(z) > plateau_re the series value is 1 to machine precision, so instead
of summing at huge arguments the step is resolved analytically - additive
orbits lock at the fixed point c + 1, multiplicative orbits map to c and
continue.

A periodicity candidate |z_n - z_{n-p}| < eps_cycle is only accepted
after one confirming step in which the gap did not grow.  Without that,
an orbit placed within 1e-12 of a *repelling* fixed point (exactly what
transfer-function root polishing produces) would be misreported as
locked for the twenty-odd steps the deviation needs to climb above eps.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .functions import deriv_grid, has_plateau, pole_of, value_grid
from .params import EvalParams, FunctionId
from .zetafn import DEFAULT_PARAMS

_POLE_HIT = 1e-12


class FamilyKind(enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


class OrbitStatus(enum.Enum):
    ESCAPED = "escaped"
    PERIODIC = "periodic"
    BOUNDED = "bounded"  # survived max_iter without escape or lock


class PointClass(enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class IterationParams:
    max_iter: int = 256
    escape_radius: float = 1e6
    plateau_re: float = 50.0
    eps_cycle: float = 1e-9
    history: int = 32

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.history < 1:
            raise ValueError("history must be >= 1")
        if self.history > self.max_iter:
            # window longer than the orbit is useless; clamp
            object.__setattr__(self, "history", self.max_iter)
        if self.eps_cycle <= 0 or self.escape_radius <= 0 or self.plateau_re <= 0:
            raise ValueError("eps_cycle, escape_radius, plateau_re must be positive")


DEFAULT_ITER = IterationParams()


@dataclass
class OrbitResult:
    status: OrbitStatus
    final: complex
    steps: int
    period: int | None = None
    steps_to_lock: int | None = None
    cycle: list[complex] | None = None
    trace: list[complex] | None = None
    multiplier: complex | None = None


# status codes used inside the vector kernel
_ACTIVE, _ESCAPED, _PERIODIC, _BOUNDED = 0, 1, 2, 3


def orbit_batch(fid: FunctionId, fam: FamilyKind, c: np.ndarray, z0: np.ndarray,
                ip: IterationParams = DEFAULT_ITER, ep: EvalParams = DEFAULT_PARAMS,
                record_trace: bool = False):
    """Iterate every (c_i, z0_i) pair; returns a dict of flat arrays.

    ``c`` and ``z0`` are broadcast against each other.  Output arrays:
    status (codes above), final, steps, period, lock (candidate step of
    the accepted periodicity).
    """
    c = np.asarray(c, dtype=np.complex128)
    z0 = np.asarray(z0, dtype=np.complex128)
    c, z0 = np.broadcast_arrays(c, z0)
    shape = c.shape
    c = c.ravel().copy()
    cur = z0.ravel().astype(np.complex128).copy()
    n_pts = cur.size

    status = np.zeros(n_pts, dtype=np.uint8)
    steps = np.zeros(n_pts, dtype=np.int32)
    period = np.zeros(n_pts, dtype=np.int32)
    lock = np.zeros(n_pts, dtype=np.int32)
    final = cur.copy()

    k_hist = ip.history
    hist = np.zeros((k_hist, n_pts), dtype=np.complex128)
    hist[0] = cur

    pend_p = np.zeros(n_pts, dtype=np.int32)
    pend_diff = np.zeros(n_pts, dtype=np.float64)
    pend_step = np.zeros(n_pts, dtype=np.int32)

    additive = fam is FamilyKind.ADDITIVE
    plateau = has_plateau(fid)
    pole = pole_of(fid)
    trace = [cur.copy()] if record_trace else None

    for n in range(1, ip.max_iter + 1):
        idx = np.flatnonzero(status == _ACTIVE)
        if idx.size == 0:
            break

        # 1) orbits sitting on a pole die (folded into Escaped)
        if pole is not None and idx.size:
            hit = np.abs(cur[idx] - pole) < _POLE_HIT
            if hit.any():
                died = idx[hit]
                status[died] = _ESCAPED
                steps[died] = n
                idx = idx[~hit]

        # 2) plateau resolution
        if plateau and idx.size:
            on_pl = cur[idx].real > ip.plateau_re
            if additive and on_pl.any():
                locked = idx[on_pl]
                status[locked] = _PERIODIC
                period[locked] = 1
                lock[locked] = n
                steps[locked] = n
                final[locked] = c[locked] + 1.0
                cur[locked] = final[locked]
                idx = idx[~on_pl]
                on_pl = np.zeros(idx.size, dtype=bool)
        else:
            on_pl = np.zeros(idx.size, dtype=bool)

        if idx.size:
            z = cur[idx]
            fval = np.empty_like(z)
            if plateau and on_pl.any():
                fval[on_pl] = 1.0
                off = ~on_pl
                if off.any():
                    fval[off] = value_grid(fid, z[off], ep)
            else:
                fval = value_grid(fid, z, ep)
            znext = fval + c[idx] if additive else c[idx] * fval

            # 3) escape / overflow
            finite = np.isfinite(znext.real) & np.isfinite(znext.imag)
            big = np.abs(znext) > ip.escape_radius
            if plateau:
                gone = ~finite | (big & (znext.real < ip.plateau_re))
            else:
                gone = ~finite | big
            if gone.any():
                died = idx[gone]
                status[died] = _ESCAPED
                steps[died] = n
                final[died] = np.where(finite[gone], znext[gone], cur[died])
                cur[died] = final[died]
                idx = idx[~gone]
                znext = znext[~gone]

        if idx.size:
            # 4) confirm pending periodicity candidates
            has_pend = pend_p[idx] > 0
            if has_pend.any():
                sel = idx[has_pend]
                p_sel = pend_p[sel]
                ref = hist[(n - p_sel) % k_hist, sel]
                d2 = np.abs(znext[has_pend] - ref)
                # accept only strictly shrinking gaps, or gaps within a few
                # ulps of zero (a bitwise-fixed cycle): a repelling point
                # leaks ulp by ulp and its quantized gap sequence can repeat
                # a value exactly, so plain non-expansion is not enough
                floor = 4.0 * np.finfo(np.float64).eps * (1.0 + np.abs(znext[has_pend]))
                ok = (d2 < ip.eps_cycle) & ((d2 <= floor) | (d2 < pend_diff[sel]))
                conf = sel[ok]
                if conf.size:
                    status[conf] = _PERIODIC
                    period[conf] = pend_p[conf]
                    lock[conf] = pend_step[conf]
                    steps[conf] = n
                pend_p[sel[~ok]] = 0

            cur[idx] = znext
            final[idx] = znext

            # 5) fresh candidate scan (smallest period first) on survivors
            scan = idx[(status[idx] == _ACTIVE) & (pend_p[idx] == 0)]
            if scan.size:
                zs = cur[scan]
                unmatched = np.ones(scan.size, dtype=bool)
                for p in range(1, min(n, k_hist) + 1):
                    if not unmatched.any():
                        break
                    d = np.abs(zs - hist[(n - p) % k_hist, scan])
                    cand = unmatched & (d < ip.eps_cycle)
                    if cand.any():
                        sel = scan[cand]
                        pend_p[sel] = p
                        pend_diff[sel] = d[cand]
                        pend_step[sel] = n
                        unmatched &= ~cand

        hist[n % k_hist] = cur
        if record_trace:
            trace.append(cur.copy())

    alive = status == _ACTIVE
    if alive.any():
        status[alive] = _BOUNDED
        steps[alive] = ip.max_iter
        final[alive] = cur[alive]
    out = {
        "status": status.reshape(shape),
        "final": final.reshape(shape),
        "steps": steps.reshape(shape),
        "period": period.reshape(shape),
        "lock": lock.reshape(shape),
    }
    if record_trace:
        out["trace"] = trace
    return out


def iterate_orbit(fid: FunctionId, fam: FamilyKind, c: complex, z0: complex,
                  ip: IterationParams = DEFAULT_ITER,
                  ep: EvalParams = DEFAULT_PARAMS,
                  want_trace: bool = True) -> OrbitResult:
    """Classify the orbit of z0 under z -> f(z)+c or z -> c f(z)."""
    if not (np.isfinite(c) and np.isfinite(z0)):
        raise ValueError("c and z0 must be finite")
    res = orbit_batch(fid, fam, np.array([c]), np.array([z0]), ip, ep,
                      record_trace=True)
    code = int(res["status"][0])
    final = complex(res["final"][0])
    steps = int(res["steps"][0])
    trace_pts = [complex(t[0]) for t in res["trace"]][: steps + 1]
    if trace_pts[-1] != final:
        trace_pts.append(final)

    if code == _ESCAPED:
        return OrbitResult(OrbitStatus.ESCAPED, final, steps,
                           trace=trace_pts if want_trace else None)
    if code == _PERIODIC:
        p = int(res["period"][0])
        cycle = trace_pts[-p:]
        # canonical rotation: largest-modulus member last
        j = int(np.argmax([abs(w) for w in cycle]))
        cycle = cycle[j + 1:] + cycle[: j + 1]
        mult = cycle_multiplier(fid, fam, c, cycle, ep)
        return OrbitResult(OrbitStatus.PERIODIC, final, steps, period=p,
                           steps_to_lock=int(res["lock"][0]), cycle=cycle,
                           trace=trace_pts if want_trace else None,
                           multiplier=mult)
    return OrbitResult(OrbitStatus.BOUNDED, final, steps,
                       trace=trace_pts if want_trace else None)


def cycle_multiplier(fid: FunctionId, fam: FamilyKind, c: complex,
                     cycle: list[complex] | tuple[complex, ...],
                     ep: EvalParams = DEFAULT_PARAMS) -> complex:
    """Chain-rule product of f_c' around the cycle; |.| < 1 certifies
    the cycle attracting."""
    if not len(cycle):
        raise ValueError("cycle must be nonempty")
    pole = pole_of(fid)
    pts = np.asarray(cycle, dtype=np.complex128)
    if pole is not None and np.any(np.abs(pts - pole) < _POLE_HIT):
        raise PoleError("cycle passes through a pole")
    derivs = deriv_grid(fid, pts, ep)
    if fam is FamilyKind.MULTIPLICATIVE:
        derivs = c * derivs
    return complex(np.prod(derivs))


def classify_point(v: complex, fid: FunctionId, fam: FamilyKind, c: complex,
                   ep: EvalParams = DEFAULT_PARAMS,
                   tol: float = 1e-6) -> PointClass:
    """Attracting/repelling/indifferent label for a fixed point v of f_c."""
    fv = complex(value_grid(fid, np.array([v], dtype=np.complex128), ep)[0])
    fcv = fv + c if fam is FamilyKind.ADDITIVE else c * fv
    if abs(fcv - v) > 1e-6:
        warnings.warn(f"classify_point: |f_c(v) - v| = {abs(fcv - v):.3g} > 1e-6; "
                      "v is not actually fixed", stacklevel=2)
    d = complex(deriv_grid(fid, np.array([v], dtype=np.complex128), ep)[0])
    if fam is FamilyKind.MULTIPLICATIVE:
        d = c * d
    m = abs(d)
    if m < 1.0 - tol:
        return PointClass.ATTRACTING
    if m > 1.0 + tol:
        return PointClass.REPELLING
    return PointClass.INDIFFERENT
