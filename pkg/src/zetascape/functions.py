"""Dispatch from FunctionId to value/derivative kernels.

The Dirichlet-series functions (zeta, eta, L) share the far-right
plateau where the series heads to 1; the dynamics engine exploits that
instead of summing the series at huge arguments.
"""
from __future__ import annotations

import numpy as np

# note: import the names, not the module - the package re-exports a
# `characters` function that shadows the submodule attribute
from .characters import characters as character_tables
from .characters import dirichlet_l_deriv_grid, dirichlet_l_grid
from . import zetafn
from .errors import PoleError
from .params import EvalParams, FunctionId, FunctionTag
from .zetafn import DEFAULT_PARAMS, POLE_TOL


def has_plateau(fid: FunctionId) -> bool:
    """True for the Dirichlet-series functions, whose value is 1 to
    machine precision once Re(z) is large."""
    return fid.tag in (FunctionTag.ZETA, FunctionTag.ETA, FunctionTag.DIRICHLET_L)


def pole_of(fid: FunctionId) -> complex | None:
    """Location of the simple pole, if the function has one."""
    if fid.tag is FunctionTag.ZETA:
        return 1.0 + 0.0j
    if fid.tag is FunctionTag.DIRICHLET_L:
        tables = character_tables(fid.modulus)
        if not 1 <= fid.char_index <= len(tables):
            raise ValueError(f"char_index {fid.char_index} out of range for q={fid.modulus}")
        if tables[fid.char_index - 1].is_principal:
            return 1.0 + 0.0j
    return None


def value_grid(fid: FunctionId, z: np.ndarray, p: EvalParams = DEFAULT_PARAMS) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    tag = fid.tag
    if tag is FunctionTag.ZETA:
        return zetafn.zeta_grid(z, p)
    if tag is FunctionTag.ETA:
        return zetafn.eta_grid(z, p)
    if tag is FunctionTag.XI:
        return zetafn.xi_grid(z, p)
    if tag is FunctionTag.DIRICHLET_L:
        return dirichlet_l_grid(fid, z, p)
    if tag is FunctionTag.ROSETTA:
        return z * np.exp(-z)
    if tag is FunctionTag.QUADRATIC:
        return z * z
    raise ValueError(f"unhandled function {fid}")


def deriv_grid(fid: FunctionId, z: np.ndarray, p: EvalParams = DEFAULT_PARAMS) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    tag = fid.tag
    if tag is FunctionTag.ZETA:
        return zetafn.zeta_deriv_grid(z, p)
    if tag is FunctionTag.ETA:
        return zetafn.eta_deriv_grid(z, p)
    if tag is FunctionTag.XI:
        return zetafn.xi_deriv_grid(z, p)
    if tag is FunctionTag.DIRICHLET_L:
        return dirichlet_l_deriv_grid(fid, z, p)
    if tag is FunctionTag.ROSETTA:
        return (1.0 - z) * np.exp(-z)
    if tag is FunctionTag.QUADRATIC:
        return 2.0 * z
    raise ValueError(f"unhandled function {fid}")


def eval_function(fid: FunctionId, z: complex, p: EvalParams = DEFAULT_PARAMS) -> complex:
    """f(z) for the named base function; raises PoleError at a pole."""
    pole = pole_of(fid)
    if pole is not None and abs(z - pole) < POLE_TOL:
        raise PoleError(f"{fid} pole at z = {pole}")
    return complex(value_grid(fid, np.array([z], dtype=np.complex128), p)[0])


def eval_derivative(fid: FunctionId, z: complex, p: EvalParams = DEFAULT_PARAMS) -> complex:
    """f'(z), term-wise or finite-difference per function."""
    pole = pole_of(fid)
    if pole is not None and abs(z - pole) < POLE_TOL:
        raise PoleError(f"{fid} pole at z = {pole}")
    return complex(deriv_grid(fid, np.array([z], dtype=np.complex128), p)[0])
