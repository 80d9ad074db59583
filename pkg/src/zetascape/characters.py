"""Dirichlet characters and L-functions.

Character tables are built from the cyclic decomposition of (Z/qZ)*:
one factor per odd prime power (smallest primitive root, CRT-lifted to
mod q) plus the usual {-1, 5} pair for 2^k, k >= 3.  Factors are sorted
by their lifted generator, characters are indexed lexicographically by
exponent tuple, so index 1 is always the principal character.  A label
like L(5, 2) refers to position k = 2 in this order for q = 5.

L(z, chi) is continued to the plane through the Hurwitz decomposition
L(z, chi) = q^-z sum_a chi(a) zeta_H(z, a/q), with zeta_H evaluated by
Euler-Maclaurin.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import PoleError
from .params import EvalParams, FunctionId, FunctionTag
from .zetafn import DEFAULT_PARAMS, POLE_TOL

# B_2 .. B_30 as exact rationals; 15 correction terms for Euler-Maclaurin.
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6),
    Fraction(-23749461029, 870), Fraction(8615841276005, 14322),
]
_EM_TERMS = 15
_EM_SHIFT = 20


@dataclass(frozen=True)
class CharacterTable:
    modulus: int
    values: tuple[complex, ...]  # chi(0) .. chi(q-1)
    order: int
    index: int                   # 1-based position in the enumeration

    @property
    def is_principal(self) -> bool:
        return self.index == 1

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]


def _factorize(q: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= q:
        if q % d == 0:
            e = 0
            while q % d == 0:
                q //= d
                e += 1
            out.append((d, e))
        d += 1
    if q > 1:
        out.append((q, 1))
    return out


def _element_order(g: int, m: int, group_order: int) -> int:
    order = group_order
    for p, _ in _factorize(group_order):
        while order % p == 0 and pow(g, order // p, m) == 1:
            order //= p
    return order


def _smallest_primitive_root(m: int, phi: int) -> int:
    for g in range(2, m):
        if math.gcd(g, m) != 1:
            continue
        if _element_order(g, m, phi) == phi:
            return g
    raise ValueError(f"no primitive root mod {m}")


def _cyclic_factors(q: int) -> list[tuple[int, int]]:
    """(generator lifted to mod q, order) pairs, sorted by generator."""
    factors: list[tuple[int, int]] = []
    for p, e in _factorize(q):
        pe = p ** e
        rest = q // pe
        def lift(g: int) -> int:
            if rest == 1:
                return g % q
            # x = g mod pe, x = 1 mod rest
            inv = pow(pe, -1, rest)
            return (g + pe * ((1 - g) * inv % rest)) % q
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                factors.append((lift(3), 2))
            else:
                factors.append((lift(pe - 1), 2))           # -1
                factors.append((lift(5), 2 ** (e - 2)))     # 5
        else:
            phi = pe - pe // p
            g = _smallest_primitive_root(pe, phi)
            factors.append((lift(g), phi))
    factors.sort()
    return factors


@lru_cache(maxsize=128)
def characters(q: int) -> tuple[CharacterTable, ...]:
    """All Dirichlet characters mod q, principal first (index 1)."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    if q == 1:
        return (CharacterTable(1, (1.0 + 0.0j,), 1, 1),)

    factors = _cyclic_factors(q)
    gens = [g for g, _ in factors]
    orders = [d for _, d in factors]
    r = len(factors)

    # exponent tuple of every unit: n = prod g_i^{e_i} (mod q)
    exps: dict[int, tuple[int, ...]] = {}
    def fill(i: int, acc: int, tup: tuple[int, ...]) -> None:
        if i == r:
            exps[acc] = tup
            return
        val = acc
        for e in range(orders[i]):
            fill(i + 1, val, tup + (e,))
            val = (val * gens[i]) % q
    fill(0, 1 % q, ())

    phi = 1
    for d in orders:
        phi *= d
    assert len(exps) == phi, "unit group decomposition must be a direct product"

    tables = []
    # character index tuples in lexicographic order; all-zero first
    def char_tuples(i: int, tup: tuple[int, ...]):
        if i == r:
            yield tup
            return
        for a in range(orders[i]):
            yield from char_tuples(i + 1, tup + (a,))

    for idx, a_tup in enumerate(char_tuples(0, ()), start=1):
        vals = [0.0 + 0.0j] * q
        for n, e_tup in exps.items():
            # exact rational angle, then one cexp: keeps |chi| = 1 tight
            ang = Fraction(0)
            for a, e, d in zip(a_tup, e_tup, orders):
                ang += Fraction(a * e, d)
            ang %= 1
            if ang == 0:
                vals[n] = 1.0 + 0.0j
            else:
                vals[n] = cmath.exp(2j * cmath.pi * float(ang))
        # character order = lcm of d_i / gcd(a_i, d_i)
        order = 1
        for a, d in zip(a_tup, orders):
            o = d // math.gcd(a, d) if a else 1
            order = order * o // math.gcd(order, o)
        tables.append(CharacterTable(q, tuple(vals), order, idx))
    return tuple(tables)


def _em_shift(s: np.ndarray) -> int:
    tmax = float(np.max(np.abs(s.imag))) if s.size else 0.0
    return max(_EM_SHIFT, int(math.ceil(tmax / 3.0)))


def _hurwitz_em(s: np.ndarray, a: float, m: int, with_pole: bool) -> np.ndarray:
    """Euler-Maclaurin pieces of zeta_H(s, a) with shift m; the pole term
    (m+a)^(1-s)/(s-1) can be excluded so callers whose character sums
    cancel it analytically stay finite at s = 1."""
    out = np.zeros_like(s)
    for n in range(m):
        out += np.exp(-s * math.log(n + a))
    ma = m + a
    lma = math.log(ma)
    if with_pole:
        out += np.exp((1.0 - s) * lma) / (s - 1.0)
    out += 0.5 * np.exp(-s * lma)

    # sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * (m+a)^(-s-2j+1)
    rising = s.copy()
    fact = 1.0
    for j in range(1, _EM_TERMS + 1):
        fact *= (2 * j - 1) * (2 * j)
        coeff = float(_BERNOULLI[j - 1]) / fact
        out += coeff * rising * np.exp((-s - (2 * j - 1)) * lma)
        rising = rising * (s + (2 * j - 1)) * (s + 2 * j)
    return out


def hurwitz_zeta_grid(s: np.ndarray, a: float, p: EvalParams = DEFAULT_PARAMS) -> np.ndarray:
    """Hurwitz zeta_H(s, a), 0 < a <= 1, by Euler-Maclaurin.

    The base shift M = 20 follows the desk-verifiable recipe; for tall
    arguments M grows with |Im s| so the Bernoulli tail keeps converging.
    """
    s = np.asarray(s, dtype=np.complex128)
    return _hurwitz_em(s, a, _em_shift(s), with_pole=True)


def hurwitz_zeta(s: complex, a: float, p: EvalParams = DEFAULT_PARAMS) -> complex:
    if abs(s - 1.0) < POLE_TOL:
        raise PoleError("Hurwitz zeta pole at s = 1")
    return complex(hurwitz_zeta_grid(np.array([s], dtype=np.complex128), a, p)[0])


def dirichlet_l_grid(fid: FunctionId, z: np.ndarray,
                     p: EvalParams = DEFAULT_PARAMS) -> np.ndarray:
    """L(z, chi) over an array, continued via the Hurwitz decomposition."""
    if fid.tag is not FunctionTag.DIRICHLET_L:
        raise ValueError("dirichlet_l needs a DirichletL function id")
    q = fid.modulus
    tables = characters(q)
    if not 1 <= fid.char_index <= len(tables):
        raise ValueError(f"char_index {fid.char_index} out of range for q={q}")
    chi = tables[fid.char_index - 1]

    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros_like(z)
    m = _em_shift(z)
    if chi.is_principal:
        for a in range(1, q + 1):
            cv = chi(a)
            if cv != 0:
                out += cv * _hurwitz_em(z, a / q, m, with_pole=True)
        out *= np.exp(-z * math.log(q))
        out[np.abs(z - 1.0) < POLE_TOL] = complex(np.inf, np.inf)
        return out
    # Non-principal characters: the 1/(z-1) parts of the Hurwitz pieces
    # cancel because sum chi(a) = 0; summing them naively at z ~ 1 is
    # 0/0, so fold the cancellation in analytically:
    #   sum_a chi(a) (m+a')^(1-z)/(z-1) = -sum_a chi(a) expm1((1-z) L_a)/(1-z)
    pole_sum = np.zeros_like(z)
    u = 1.0 - z
    tiny = np.abs(u) < 1e-8
    for a in range(1, q + 1):
        cv = chi(a)
        if cv == 0:
            continue
        out += cv * _hurwitz_em(z, a / q, m, with_pole=False)
        la = math.log(m + a / q)
        with np.errstate(invalid="ignore", divide="ignore"):
            term = -np.expm1(u * la) / u
        # series limit at u -> 0: -(L + u L^2/2 + u^2 L^3/6)
        term = np.where(tiny, -(la + u * (la * la / 2.0 + u * la ** 3 / 6.0)), term)
        pole_sum += cv * term
    out += pole_sum
    out *= np.exp(-z * math.log(q))
    return out


def dirichlet_l(fid: FunctionId, z: complex, p: EvalParams = DEFAULT_PARAMS) -> complex:
    """L(z, chi); principal characters inherit the pole at z = 1."""
    q = fid.modulus
    tables = characters(q)
    if not 1 <= fid.char_index <= len(tables):
        raise ValueError(f"char_index {fid.char_index} out of range for q={q}")
    chi = tables[fid.char_index - 1]
    if chi.is_principal and abs(z - 1.0) < POLE_TOL:
        raise PoleError(f"L(z, principal mod {q}) pole at z = 1")
    return complex(dirichlet_l_grid(fid, np.array([z], dtype=np.complex128), p)[0])


def dirichlet_l_deriv_grid(fid: FunctionId, z: np.ndarray,
                           p: EvalParams = DEFAULT_PARAMS) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    h = 1j * p.deriv_step
    return (dirichlet_l_grid(fid, z + h, p) - dirichlet_l_grid(fid, z - h, p)) / (2.0 * h)
