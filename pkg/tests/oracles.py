"""Independent oracles and values frozen from them.

Everything here is derivable without touching the package's own
evaluation paths: mpmath (arbitrary precision, different algorithms),
direct series, and brute enumeration.  Frozen constants carry the oracle
that regenerates them; re-run `python tests/oracles.py` to re-derive.
"""
from __future__ import annotations

import math
from fractions import Fraction

# ----------------------------------------------------------------- frozen
# First nontrivial zero, bisection on mpmath.siegelz (the real rotated
# boundary function) then refined: t such that zeta(1/2 + i t) = 0.
FIRST_ZERO_T = 14.134725141734694

# Bisection zero count of siegelz on (0, 100), step 0.05.
ZEROS_BELOW_100 = 29

FIRST_TEN_ZEROS_T = [
    14.134725141734694, 21.022039638771556, 25.010857580145688,
    30.424876125859512, 32.935061587739190, 37.586178158825671,
    40.918719012147495, 43.327073280914999, 48.005150881167159,
    49.773832477672302,
]

# zero nearest Im = 613.59 (label z613), bisection on siegelz over [613, 614]
RHO_613_T = 613.5997786755

# sum_{k>=0} (-1)^k / (2k+1)^2 by direct alternating series (oracle below)
CATALAN = 0.9159655941772190

# zeros of zeta' on [-20, 0] with their critical values, mpmath findroot
# on mp.zeta(.., derivative=1) seeded from a 0.01-step sign scan
REAL_CRITICALS_TRUTH = [
    (-2.7172628292, 0.0091598901),
    (-4.9367621086, -0.0039864417),
    (-7.0745971453, 0.0041940020),
    (-9.1704931632, -0.0078508807),
    (-11.2412123335, 0.0227307480),
    (-13.2955745710, -0.0937173090),
    (-15.3387290730, 0.5205896800),
    (-17.3738833400, -3.7435668000),
    (-19.4031332600, 33.8083040000),
]

# selected unreal criticals (mpmath findroot on zeta')
Z23_LOC = 2.463161869 + 23.29832049j
Z31_LOC = 1.286496822 + 31.70825008j
Z95_LOC = 0.7806280047 + 95.29296827j
Z95_VAL = 0.42950119 + 0.077852198j
Z223_LOC = 2.509691398 + 223.402997838j

# true multiplicative principal points c_r / zeta(c_r) at the mpmath roots
Z31_PRINCIPAL_MULT = 2.51368399 + 44.78897830j
Z95_PRINCIPAL_MULT = 40.69677595 + 214.4921532j

# true zeta' (mpmath) at the rounded 3-cycle points that accompany the
# -0.0135 chain-rule product anchor; the derivative values quoted with
# those points do not match these
DZ_AT_QUOTED = {
    -17.8120: -8.5165863,
    -19.8882: 98.970534,
    -4.9145: 2.0467905e-4,
}

# parameter for which the attracting 3-cycle through the z-4 basin has
# chain-rule multiplier exactly -0.0135 (bisection on the multiplier as a
# function of c; cycle from 600 mpmath iterations + findroot on f^3 - z)
FIG15_C = -17.8080065114554
FIG15_CYCLE = (-4.93501559979, -17.8119929391, -19.8884203745)

# attracting fixed point of zeta(z) + 0 (mpmath findroot on zeta(z) - z)
ALPHA = -0.295905005575
ALPHA_DERIV_MOD = 0.51273792

# Julia escape probe: zeta(-29.6875) = -2.7591782e7 (mpmath), so the
# additive c=0 orbit from -29.6875 exceeds radius 1e6 leftward at step 1.
ESCAPE_PROBE_Z0 = -29.6875


# ---------------------------------------------------------------- oracles

def catalan_series(terms: int = 60000) -> float:
    """Direct alternating series with one tail-averaging step."""
    s = math.fsum((-1.0) ** k / (2 * k + 1) ** 2 for k in range(terms))
    s_next = s + (-1.0) ** terms / (2 * terms + 1) ** 2
    return 0.5 * (s + s_next)


def farey_brute(n: int) -> list[Fraction]:
    """All reduced fractions in [0, 1] with denominator <= n, sorted."""
    vals = {Fraction(0, 1), Fraction(1, 1)}
    for d in range(1, n + 1):
        for k in range(d + 1):
            vals.add(Fraction(k, d))
    return sorted(vals)


def totient_sum_length(n: int) -> int:
    """|F_n| = 1 + sum_{k<=n} phi(k)."""
    def phi(k: int) -> int:
        return sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1)
    return 1 + sum(phi(k) for k in range(1, n + 1))


def zero_by_bisection(t_lo: float, t_hi: float, steps: int = 80) -> float:
    """Bisection on the real rotated boundary function (mpmath.siegelz)."""
    import mpmath as mp
    f = mp.siegelz
    a, b = mp.mpf(t_lo), mp.mpf(t_hi)
    fa = f(a)
    assert mp.sign(fa) != mp.sign(f(b)), "no sign change in bracket"
    for _ in range(steps):
        m = (a + b) / 2
        fm = f(m)
        if mp.sign(fa) == mp.sign(fm):
            a, fa = m, fm
        else:
            b = m
    return float((a + b) / 2)


def count_zeros_by_sign_scan(t_max: float, step: float = 0.05) -> int:
    import mpmath as mp
    t = mp.mpf(2.0)
    prev = mp.siegelz(t)
    count = 0
    while t < t_max:
        t += step
        cur = mp.siegelz(t)
        if mp.sign(cur) != mp.sign(prev):
            count += 1
        prev = cur
    return count


def brute_orbit_escapes(c: complex, z0: complex, max_iter: int = 80,
                        radius: float = 1e6) -> bool:
    """Additive zeta orbit escape check with mpmath (independent path)."""
    import mpmath as mp
    z = mp.mpc(z0)
    for _ in range(max_iter):
        if abs(z - 1) < 1e-12:
            return True
        z = mp.zeta(z) + c
        if abs(z) > radius and z.real < 50:
            return True
        if z.real > 50:
            return False
    return False


if __name__ == "__main__":
    print("catalan:", catalan_series())
    print("first zero:", zero_by_bisection(14.0, 14.2))
    print("zeros < 100:", count_zeros_by_sign_scan(100.0))
    print("|F_8| =", totient_sum_length(8))
    print("escape probe:", brute_orbit_escapes(0.0, ESCAPE_PROBE_Z0))
