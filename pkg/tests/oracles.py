"""Independent oracles.  None of these route through the package's
normalization, shift or log-domain evaluation code: they walk the raw
term dictionaries and use plain complex or mpmath arithmetic."""

from __future__ import annotations

import cmath

import mpmath
import numpy as np

from fermat_forge.algebra import MPoly
from fermat_forge.equations import PDDE, BinomialDiff, LinearReduced, Trinomial
from fermat_forge.expfun import ExpPoly

mpmath.mp.dps = 40


def poly_direct(p: MPoly, z) -> complex:
    total = 0j
    for e, v in p.items():
        term = v
        for zi, k in zip(z, e):
            term *= complex(zi) ** k
        total += term
    return total


def poly_abs_scale(p: MPoly, z) -> float:
    """Sum of absolute term values: the natural scale for cancellation."""
    return sum(abs(v) * np.prod([abs(complex(zi)) ** k for zi, k in zip(z, e)]) for e, v in p.items())


def poly_mp(p: MPoly, z):
    total = mpmath.mpc(0)
    for e, v in p.items():
        term = mpmath.mpc(v.real, v.imag)
        for zi, k in zip(z, e):
            term *= mpmath.mpc(zi) ** k
        total += term
    return total


def ep_mp(e: ExpPoly, z):
    """Extended-precision value of an ExpPoly, term by term."""
    total = mpmath.mpc(0)
    for t in e.terms:
        total += poly_mp(t.coef, z) * mpmath.exp(poly_mp(t.expo, z))
    return total


def ep_direct(e: ExpPoly, z) -> complex:
    return complex(ep_mp(e, z))


def ep_term_scale(e: ExpPoly, z) -> float:
    return float(max((abs(poly_mp(t.coef, z) * mpmath.exp(poly_mp(t.expo, z))) for t in e.terms), default=0))


def central_difference(fn, z, i: int, h: float = 1e-5) -> complex:
    zp, zm = list(z), list(z)
    zp[i] += h
    zm[i] -= h
    return (fn(zp) - fn(zm)) / (2 * h)


def cauchy_derivative(fn, z, i: int, r: float = 1e-2, m: int = 32) -> complex:
    """d/dz_i via the trapezoid rule on a small circle (spectrally accurate)."""
    acc = 0j
    for k in range(m):
        w = cmath.exp(2j * cmath.pi * k / m)
        zz = list(z)
        zz[i] += r * w
        acc += fn(zz) / w
    return acc / (m * r)


def equation_direct(spec, f: ExpPoly, z) -> tuple[complex, float]:
    """LHS - RHS of the displayed equation by plain arithmetic, and a scale.

    Everything stays in mpmath so large exponents cannot overflow; the
    returned pair is (gap / scale, 1.0) when the scale exceeds double range.
    """
    z = [mpmath.mpc(complex(x)) for x in z]
    zc = [a + mpmath.mpc(complex(b)) for a, b in zip(z, spec.c)]
    fz = ep_mp(f, z)
    fc = ep_mp(f, zc)
    gz = poly_mp(spec.g, z)
    eg = mpmath.exp(gz)
    if isinstance(spec, BinomialDiff):
        P, Q = poly_mp(spec.P, z), poly_mp(spec.Q, z)
        G = spec.a1 * fc + spec.a0 * fz
        parts = [spec.a * fz**2, spec.b * P**2 * G**2, -Q * eg]
    elif isinstance(spec, PDDE):
        P, Q = poly_mp(spec.P, z), poly_mp(spec.Q, z)
        d = cauchy_derivative(lambda w: ep_mp(f, w), z, spec.axis)
        parts = [spec.a * fc**2, spec.b * P**2 * d**2, -Q * eg]
    elif isinstance(spec, Trinomial):
        G = spec.g1 * fc + spec.g2 * fz
        parts = [spec.a * fz**2, 2 * spec.omega * fz * G, spec.b * G**2, -eg]
    elif isinstance(spec, LinearReduced):
        G = spec.g1 * fc + spec.g2 * fz
        half = mpmath.exp(gz / 2)
        parts = [cmath.sqrt(spec.a) * fz, spec.sign_b * cmath.sqrt(spec.b) * G, -spec.sign_rhs * half]
    else:
        raise TypeError(type(spec))
    gap = mpmath.fsum(parts)
    scale = max(abs(p) for p in parts)
    if scale > 1e300:
        return complex(gap / scale), 1.0
    return complex(gap), float(scale)
