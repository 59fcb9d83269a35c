"""Constructors for the exponential-polynomial solution families.

Each constructor builds ``f`` and ``g`` from explicit parameters, checks the
side conditions the family imposes and returns a :class:`SolutionBundle`
holding the equation the pair is meant to solve.  Scalar side conditions
are checked to ``TAU_SIDE`` relative; functional ones (for ``beta`` and
``gamma`` inputs) are checked by sampling.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from ._codec import SCHEMA, enc_c
from .algebra import MPoly, as_complex, is_periodic, linear_value
from .equations import (
    BinomialDiff,
    LinearReduced,
    OmegaRoots,
    PDDE,
    Trinomial,
    omega_roots,
    spec_to_json,
)
from .errors import (
    BranchDegenerate,
    ConstraintViolated,
    DegenerateOmega,
    DegenerateRoots,
    DenominatorZero,
    DimensionMismatch,
    NoSolution,
    PeriodicityViolation,
    ZeroTarget,
    ZeroXi,
)
from .expfun import ExpPoly, SamplingConfig, ep_is_zero, sample_polydisc

TAU_SIDE = 1e-12

FAMILY_SINE = "sine-shift"
FAMILY_CIRCLE = "circle"


@dataclass
class SolutionBundle:
    f: ExpPoly
    g: MPoly
    family: str
    spec: Any = None
    derived: dict = field(default_factory=dict)
    branches: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    companion: ExpPoly | None = None

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "family": self.family,
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "derived": {k: _enc_any(v) for k, v in self.derived.items()},
            "branches": list(self.branches),
            "checks": {k: _enc_any(v) for k, v in self.checks.items()},
            "spec": None if self.spec is None else spec_to_json(self.spec),
            "companion": None if self.companion is None else self.companion.to_json(),
        }


@dataclass(frozen=True)
class ConstraintSolveResult:
    value: Any
    branch_index: int
    residual: float


def _enc_any(v):
    if isinstance(v, (MPoly, ExpPoly)):
        return v.to_json()
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, complex):
        return enc_c(v)
    if isinstance(v, (list, tuple)):
        return [_enc_any(x) for x in v]
    return str(v)


def _rel(x, ref) -> float:
    x, ref = as_complex(x), as_complex(ref)
    return abs(x - ref) / max(abs(ref), 1e-300)


def _require_periodic(p: MPoly, c, name: str) -> None:
    if not is_periodic(p, c):
        raise PeriodicityViolation(f"{name} is not invariant under the shift c")


def _require_periodic_ep(e: ExpPoly, c, name: str, tol: float = 1e-12) -> None:
    if not e.shift(c).equals(e, tol):
        raise PeriodicityViolation(f"{name} is not invariant under the shift c")


def _require_linear(p: MPoly, name: str) -> None:
    if p.degree > 1:
        raise ConstraintViolated(f"{name} must be linear (degree <= 1)")


def _first_axis(c) -> int:
    for i, x in enumerate(c):
        if x != 0:
            return i
    raise ZeroTarget("shift c is zero")


def _side(name: str, value, target, checks: dict, strict: bool) -> None:
    r = _rel(value, target)
    checks[name] = r
    if strict and r > TAU_SIDE:
        raise ConstraintViolated(f"side condition {name} fails (relative residual {r:.3e})", r)


def _functional_check(lhs: ExpPoly, rhs: ExpPoly, cfg: SamplingConfig | None) -> float:
    diff = lhs - rhs
    cert = ep_is_zero(diff, cfg or SamplingConfig(), reference=ExpPoly.concat([lhs, rhs], normalize=False))
    return cert.max_rel_residual


# -- binomial difference family ---------------------------------------------------


def construct_binomial(
    a,
    b,
    a1,
    a0,
    c: Sequence,
    L1: MPoly,
    L2: MPoly,
    psi1: MPoly,
    psi2: MPoly,
    Q1: MPoly,
    Q2: MPoly,
    k1=0,
    k2=0,
    strict: bool = True,
) -> SolutionBundle:
    """Two-exponential solution f = (Q1 e^{h1} + Q2 e^{h2}) / (2 sqrt(a)).

    h_j = L_j + psi_j + k_j with psi_j, Q_j c-periodic and L_j linear.  With
    u_j = a0 + a1 e^{L_j(c)} the pair solves the equation iff u1 + u2 = 0, and
    then P = sqrt(a) / (i sqrt(b) u1), Q = Q1 Q2, g = h1 + h2.
    """
    c = tuple(as_complex(x) for x in c)
    a, b, a1, a0 = map(as_complex, (a, b, a1, a0))
    for name, p in (("psi1", psi1), ("psi2", psi2), ("Q1", Q1), ("Q2", Q2)):
        _require_periodic(p, c, name)
    _require_linear(L1, "L1")
    _require_linear(L2, "L2")
    l1c, l2c = linear_value(L1, c), linear_value(L2, c)
    u1 = a0 + a1 * cmath.exp(l1c)
    u2 = a0 + a1 * cmath.exp(l2c)
    if u1 == 0 or b == 0:
        raise BranchDegenerate("a0 + a1 e^{L1(c)} vanishes: P is undefined")
    checks: dict = {}
    r = abs(u1 + u2) / max(abs(u1), abs(u2))
    checks["u1_plus_u2"] = r
    if strict and r > TAU_SIDE:
        raise ConstraintViolated(f"a0 + a1 e^{{L1(c)}} = -(a0 + a1 e^{{L2(c)}}) fails (relative {r:.3e})", r)
    sa, sb = cmath.sqrt(a), cmath.sqrt(b)
    P = sa / (1j * sb * u1)
    half_total = (l1c + l2c) / 2
    printed = {}
    for sign, label in ((1, "plus"), (-1, "minus")):
        denom = a0 + sign * a1 * cmath.exp(half_total)
        printed[f"P_symmetric_{label}"] = sa / (1j * sb * denom) if denom != 0 else complex("nan")
    checks["exp_L1c_equals_exp_L2c"] = _rel(cmath.exp(l1c), cmath.exp(l2c))

    h1 = L1 + psi1 + as_complex(k1)
    h2 = L2 + psi2 + as_complex(k2)
    n = len(c)
    f = (ExpPoly.exp(h1, Q1) + ExpPoly.exp(h2, Q2)) / (2 * sa)
    g = h1 + h2
    Q = Q1 * Q2
    spec = BinomialDiff(a, b, MPoly.const(n, P), Q, g, a1, a0, c)
    derived = {
        "P": P,
        "P_squared": P * P,
        "u1": u1,
        "u2": u2,
        "L1c": l1c,
        "L2c": l2c,
        "half_total_exponent": half_total,
        **printed,
    }
    return SolutionBundle(f, g, "binomial-difference", spec, derived, [], checks)


def reconcile_binomial_exponents(a1, a0, c: Sequence, L1: MPoly, L2: MPoly, root: int = 0) -> tuple[MPoly, MPoly]:
    """Adjust L1, L2 along the first axis so that u1 + u2 = 0 with L1(c) + L2(c) unchanged.

    e^{L1(c)} and e^{L2(c)} become the two roots of t^2 + (2 a0 / a1) t + e^{L1(c)+L2(c)};
    ``root`` picks which root goes to L1.
    """
    a1, a0 = as_complex(a1), as_complex(a0)
    if a1 == 0:
        raise BranchDegenerate("a1 must be non-zero")
    total = linear_value(L1, c) + linear_value(L2, c)
    disc = cmath.sqrt((a0 / a1) ** 2 - cmath.exp(total))
    roots = (-a0 / a1 + disc, -a0 / a1 - disc)
    x = roots[root % 2]
    if x == 0:
        raise BranchDegenerate("zero root: e^{L(c)} cannot vanish")
    v1 = cmath.log(x)
    v2 = total - v1
    i = _first_axis(c)
    zi = MPoly.var(len(c), i)
    L1n = L1 + zi * ((v1 - linear_value(L1, c)) / c[i])
    L2n = L2 + zi * ((v2 - linear_value(L2, c)) / c[i])
    return L1n, L2n


def construct_binomial_single(
    a,
    b,
    a1,
    a0,
    c: Sequence,
    P: MPoly,
    Q: MPoly,
    beta: ExpPoly,
    L21: MPoly,
    B,
    cfg: SamplingConfig | None = None,
    tol: float = 1e-9,
) -> SolutionBundle:
    """Single-exponential solution f = beta e^{L21}, g = 2 L21 + B.

    beta must satisfy a beta^2 + b P^2 (a1 e^{L21(c)} beta(z+c) + a0 beta)^2 = e^B Q,
    checked by sampling.  The variant without the e^{L21(c)} factor is reported
    alongside for comparison.
    """
    c = tuple(as_complex(x) for x in c)
    a, b, a1, a0, B = map(as_complex, (a, b, a1, a0, B))
    _require_linear(L21, "L21")
    n = len(c)
    lc = linear_value(L21, c)
    bs = beta.shift(c)
    rhs = ExpPoly.from_poly(Q) * cmath.exp(B)
    P2 = P * P * b
    G = bs * (a1 * cmath.exp(lc)) + beta * a0
    lhs = beta * beta * a + G * G * P2
    Gl = bs * a1 + beta * a0
    lhs_literal = beta * beta * a + Gl * Gl * P2
    r = _functional_check(lhs, rhs, cfg)
    checks = {"beta_constraint": r, "beta_constraint_without_shift_factor": _functional_check(lhs_literal, rhs, cfg)}
    if r > tol:
        raise ConstraintViolated(f"beta constraint fails (relative residual {r:.3e})", r)
    f = beta * ExpPoly.exp(L21)
    g = L21 * 2 + B
    spec = BinomialDiff(a, b, P, Q, g, a1, a0, c)
    return SolutionBundle(f, g, "binomial-difference", spec, {"L21c": lc, "B": B}, [], checks)


# -- partial differential-difference family --------------------------------------


def construct_pdde(
    a,
    b,
    c: Sequence,
    axis: int,
    h1: MPoly,
    h2: MPoly,
    alpha1=1,
    alpha2=1,
    strict: bool = True,
) -> SolutionBundle:
    """f = (alpha1 e^{h1(z-c)} + alpha2 e^{h2(z-c)}) / (2 sqrt(a)) with h1, h2 linear.

    With u1 = a_i e^{-h1(c)}, u2 = b_i e^{-h2(c)} (a_i, b_i the axis
    coefficients) the condition is u1 + u2 = 0, i.e. e^{(h1 - h2)(c)} = -a_i/b_i;
    then P = sqrt(a) / (i sqrt(b) u1), Q = alpha1 alpha2 and g = h1 + h2.
    """
    c = tuple(as_complex(x) for x in c)
    a, b, alpha1, alpha2 = map(as_complex, (a, b, alpha1, alpha2))
    n = len(c)
    if not 0 <= axis < n:
        raise DimensionMismatch(f"axis {axis} out of range for n={n}")
    _require_linear(h1, "h1")
    _require_linear(h2, "h2")
    ai, bi = h1.linear_coeffs()[axis], h2.linear_coeffs()[axis]
    if ai == 0 or bi == 0:
        raise BranchDegenerate("the axis coefficients of h1 and h2 must be non-zero")
    h1c, h2c = linear_value(h1, c), linear_value(h2, c)
    u1 = ai * cmath.exp(-h1c)
    u2 = bi * cmath.exp(-h2c)
    checks: dict = {}
    r = abs(u1 + u2) / max(abs(u1), abs(u2))
    checks["u1_plus_u2"] = r
    checks["exp_difference_condition"] = _rel(cmath.exp(h1c - h2c), -ai / bi)
    if strict and r > TAU_SIDE:
        raise ConstraintViolated(f"e^{{(h1-h2)(c)}} = -a_i/b_i fails (relative {r:.3e})", r)
    sa, sb = cmath.sqrt(a), cmath.sqrt(b)
    P = sa / (1j * sb * u1)
    minus_c = tuple(-x for x in c)
    f = (ExpPoly.exp(h1.shift(minus_c), alpha1) + ExpPoly.exp(h2.shift(minus_c), alpha2)) / (2 * sa)
    g = h1 + h2
    Q = alpha1 * alpha2
    spec = PDDE(a, b, MPoly.const(n, P), MPoly.const(n, Q), g, c, axis)
    derived = {"P": P, "P_squared": P * P, "Q": Q, "u1": u1, "u2": u2}
    return SolutionBundle(f, g, "binomial-pdde", spec, derived, [], checks)


def construct_pdde_single(
    a,
    b,
    c: Sequence,
    axis: int,
    P: MPoly,
    Q: MPoly,
    gamma: ExpPoly,
    L1: MPoly,
    H: MPoly,
    r5=None,
    cfg: SamplingConfig | None = None,
    tol: float = 1e-9,
) -> SolutionBundle:
    """f = gamma(z-c) e^{L1(z-c) + H}, g = 2 L1 + 2 H + r5, with H c-periodic.

    gamma must satisfy
    a gamma^2 + b P^2 e^{-2 L1(c)} (d_i gamma(z-c) + gamma(z-c)(xi_i + d_i H))^2 = e^{r5} Q.
    When ``r5`` is omitted it is solved from the constraint, which then must be
    a constant multiple of Q.
    """
    c = tuple(as_complex(x) for x in c)
    a, b = as_complex(a), as_complex(b)
    n = len(c)
    if not 0 <= axis < n:
        raise DimensionMismatch(f"axis {axis} out of range for n={n}")
    _require_linear(L1, "L1")
    _require_periodic(H, c, "H")
    lc = linear_value(L1, c)
    xi = L1.linear_coeffs()[axis]
    minus_c = tuple(-x for x in c)
    gm = gamma.shift(minus_c)
    inner = gm.partial(axis) + gm * ExpPoly.from_poly(H.partial(axis) + xi)
    lhs = gamma * gamma * a + inner * inner * (P * P * (b * cmath.exp(-2 * lc)))
    Qe = ExpPoly.from_poly(Q)
    if r5 is None:
        z0 = sample_polydisc(n, 1, 0.5, 12345)[0]
        q0 = Q(z0)
        if q0 == 0:
            raise ConstraintViolated("Q vanishes at the probe point; pass r5 explicitly")
        kappa = lhs(z0) / q0
        if kappa == 0:
            raise ConstraintViolated("constraint left side vanishes; no r5 exists")
        r5 = cmath.log(kappa)
    r5 = as_complex(r5)
    r = _functional_check(lhs, Qe * cmath.exp(r5), cfg)
    checks = {"gamma_constraint": r}
    if r > tol:
        raise ConstraintViolated(f"gamma constraint fails (relative residual {r:.3e})", r)
    f = gm * ExpPoly.exp(L1.shift(minus_c) + H)
    g = L1 * 2 + H * 2 + r5
    spec = PDDE(a, b, P, Q, g, c, axis)
    return SolutionBundle(f, g, "binomial-pdde", spec, {"r5": r5, "L1c": lc}, [], checks)


# -- trinomial families ------------------------------------------------------------


def _trinomial_roots(a, b, omega, swap: bool, zero_family: bool) -> OmegaRoots:
    a, b, omega = map(as_complex, (a, b, omega))
    if a * b == 0:
        raise DegenerateOmega("ab must be non-zero")
    if zero_family:
        if omega != 0:
            raise DegenerateOmega("the omega = 0 family needs omega = 0")
        w1, w2 = (1j, -1j) if swap else (-1j, 1j)
        return OmegaRoots(w1, w2, cmath.sqrt(a), cmath.sqrt(b), True, False)
    roots = omega_roots(a, b, omega, swap=swap)
    if roots.omega_zero or roots.double_root:
        raise DegenerateOmega("omega^2 must avoid 0 and ab; use the omega = 0 or linear-reduction constructors")
    return roots


def xi_to_exponent(roots: OmegaRoots, g1, g2, xi) -> complex:
    """e^{L(c)/2} as forced by xi in the single-exponential trinomial family."""
    w1, w2, sa, sb = roots.w1, roots.w2, roots.sqrt_a, roots.sqrt_b
    X = xi * xi
    den = g1 * sb * (w2 * X - w1)
    if den == 0:
        raise DenominatorZero("omega2 xi^2 = omega1: exponent relation undefined")
    return ((w1 * g2 * sb - sa) - (w2 * g2 * sb - sa) * X) / den


def solve_xi(a, b, omega, g1, g2, Lc, swap: bool = False, roots: OmegaRoots | None = None) -> ConstraintSolveResult:
    """Solve the linear-fractional exponent relation for xi given L(c)."""
    a, b, omega, g1, g2, Lc = map(as_complex, (a, b, omega, g1, g2, Lc))
    roots = roots or _trinomial_roots(a, b, omega, swap, False)
    w1, w2, sa, sb = roots.w1, roots.w2, roots.sqrt_a, roots.sqrt_b
    if g1 * sa * sb * (w1 - w2) == 0:
        raise NoSolution("the exponent relation is degenerate (zero determinant)")
    E = cmath.exp(Lc / 2)
    t = E * g1 + g2
    num = w1 * sb * t - sa
    den = w2 * sb * t - sa
    if den == 0:
        raise NoSolution("no finite xi: omega2 sqrt(b)(g1 E + g2) = sqrt(a)")
    X = num / den
    if X == 0:
        raise ZeroXi("xi = 0 is excluded")
    xi = cmath.sqrt(X)
    back = xi_to_exponent(roots, g1, g2, xi)
    return ConstraintSolveResult(xi, 0, _rel(back, E))


def construct_trinomial(
    a,
    b,
    omega,
    g1,
    g2,
    c: Sequence,
    L: MPoly,
    H: MPoly,
    B3=0,
    xi=None,
    swap: bool = False,
    strict: bool = True,
    _zero_family: bool = False,
) -> SolutionBundle:
    """Single-exponential trinomial solution f = B1 e^{(L + H + B3)/2}.

    B1 = (w2 xi^2 - w1) / (xi sqrt(a) (w2 - w1)).  When ``xi`` is omitted it
    is solved from e^{L(c)/2}; otherwise the exponent relation is checked.
    """
    c = tuple(as_complex(x) for x in c)
    a, b, omega, g1, g2, B3 = map(as_complex, (a, b, omega, g1, g2, B3))
    roots = _trinomial_roots(a, b, omega, swap, _zero_family)
    _require_linear(L, "L")
    _require_periodic(H, c, "H")
    Lc = linear_value(L, c)
    checks: dict = {}
    if xi is None:
        sol = solve_xi(a, b, omega, g1, g2, Lc, roots=roots)
        xi = sol.value
        checks["exponent_relation"] = sol.residual
    else:
        xi = as_complex(xi)
        if xi == 0:
            raise ZeroXi("xi = 0 is excluded")
        _side("exponent_relation", xi_to_exponent(roots, g1, g2, xi), cmath.exp(Lc / 2), checks, strict)
    w1, w2, sa = roots.w1, roots.w2, roots.sqrt_a
    B1 = (w2 * xi * xi - w1) / (xi * sa * (w2 - w1))
    gpoly = L + H + B3
    f = ExpPoly.exp(gpoly * 0.5, B1)
    spec = Trinomial(a, b, omega, g1, g2, gpoly, c)
    family = "trinomial-omega-zero" if _zero_family else "trinomial"
    derived = {"xi": xi, "B1": B1, "omega1": w1, "omega2": w2, "Lc": Lc}
    return SolutionBundle(f, gpoly, family, spec, derived, ["swap" if swap else "direct"], checks)


def exponent_targets(roots: OmegaRoots, g1, g2) -> tuple[complex, complex]:
    """Required e^{L1(c)} and e^{L2(c)} for the two-exponential trinomial family."""
    w1, w2, sa, sb = roots.w1, roots.w2, roots.sqrt_a, roots.sqrt_b
    if g1 == 0:
        raise DenominatorZero("g1 must be non-zero")
    return (sa - w2 * g2 * sb) / (w2 * g1 * sb), (sa - w1 * g2 * sb) / (w1 * g1 * sb)


def construct_trinomial_two(
    a,
    b,
    omega,
    g1,
    g2,
    c: Sequence,
    L1: MPoly,
    L2: MPoly,
    H1: MPoly,
    H2: MPoly,
    D1=0,
    D2=0,
    swap: bool = False,
    strict: bool = True,
    _zero_family: bool = False,
) -> SolutionBundle:
    """Two-exponential trinomial solution f = (w2 e^{h1} - w1 e^{h2}) / (sqrt(a)(w2 - w1))."""
    c = tuple(as_complex(x) for x in c)
    a, b, omega, g1, g2, D1, D2 = map(as_complex, (a, b, omega, g1, g2, D1, D2))
    roots = _trinomial_roots(a, b, omega, swap, _zero_family)
    for name, p in (("L1", L1), ("L2", L2)):
        _require_linear(p, name)
    _require_periodic(H1, c, "H1")
    _require_periodic(H2, c, "H2")
    if (L1 + H1).strip_constant().equals((L2 + H2).strip_constant()):
        raise DegenerateRoots("L1 + H1 must differ from L2 + H2")
    R1, R2 = exponent_targets(roots, g1, g2)
    e1, e2 = cmath.exp(linear_value(L1, c)), cmath.exp(linear_value(L2, c))
    # Each factor sqrt(a)F - w_j sqrt(b)G must kill one exponential; which one
    # is immaterial, so the targets may be met in either order.
    direct = max(_rel(e1, R1), _rel(e2, R2))
    crossed = max(_rel(e1, R2), _rel(e2, R1))
    checks: dict = {"exponent_relation": min(direct, crossed)}
    assignment = "direct" if direct <= crossed else "crossed"
    if strict and checks["exponent_relation"] > TAU_SIDE:
        raise ConstraintViolated(
            f"e^{{L1(c)}}, e^{{L2(c)}} do not match the required values (relative {checks['exponent_relation']:.3e})",
            checks["exponent_relation"],
        )
    w1, w2, sa = roots.w1, roots.w2, roots.sqrt_a
    h1 = L1 + H1 + D1
    h2 = L2 + H2 + D2
    den = sa * (w2 - w1)
    f = (ExpPoly.exp(h1, w2) - ExpPoly.exp(h2, w1)) / den
    g = h1 + h2
    spec = Trinomial(a, b, omega, g1, g2, g, c)
    family = "trinomial-omega-zero" if _zero_family else "trinomial"
    derived = {
        "omega1": w1,
        "omega2": w2,
        "R1": R1,
        "R2": R2,
        "coef1": w2 / den,
        "coef2": -w1 / den,
        "assignment": assignment,
    }
    return SolutionBundle(f, g, family, spec, derived, ["swap" if swap else "direct"], checks)


def construct_trinomial_w0(case: str, **params) -> SolutionBundle:
    """omega = 0 families: roots fixed to (-i, i), so B1 = (xi^2 + 1)/(2 xi sqrt(a))."""
    params.setdefault("omega", 0)
    if case == "i":
        return construct_trinomial(_zero_family=True, **params)
    if case == "ii":
        return construct_trinomial_two(_zero_family=True, **params)
    raise ValueError("case must be 'i' or 'ii'")


def solve_linear_exponent(
    target, c: Sequence, k_range: Iterable[int] = (0,), base: MPoly | None = None
) -> list[ConstraintSolveResult]:
    """Linear forms L with L(c) = Log(target) + 2 pi i k, one per k.

    L(c) means the increment L(z + c) - L(z); any constant term of ``base``
    is carried along but does not enter the constraint.

    L = base + ((v - base(c)) / c_i) z_i with i the first axis where c_i != 0;
    ``base`` defaults to zero.
    """
    target = as_complex(target)
    if target == 0:
        raise ZeroTarget("target must be non-zero")
    c = tuple(as_complex(x) for x in c)
    n = len(c)
    base = MPoly.zero(n) if base is None else base
    i = _first_axis(c)
    zi = MPoly.var(n, i)
    log_t = cmath.log(target)
    out = []
    for k in k_range:
        v = log_t + 2j * math.pi * k
        L = base + zi * ((v - linear_value(base, c)) / c[i])
        res = abs(target * cmath.exp(-linear_value(L, c)) - 1)
        out.append(ConstraintSolveResult(L, int(k), res))
    return out


# -- linear reduction -------------------------------------------------------------


def construct_linear_reduced(
    a,
    b,
    g1,
    g2,
    c: Sequence,
    ell: MPoly,
    periodic: ExpPoly,
    g: MPoly,
    sign_b: int = 1,
    sign_rhs: int = 1,
) -> SolutionBundle:
    """f = K^{ell(z)} pi(z) + C e^{g/2} for sqrt(a) f + sb sqrt(b)(g1 f(z+c) + g2 f) = sr e^{g/2}.

    K = -(sqrt(a) + sb g2 sqrt(b)) / (sb g1 sqrt(b)) with K^{ell} := e^{ell Log K},
    ell linear with ell(c) = 1, pi c-periodic, and g(z+c) - g(z) a constant D;
    C = sr / (sqrt(a) + sb sqrt(b)(g1 e^{D/2} + g2)).
    """
    c = tuple(as_complex(x) for x in c)
    a, b, g1, g2 = map(as_complex, (a, b, g1, g2))
    n = len(c)
    if ell.degree > 1 or abs(linear_value(ell, c) - 1) > TAU_SIDE:
        raise ConstraintViolated("ell must be linear with ell(c) = 1")
    _require_periodic_ep(periodic, c, "periodic factor")
    delta = g.shift(c) - g
    if not delta.is_constant:
        raise ConstraintViolated("g(z+c) - g(z) must be constant")
    D = delta.constant_term
    case = 1 if g.is_constant else (2 if D == 0 else 3)
    sa, sb = cmath.sqrt(a), cmath.sqrt(b)
    if g1 == 0 or b == 0:
        raise DenominatorZero("g1 sqrt(b) must be non-zero")
    K = -(sa + sign_b * g2 * sb) / (sign_b * g1 * sb)
    E = cmath.exp(D / 2)
    den = sa + sign_b * sb * (g1 * E + g2)
    if den == 0:
        raise DenominatorZero("sqrt(a) + sb sqrt(b)(g1 e^{D/2} + g2) vanishes")
    C = sign_rhs / den
    den_sym = sa + sign_b * sb * (g1 + g2)
    C_sym = sign_rhs / den_sym if den_sym != 0 else complex("nan")
    f = ExpPoly.exp(g).halve_exponent() * C
    if not periodic.is_zero:
        if K == 0:
            raise BranchDegenerate("K = 0: the homogeneous part is undefined")
        f = f + ExpPoly.exp(ell * cmath.log(K)) * periodic
    spec = LinearReduced(a, b, g1, g2, g, c, sign_b, sign_rhs)
    derived = {"K": K, "C": C, "C_symmetric": C_sym, "shift_increment": D, "case": case}
    checks = {"particular_vs_symmetric_form": _rel(C_sym, C) if den_sym != 0 else math.inf}
    return SolutionBundle(f, g, "linear-reduction", spec, derived, [], checks)


# -- classical identities ---------------------------------------------------------


def construct_classical(kind: str, q=1, c=math.pi / 2, k: int = 0, B=0, h: MPoly | None = None) -> SolutionBundle:
    """``sine-shift``: f = sqrt(q) sin(Az + B), A = (4k+1) pi / (2c), solving f^2 + f(z+c)^2 = q.
    ``circle``: the pair (cos h, sin h) with cos^2 + sin^2 = 1."""
    if kind == FAMILY_SINE:
        q, c, B = as_complex(q), as_complex(c), as_complex(B)
        if c == 0:
            raise ZeroTarget("c must be non-zero")
        A = (4 * k + 1) * math.pi / (2 * c)
        arg = MPoly.linear([A], B)
        f = ExpPoly.sin(arg) * cmath.sqrt(q)
        one = MPoly.const(1, 1)
        spec = BinomialDiff(1, 1, one, MPoly.const(1, q), MPoly.zero(1), 1, 0, (c,))
        return SolutionBundle(f, MPoly.zero(1), FAMILY_SINE, spec, {"A": A, "k": int(k)})
    if kind == FAMILY_CIRCLE:
        if h is None:
            raise ValueError("the circle family needs h")
        cos_h, sin_h = ExpPoly.cos(h), ExpPoly.sin(h)
        check = cos_h * cos_h + sin_h * sin_h - 1
        return SolutionBundle(
            cos_h, MPoly.zero(h.n), FAMILY_CIRCLE, None, {}, [], {"identity_terms": len(check.terms)}, sin_h
        )
    raise ValueError(f"unknown classical kind {kind!r}")
