"""Equation specifications, residuals, verification and diagnosis.

Four equation shapes are supported (``f`` unknown, ``c`` a shift):

* ``BinomialDiff``:  a f^2 + b P^2 (a1 f(z+c) + a0 f(z))^2 = Q e^g
* ``PDDE``:          a f(z+c)^2 + b P^2 (df/dz_i)^2 = Q e^g
* ``Trinomial``:     a f^2 + 2 w f G + b G^2 = e^g,  G = g1 f(z+c) + g2 f(z)
* ``LinearReduced``: sqrt(a) f + sb sqrt(b) G = sr e^{g/2}

The omega = 0 trinomial is ``Trinomial`` with ``omega = 0``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, fields
from typing import Any, ClassVar, Sequence

from ._codec import SCHEMA, dec_c, dec_mpoly, dec_vec, enc_c, enc_vec
from .algebra import MPoly, as_complex
from .errors import (
    DegenerateRoots,
    DimensionMismatch,
    InvalidSpec,
    MalformedInput,
    ZeroProduct,
)
from .expfun import ExpPoly, SamplingConfig, ep_is_zero, sample_polydisc

# -- specifications -------------------------------------------------------------


_INT_FIELDS = ("axis", "sign_b", "sign_rhs")


def _coerce_fields(spec) -> None:
    """Store scalars as complex and the shift as a tuple of complex."""
    for fl in fields(spec):
        v = getattr(spec, fl.name)
        if fl.name == "c":
            object.__setattr__(spec, "c", tuple(as_complex(x) for x in v))
        elif fl.name not in _INT_FIELDS and not isinstance(v, MPoly):
            object.__setattr__(spec, fl.name, as_complex(v))


def _check_shift(c, n) -> None:
    if len(c) != n:
        raise DimensionMismatch(f"shift has length {len(c)}, expected {n}")
    if all(x == 0 for x in c):
        raise InvalidSpec("shift c must be non-zero")


def _check_poly(p: MPoly, n: int, name: str, nonzero: bool = True) -> None:
    if not isinstance(p, MPoly):
        raise InvalidSpec(f"{name} must be an MPoly")
    if p.n != n:
        raise DimensionMismatch(f"{name} has dimension {p.n}, expected {n}")
    if nonzero and p.is_zero:
        raise InvalidSpec(f"{name} must not be identically zero")


@dataclass(frozen=True)
class BinomialDiff:
    a: complex
    b: complex
    P: MPoly
    Q: MPoly
    g: MPoly
    a1: complex
    a0: complex
    c: tuple

    kind: ClassVar[str] = "binomial-diff"

    def __post_init__(self):
        _coerce_fields(self)
        n = self.g.n
        _check_poly(self.g, n, "g", nonzero=False)
        _check_poly(self.P, n, "P")
        _check_poly(self.Q, n, "Q")
        _check_shift(self.c, n)

    @property
    def n(self) -> int:
        return self.g.n


@dataclass(frozen=True)
class PDDE:
    a: complex
    b: complex
    P: MPoly
    Q: MPoly
    g: MPoly
    c: tuple
    axis: int

    kind: ClassVar[str] = "pdde"

    def __post_init__(self):
        _coerce_fields(self)
        n = self.g.n
        _check_poly(self.P, n, "P")
        _check_poly(self.Q, n, "Q")
        _check_shift(self.c, n)
        if not 0 <= self.axis < n:
            raise InvalidSpec(f"axis {self.axis} out of range for n={n}")

    @property
    def n(self) -> int:
        return self.g.n


@dataclass(frozen=True)
class Trinomial:
    a: complex
    b: complex
    omega: complex
    g1: complex
    g2: complex
    g: MPoly
    c: tuple

    kind: ClassVar[str] = "trinomial"

    def __post_init__(self):
        _coerce_fields(self)
        _check_shift(self.c, self.g.n)

    @property
    def n(self) -> int:
        return self.g.n


@dataclass(frozen=True)
class LinearReduced:
    a: complex
    b: complex
    g1: complex
    g2: complex
    g: MPoly
    c: tuple
    sign_b: int = 1
    sign_rhs: int = 1

    kind: ClassVar[str] = "linear-reduced"

    def __post_init__(self):
        _coerce_fields(self)
        _check_shift(self.c, self.g.n)
        if self.sign_b not in (1, -1) or self.sign_rhs not in (1, -1):
            raise InvalidSpec("sign_b and sign_rhs must be +1 or -1")

    @property
    def n(self) -> int:
        return self.g.n


EquationSpec = BinomialDiff | PDDE | Trinomial | LinearReduced
SPEC_KINDS = {cls.kind: cls for cls in (BinomialDiff, PDDE, Trinomial, LinearReduced)}


def spec_to_json(spec: EquationSpec) -> dict:
    out: dict[str, Any] = {"kind": spec.kind}
    for name, value in spec.__dict__.items():
        if isinstance(value, MPoly):
            out[name] = value.to_json()
        elif name == "c":
            out[name] = enc_vec(value)
        elif name in _INT_FIELDS:
            out[name] = value
        else:
            out[name] = enc_c(value)
    return out


def spec_from_json(obj) -> EquationSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedInput("equation spec must be an object with a 'kind' field")
    cls = SPEC_KINDS.get(obj["kind"])
    if cls is None:
        raise MalformedInput(f"unknown equation kind {obj['kind']!r}; expected one of {sorted(SPEC_KINDS)}")
    try:
        g = dec_mpoly(obj["g"], "g")
        n = g.n
        kwargs: dict[str, Any] = {"g": g, "c": dec_vec(obj["c"], "c")}
        for name in (fl.name for fl in fields(cls)):
            if name in kwargs:
                continue
            if name in ("P", "Q"):
                kwargs[name] = dec_mpoly(obj[name], name, n)
            elif name in _INT_FIELDS:
                v = obj.get(name, 1 if name.startswith("sign") else None)
                if not isinstance(v, int) or isinstance(v, bool):
                    raise MalformedInput(f"{name} must be an integer")
                kwargs[name] = v
            else:
                kwargs[name] = dec_c(obj[name], name)
        return cls(**kwargs)
    except KeyError as exc:
        raise MalformedInput(f"equation spec missing field {exc}") from exc
    except (InvalidSpec, DimensionMismatch) as exc:
        raise MalformedInput(f"invalid equation spec: {exc}") from exc


# -- residuals --------------------------------------------------------------------


def residual_parts(spec: EquationSpec, f: ExpPoly) -> list[ExpPoly]:
    """The un-cancelled pieces whose sum is LHS - RHS."""
    if f.n != spec.n:
        raise DimensionMismatch(f"candidate has dimension {f.n}, equation has {spec.n}")
    if isinstance(spec, BinomialDiff):
        G = f.shift(spec.c) * spec.a1 + f * spec.a0
        return [
            f * f * spec.a,
            G * G * (spec.P * spec.P * spec.b),
            -ExpPoly.exp(spec.g, spec.Q),
        ]
    if isinstance(spec, PDDE):
        S = f.shift(spec.c)
        D = f.partial(spec.axis)
        return [
            S * S * spec.a,
            D * D * (spec.P * spec.P * spec.b),
            -ExpPoly.exp(spec.g, spec.Q),
        ]
    if isinstance(spec, Trinomial):
        G = f.shift(spec.c) * spec.g1 + f * spec.g2
        return [f * f * spec.a, f * G * (2 * spec.omega), G * G * spec.b, -ExpPoly.exp(spec.g)]
    if isinstance(spec, LinearReduced):
        G = f.shift(spec.c) * spec.g1 + f * spec.g2
        half = ExpPoly.exp(spec.g).halve_exponent()
        return [
            f * cmath.sqrt(spec.a),
            G * (spec.sign_b * cmath.sqrt(spec.b)),
            half * (-spec.sign_rhs),
        ]
    raise TypeError(f"unsupported equation spec {type(spec).__name__}")


def residual(spec: EquationSpec, f: ExpPoly) -> ExpPoly:
    """Canonical form of LHS - RHS."""
    return ExpPoly.concat(residual_parts(spec, f))


# -- trinomial factorization -------------------------------------------------------


@dataclass(frozen=True)
class OmegaRoots:
    w1: complex
    w2: complex
    sqrt_a: complex
    sqrt_b: complex
    omega_zero: bool
    double_root: bool

    @property
    def sab(self) -> complex:
        return self.sqrt_a * self.sqrt_b


def omega_roots(a, b, omega, swap: bool = False) -> OmegaRoots:
    """Roots of w^2 + (2 omega / sqrt(ab)) w + 1 = 0, with sqrt(ab) := sqrt(a) sqrt(b).

    ``w1`` takes the ``+`` sign in front of sqrt(omega^2 - ab); ``swap``
    exchanges the labels.  The smaller root is formed as the reciprocal of
    the larger to avoid cancellation.
    """
    a, b, omega = as_complex(a), as_complex(b), as_complex(omega)
    if a * b == 0:
        raise ZeroProduct("ab must be non-zero")
    sa, sb = cmath.sqrt(a), cmath.sqrt(b)
    sab = sa * sb
    disc = cmath.sqrt(omega * omega - a * b)
    plus, minus = -omega + disc, -omega - disc
    if abs(plus) >= abs(minus):
        w1 = plus / sab
        w2 = 1 / w1
    else:
        w2 = minus / sab
        w1 = 1 / w2
    if swap:
        w1, w2 = w2, w1
    double = abs(omega * omega - a * b) <= 1e-14 * max(abs(omega * omega), abs(a * b))
    return OmegaRoots(w1, w2, sa, sb, omega == 0, double)


def factor_identity_error(a, b, omega, F, G, roots: OmegaRoots | None = None) -> float:
    """Relative gap between aF^2 + 2wFG + bG^2 and its factored form, for scalars."""
    roots = roots or omega_roots(a, b, omega)
    lhs_terms = (a * F * F, 2 * omega * F * G, b * G * G)
    rhs = (roots.sqrt_a * F - roots.w1 * roots.sqrt_b * G) * (roots.sqrt_a * F - roots.w2 * roots.sqrt_b * G)
    scale = sum(abs(t) for t in lhs_terms)
    if scale == 0:
        return abs(rhs)
    return abs(sum(lhs_terms) - rhs) / scale


def factor_check(a, b, omega, F: ExpPoly, G: ExpPoly, cfg: SamplingConfig | None = None) -> float:
    """Largest sampled relative gap of the factorization with F, G exponential polynomials."""
    cfg = cfg or SamplingConfig()
    roots = omega_roots(a, b, omega)
    if roots.double_root:
        raise DegenerateRoots("omega^2 = ab: the factorization has a double root")
    Z = sample_polydisc(F.n, cfg.n_points, cfg.radius, cfg.seed)
    worst = 0.0
    for z in Z:
        worst = max(worst, factor_identity_error(a, b, omega, F(z), G(z), roots))
    return worst


# -- verification -----------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    symbolic_zero: bool
    max_rel_residual: float
    n_points: int
    seed: int
    radius: float
    tol: float
    certificate: str
    residual_terms: int
    branch_labels: tuple = ()
    witness: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.symbolic_zero or self.max_rel_residual <= self.tol

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "passed": self.passed,
            "symbolic_zero": self.symbolic_zero,
            "certificate": self.certificate,
            "max_rel_residual": self.max_rel_residual,
            "residual_terms": self.residual_terms,
            "n_points": self.n_points,
            "seed": self.seed,
            "radius": self.radius,
            "tol": self.tol,
            "branch_labels": list(self.branch_labels),
            "witness": None if self.witness is None else enc_vec(self.witness),
        }


def verify(
    spec: EquationSpec, f: ExpPoly, cfg: SamplingConfig | None = None, branch_labels: Sequence[str] = ()
) -> VerificationReport:
    """Check that ``f`` solves ``spec`` symbolically, falling back to sampling."""
    cfg = cfg or SamplingConfig()
    parts = residual_parts(spec, f)
    res = ExpPoly.concat(parts)
    if res.is_zero:
        return VerificationReport(
            True, 0.0, cfg.n_points, cfg.seed, cfg.radius, cfg.tol, "symbolic", 0, tuple(branch_labels)
        )
    reference = ExpPoly.concat(parts, normalize=False)
    cert = ep_is_zero(res, cfg, reference=reference)
    return VerificationReport(
        False,
        cert.max_rel_residual,
        cert.n_points,
        cfg.seed,
        cfg.radius,
        cfg.tol,
        cert.kind,
        len(res.terms),
        tuple(branch_labels),
        cert.witness,
    )


# -- diagnosis --------------------------------------------------------------------

FAMILY_BINOMIAL = "binomial-difference"
FAMILY_PDDE = "binomial-pdde"
FAMILY_TRINOMIAL = "trinomial"
FAMILY_TRINOMIAL_W0 = "trinomial-omega-zero"
FAMILY_LINEAR = "linear-reduction"


@dataclass(frozen=True)
class Verdict:
    kind: str  # SolutionFamilyExists | NoFiniteOrderSolution | OutOfScope
    family: str | None
    reason: str
    certificate: dict | None = None

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "family": self.family,
            "reason": self.reason,
            "certificate": self.certificate,
        }


EXISTS = "SolutionFamilyExists"
NO_SOLUTION = "NoFiniteOrderSolution"
OUT_OF_SCOPE = "OutOfScope"


def _g_shape(g: MPoly, c) -> str:
    if g.is_constant:
        return "constant"
    delta = g.shift(c) - g
    if delta.is_zero:
        return "periodic"
    if delta.is_constant:
        return "linear-plus-periodic"
    return "other"


def diagnose(spec: EquationSpec) -> Verdict:
    """Classify a spec by the existence results for its equation shape."""
    if isinstance(spec, BinomialDiff):
        if spec.a * spec.b == 0:
            return Verdict(OUT_OF_SCOPE, None, "requires ab != 0")
        p = spec.P.degree
        if p >= 1:
            if spec.a1 == 1 and spec.a0 == -1:
                q = spec.Q.degree
                return Verdict(
                    NO_SOLUTION,
                    FAMILY_BINOMIAL,
                    "difference-operator case: degree bookkeeping requires 2p + q - 1 = q, "
                    "i.e. p = 1/2, impossible for an integer degree",
                    {
                        "p": p,
                        "q": q,
                        "lhs_degree": 2 * p + q - 1,
                        "rhs_degree": q,
                        "forced_p": 0.5,
                    },
                )
            return Verdict(
                NO_SOLUTION,
                FAMILY_BINOMIAL,
                "a finite-order transcendental entire solution forces P to reduce to a non-zero constant",
                {"p": p},
            )
        return Verdict(EXISTS, FAMILY_BINOMIAL, "P is constant: two-exponential or single-exponential family")
    if isinstance(spec, PDDE):
        if spec.a * spec.b == 0:
            return Verdict(OUT_OF_SCOPE, None, "requires ab != 0")
        if not (spec.P.is_constant and spec.Q.is_constant):
            return Verdict(
                NO_SOLUTION,
                FAMILY_PDDE,
                "a finite-order transcendental entire solution forces P and Q to reduce to non-zero constants",
                {"deg_P": spec.P.degree, "deg_Q": spec.Q.degree},
            )
        return Verdict(EXISTS, FAMILY_PDDE, "P and Q constant: linear-exponent or single-exponential family")
    if isinstance(spec, Trinomial):
        if spec.a * spec.b == 0:
            return Verdict(OUT_OF_SCOPE, None, "requires ab != 0")
        if spec.g1 == 0:
            return Verdict(OUT_OF_SCOPE, None, "requires a non-zero shift coefficient g1")
        roots = omega_roots(spec.a, spec.b, spec.omega)
        if roots.double_root:
            return Verdict(
                EXISTS,
                FAMILY_LINEAR,
                "omega^2 = ab: the equation is the square of a linear difference equation "
                "sqrt(a) f +- sqrt(b) G = +- e^{g/2}",
                {"omega_squared_equals_ab": True},
            )
        if roots.omega_zero:
            return Verdict(EXISTS, FAMILY_TRINOMIAL_W0, "omega = 0: a F^2 + b G^2 = e^g family")
        return Verdict(EXISTS, FAMILY_TRINOMIAL, "omega^2 not in {0, ab}: factorization with distinct roots")
    if isinstance(spec, LinearReduced):
        if spec.a * spec.b == 0 or spec.g1 == 0:
            return Verdict(OUT_OF_SCOPE, None, "requires ab != 0 and g1 != 0")
        shape = _g_shape(spec.g, spec.c)
        case = {"constant": 1, "periodic": 2, "linear-plus-periodic": 3}.get(shape)
        if case is None:
            return Verdict(OUT_OF_SCOPE, None, "g(z+c) - g(z) is not constant")
        return Verdict(EXISTS, FAMILY_LINEAR, f"g is {shape}", {"case": case})
    raise TypeError(f"unsupported equation spec {type(spec).__name__}")
