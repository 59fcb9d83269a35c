"""Named reproducible fixtures: worked examples and coverage instances.

A fixture expands into branch rows.  Each row carries the verification
report of one sign or labeling choice; a fixture passes when at least one
of its branches does.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from ._codec import SCHEMA, enc_c
from .algebra import MPoly
from .equations import BinomialDiff, VerificationReport, diagnose, verify
from .errors import FermatForgeError
from .expfun import ExpPoly, SamplingConfig, ep_is_zero
from .growth import structural_order
from .solutions import (
    FAMILY_CIRCLE,
    FAMILY_SINE,
    SolutionBundle,
    construct_binomial,
    construct_binomial_single,
    construct_classical,
    construct_linear_reduced,
    construct_pdde,
    construct_pdde_single,
    construct_trinomial,
    construct_trinomial_two,
    construct_trinomial_w0,
    reconcile_binomial_exponents,
    solve_linear_exponent,
)

PI = math.pi


@dataclass
class BranchRow:
    branch: str
    passed: bool
    symbolic_zero: bool = False
    max_rel_residual: float = math.nan
    detail: dict = field(default_factory=dict)
    bundle: SolutionBundle | None = None

    def to_json(self) -> dict:
        return {
            "branch": self.branch,
            "status": "PASS" if self.passed else "FAIL",
            "symbolic_zero": self.symbolic_zero,
            "max_rel_residual": self.max_rel_residual,
            "detail": {k: _plain(v) for k, v in self.detail.items()},
        }


@dataclass(frozen=True)
class Fixture:
    name: str
    provenance: str
    build: Callable[[SamplingConfig], list[BranchRow]]


def _plain(v):
    if isinstance(v, complex):
        return enc_c(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _row(label: str, bundle: SolutionBundle, cfg: SamplingConfig, **detail) -> BranchRow:
    rep: VerificationReport = verify(bundle.spec, bundle.f, cfg, [label])
    detail = {**{k: v for k, v in bundle.checks.items()}, **detail}
    return BranchRow(label, rep.passed, rep.symbolic_zero, rep.max_rel_residual, detail, bundle)


def _failed(label: str, exc: Exception) -> BranchRow:
    return BranchRow(label, False, detail={"error": f"{type(exc).__name__}: {exc}"})


# -- worked examples --------------------------------------------------------------


def _sine(cfg):
    return [_row("k=0", construct_classical(FAMILY_SINE, q=1, c=PI / 2, k=0, B=0), cfg)]


def _binomial_rows(cfg, *, a, a1, a0, c, L1, L2, psi1, psi2, Q1, Q2, printed_half, printed_orders):
    rows = []
    base = construct_binomial(a, 1, a1, a0, c, L1, L2, psi1, psi2, Q1, Q2, strict=False)
    for label in ("plus", "minus"):
        P = base.derived[f"P_symmetric_{label}"]
        spec = BinomialDiff(a, 1, MPoly.const(len(c), P), base.spec.Q, base.g, a1, a0, c)
        literal = SolutionBundle(base.f, base.g, base.family, spec, base.derived, [f"printed-{label}"], dict(base.checks))
        rows.append(_row(f"printed-{label}", literal, cfg))
    for root in (0, 1):
        M1, M2 = reconcile_binomial_exponents(a1, a0, c, L1, L2, root)
        try:
            b = construct_binomial(a, 1, a1, a0, c, M1, M2, psi1, psi2, Q1, Q2)
        except FermatForgeError as exc:
            rows.append(_failed(f"reconciled-root{root}", exc))
            continue
        half = b.derived["half_total_exponent"]
        rows.append(
            _row(
                f"reconciled-root{root}",
                b,
                cfg,
                half_total_exponent=half,
                half_total_gap=abs(half - printed_half),
                structural_order=structural_order(b.f),
                printed_order=max(printed_orders),
            )
        )
    return rows


def binomial_example_1(cfg):
    c = (2, -1, 3)
    s = MPoly.linear([1, 2 + 3j, 1j])
    w = MPoly.linear([2, 1, -1])
    return _binomial_rows(
        cfg,
        a=7,
        a1=math.sqrt(3),
        a0=5,
        c=c,
        L1=MPoly.linear([3, 1j, PI]),
        L2=MPoly.linear([1, 2 * PI, 1j]),
        psi1=s**10 + math.sqrt(3) * PI * 1j / 7,
        psi2=s**7 + math.sqrt(7) * PI / 11,
        Q1=MPoly.linear([4, 2, -2]) + w**5 + PI * 1j / 12,
        Q2=MPoly.linear([5, 1, -3]) + w**8 + PI * 1j / 13,
        printed_half=(4 + 1j) + PI / 2,
        printed_orders=(10, 7),
    )


def binomial_example_2(cfg):
    c = (5, -2, 3)
    s = MPoly.linear([3, 6, -1])
    w = MPoly.linear([1, 1, -1])
    return _binomial_rows(
        cfg,
        a=13,
        a1=math.sqrt(5),
        a0=math.sqrt(7) / 2,
        c=c,
        L1=MPoly.linear([2, 1, -1j]),
        L2=MPoly.linear([3, 1j, -2]),
        psi1=s**13 + math.sqrt(5) * PI * 1j / 2,
        psi2=s**5 + math.sqrt(7) * PI * 1j / 5,
        Q1=MPoly.linear([4, 1, -6]) + w**7 + PI * 1j / 4,
        Q2=MPoly.linear([6, 3, -8]) + w**6 + PI * 1j / 9,
        printed_half=(17 - 5j) / 2,
        printed_orders=(13, 5),
    )


def _trinomial_1(cfg):
    c = (5, 2, -3)
    s = MPoly.linear([4, -1, 6])
    r10 = math.sqrt(10)
    rows = []
    for sg, label in ((1, "+"), (-1, "-")):
        R = (10 + sg * 9 * r10) / (5 * (4 + sg * 3 * r10))
        L = MPoly.linear([3, cmath.log(R), 5])
        printed = (-4 - sg * 3 * r10) / (-sg * 4 * r10)
        try:
            b = construct_trinomial(2, 3, 4, 5, -3, c, L, s**3, 5j * PI / 6)
        except FermatForgeError as exc:
            rows.append(_failed(label, exc))
            continue
        B1 = b.derived["B1"]
        gap = min(abs(B1 - printed), abs(B1 + printed)) / abs(printed)
        rows.append(_row(label, b, cfg, prefactor=B1, printed_prefactor=printed, prefactor_gap=gap))
    return rows


def _trinomial_2(cfg):
    c = (2, -3, 1)
    s = MPoly.linear([5, 4, 2])
    r22 = math.sqrt(22)
    rows = []
    for sg, label in ((1, "+"), (-1, "-")):
        Rp = (7 + sg * 2 * r22) / (3 * (5 + sg * r22))
        Rm = (7 - sg * 2 * r22) / (3 * (5 - sg * r22))
        L1 = MPoly.linear([6, 4, cmath.log(Rp)])
        L2 = MPoly.linear([5, -cmath.log(Rm) / 3, -10])
        printed = (-5 - sg * r22) / (-sg * 2 * math.sqrt(66))
        for swap in (False, True):
            b = construct_trinomial_two(
                3, 1, 5, 3, -2, c, L1, L2, s**3, s**2, 7j * PI / 8, 13j * PI / 11, swap=swap
            )
            gap = abs(b.derived["coef1"] - printed) / abs(printed)
            tag = f"{label}/{'swapped' if swap else 'direct'}-roots"
            rows.append(_row(tag, b, cfg, coefficient=b.derived["coef1"], printed_coefficient=printed, coefficient_gap=gap))
    return rows


_LR_C = (1, 2)
_LR_ELL = MPoly.linear([1, 0])
_LR_W = MPoly.linear([2, -1])


def _lr(a, b, g1, g2, sb, sr, kind, g=None, printed_K=None):
    def build(cfg):
        h = _LR_ELL * (2 * PI)
        periodic = ExpPoly.sin(h) if kind == "sin" else ExpPoly.cos(h)
        gg = g if g is not None else _LR_W + _LR_W**2 + 0.25
        b_ = construct_linear_reduced(a, b, g1, g2, _LR_C, _LR_ELL, periodic, gg, sb, sr)
        detail = {"K": b_.derived["K"], "C": b_.derived["C"], "case": b_.derived["case"]}
        if printed_K is not None:
            detail["printed_K_gap"] = abs(b_.derived["K"] - printed_K) / abs(printed_K)
        return [_row("signs", b_, cfg, **detail)]

    return build


# -- coverage instances -----------------------------------------------------------


def _binomial_single(cfg):
    a, b, a1, a0 = 2, 1, 1, -0.5
    L21 = MPoly.linear([1, 2])
    B = cmath.log(a + b * (a1 * math.exp(3) + a0) ** 2)
    beta = MPoly.linear([1, -1])
    bund = construct_binomial_single(
        a, b, a1, a0, (1, 1), MPoly.const(2, 1), beta**2, ExpPoly.from_poly(beta), L21, B, cfg
    )
    return [_row("single", bund, cfg)]


def _pdde_cos(cfg):
    z = MPoly.var(1, 0)
    return [_row("single", construct_pdde(1, 1, (PI,), 0, z * 1j, z * -1j), cfg)]


def _pdde_single(cfg):
    one = MPoly.const(2, 1)
    b = construct_pdde_single(1, 2, (1, -1), 0, one, one, ExpPoly.const(2, 1), MPoly.linear([1, 2]), MPoly.zero(2))
    return [_row("single", b, cfg)]


def _w0_single(cfg):
    H = MPoly.linear([1, -1]) ** 2
    b = construct_trinomial_w0("i", a=2, b=3, g1=1.5, g2=-0.5, c=(1, 1), L=MPoly.linear([0.3, 0.2]), H=H, B3=0.1)
    return [_row("single", b, cfg)]


def _w0_two(cfg):
    L1 = solve_linear_exponent(-1j, (1, 1))[0].value
    L2 = solve_linear_exponent(1j, (1, 1))[0].value
    H = MPoly.linear([1, -1]) ** 2
    b = construct_trinomial_w0("ii", a=1, b=1, g1=1, g2=0, c=(1, 1), L1=L1, L2=L2, H1=H, H2=MPoly.zero(2))
    return [_row("two", b, cfg)]


def _circle(cfg):
    h = MPoly(2, {(2, 1): 1.0})
    b = construct_classical(FAMILY_CIRCLE, h=h)
    identity = b.f * b.f + b.companion * b.companion - 1
    cert = ep_is_zero(identity, cfg)
    return [BranchRow("h=z1^2 z2", cert.verdict, cert.kind == "symbolic", cert.max_rel_residual, {}, b)]


def _delta_nonexistence(cfg):
    spec = BinomialDiff(1, 1, MPoly.linear([1, 0], 1), MPoly.const(2, 1), MPoly.zero(2), 1, -1, (1, 0))
    v = diagnose(spec)
    ok = v.kind == "NoFiniteOrderSolution" and v.certificate is not None and v.certificate.get("forced_p") == 0.5
    return [BranchRow("diagnose", ok, detail={"verdict": v.kind, **(v.certificate or {})})]


FIXTURES: dict[str, Fixture] = {}


def _register(name: str, provenance: str, build) -> None:
    FIXTURES[name] = Fixture(name, provenance, build)


_register("thm11-sine", "f(z) = sqrt(q) sin(Az + B), A = (4k+1) pi / (2c), solving f^2(z) + f^2(z+c) = q", _sine)
_register(
    "ex-binomial-1",
    "7f^2 - 7/(5 +- sqrt3 e^{(4+i)+pi/2})^2 (sqrt3 f(z+c) + 5f)^2 = Q1 Q2 e^{g}, c = (2,-1,3)",
    binomial_example_1,
)
_register(
    "ex-binomial-2",
    "13f^2 - 13/(sqrt7/2 +- sqrt5 e^{(17-5i)/2})^2 (sqrt5 f(z+c) + sqrt7/2 f)^2 = Q1 Q2 e^{g}, c = (5,-2,3)",
    binomial_example_2,
)
_register("ex-trinomial-1", "2f^2 + 8f[5f(z+c) - 3f] + 3[5f(z+c) - 3f]^2 = e^{g}, c = (5,2,-3)", _trinomial_1)
_register("ex-trinomial-2", "3f^2 + 10f[3f(z+c) - 2f] + [3f(z+c) - 2f]^2 = e^{g}, c = (2,-3,1)", _trinomial_2)
_register(
    "rem35-case2-a",
    "3f + 2(sqrt3 f(z+c) + sqrt5 f) = e^{g/2}, periodic factor sin(2 pi ell)",
    _lr(9, 4, math.sqrt(3), math.sqrt(5), 1, 1, "sin", printed_K=-(3 + 2 * math.sqrt(5)) / (2 * math.sqrt(3))),
)
_register(
    "rem35-case2-b",
    "sqrt7 f + sqrt3 (2 f(z+c) - f) = -e^{g/2}, periodic factor cos(2 pi ell)",
    _lr(7, 3, 2, -1, 1, -1, "cos", printed_K=-(math.sqrt(7) - math.sqrt(3)) / (2 * math.sqrt(3))),
)
_register(
    "rem35-case2-c",
    "sqrt5 f - sqrt2 (3 f(z+c) - 2 f) = e^{g/2}, periodic factor sin(2 pi ell)",
    _lr(5, 2, 3, -2, -1, 1, "sin", printed_K=(math.sqrt(5) + 2 * math.sqrt(2)) / (3 * math.sqrt(2))),
)
_register(
    "rem35-case2-d",
    "sqrt2 f - sqrt3 (sqrt7 f(z+c) + sqrt11 f) = -e^{g/2}, periodic factor cos(2 pi ell)",
    _lr(2, 3, math.sqrt(7), math.sqrt(11), -1, -1, "cos", printed_K=(math.sqrt(2) - math.sqrt(33)) / math.sqrt(21)),
)
_register(
    "rem35-case1",
    "3f + 2(sqrt3 f(z+c) + sqrt5 f) = e^{g/2} with constant g",
    _lr(9, 4, math.sqrt(3), math.sqrt(5), 1, 1, "sin", g=MPoly.const(2, 0.7)),
)
_register(
    "rem35-case3",
    "3f + 2(sqrt3 f(z+c) + sqrt5 f) = e^{g/2} with g(z+c) - g(z) = 1",
    _lr(9, 4, math.sqrt(3), math.sqrt(5), 1, 1, "sin", g=_LR_ELL + _LR_W**2),
)
_register("binomial-ii-periodic-beta", "f = beta e^{L21} with c-periodic beta = z1 - z2", _binomial_single)
_register("pdde-i-cosine", "f(z+c)^2 + f'(z)^2 = 1 via two exponentials, c = pi", _pdde_cos)
_register("pdde-ii-single-exp", "f = e^{L1(z-c)} with solved constant r5", _pdde_single)
_register("trinomial-w0-i", "a f^2 + b G^2 = e^{g}, single exponential, prefactor (xi^2+1)/(2 xi sqrt a)", _w0_single)
_register("trinomial-w0-ii", "f^2 + f(z+c)^2 = e^{g}, two exponentials", _w0_two)
_register("circle-m2", "cos^2 h + sin^2 h = 1 with h = z1^2 z2", _circle)
_register("delta-c-nonexistence", "difference operator with non-constant P: degree bookkeeping forces p = 1/2", _delta_nonexistence)


@dataclass
class FixtureResult:
    fixture: Fixture
    rows: list[BranchRow]

    @property
    def passed(self) -> bool:
        return any(r.passed for r in self.rows)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "fixture": self.fixture.name,
            "provenance": self.fixture.provenance,
            "status": "PASS" if self.passed else "FAIL",
            "branches": [r.to_json() for r in self.rows],
        }


def run_fixture(name: str, cfg: SamplingConfig | None = None, branch: int | None = None) -> FixtureResult:
    fx = FIXTURES.get(name)
    if fx is None:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    cfg = cfg or SamplingConfig()
    try:
        rows = fx.build(cfg)
    except FermatForgeError as exc:
        rows = [_failed("build", exc)]
    if branch is not None:
        if not 0 <= branch < len(rows):
            raise IndexError(f"fixture {name} has {len(rows)} branches")
        rows = [rows[branch]]
    return FixtureResult(fx, rows)
