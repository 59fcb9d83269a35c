"""Acceptance criteria, one test each.  Each test appends a PASS/FAIL line
that the terminal summary prints at the end of the run."""

import cmath
import math
import time

import numpy as np
import pytest

from fermat_forge.algebra import MPoly
from fermat_forge.equations import BinomialDiff, diagnose, omega_roots, verify
from fermat_forge.expfun import ExpPoly, SamplingConfig
from fermat_forge.fixtures import run_fixture
from fermat_forge.growth import estimate_order, structural_order
from fermat_forge.solutions import construct_linear_reduced, solve_linear_exponent, solve_xi

from oracles import central_difference, ep_direct, ep_term_scale, poly_abs_scale, poly_direct
from strategies import random_exppoly, random_mpoly, random_point

PI = math.pi
CFG = SamplingConfig(n_points=200, seed=0, radius=1.5)


def record(log, number, title, ok, detail=""):
    log.append(f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'}{'  ' + detail if detail else ''}")
    assert ok, detail


def test_1_sine_identity(acceptance_log):
    t0 = time.perf_counter()
    res = run_fixture("thm11-sine", CFG)
    dt = time.perf_counter() - t0
    row = res.rows[0]
    ok = row.symbolic_zero and dt < 0.1
    record(acceptance_log, 1, "sine shift identity", ok, f"symbolic_zero={row.symbolic_zero} time={dt:.4f}s")


def test_2_quadratic_factorization(acceptance_log):
    rng = np.random.default_rng(2024)
    worst_fact = worst_prod = worst_sum = 0.0
    draws = 0
    while draws < 1000:
        a, b, om, F, G = (complex(*rng.standard_normal(2)) for _ in range(5))
        if abs(om * om - a * b) < 1e-6 * max(abs(om * om), abs(a * b)):
            continue
        draws += 1
        r = omega_roots(a, b, om)
        lhs = a * F * F + 2 * om * F * G + b * G * G
        rhs = (r.sqrt_a * F - r.w1 * r.sqrt_b * G) * (r.sqrt_a * F - r.w2 * r.sqrt_b * G)
        scale = abs(a * F * F) + abs(2 * om * F * G) + abs(b * G * G)
        worst_fact = max(worst_fact, abs(lhs - rhs) / scale)
        worst_prod = max(worst_prod, abs(r.w1 * r.w2 - 1))
        target = -2 * om / r.sab
        worst_sum = max(worst_sum, abs(r.w1 + r.w2 - target) / max(abs(r.w1) + abs(r.w2), 1.0))
    ok = max(worst_fact, worst_prod, worst_sum) <= 1e-12
    record(
        acceptance_log, 2, "quadratic form factorization", ok,
        f"draws=1000 factor={worst_fact:.2e} product={worst_prod:.2e} sum={worst_sum:.2e}",
    )


def test_3_binomial_example(acceptance_log):
    t0 = time.perf_counter()
    res = run_fixture("ex-binomial-1", CFG)
    dt = time.perf_counter() - t0
    passing = [r for r in res.rows if r.passed and r.max_rel_residual <= 1e-8]
    gaps = [r.detail["half_total_gap"] for r in passing]
    ok = bool(passing) and min(gaps) <= 1e-12 and dt < 5
    record(
        acceptance_log, 3, "binomial worked example", ok,
        f"passing={[r.branch for r in passing]} exponent_gap={min(gaps, default=math.inf):.2e} time={dt:.3f}s",
    )


def test_4_trinomial_examples(acceptance_log):
    parts, ok = [], True
    for name in ("ex-trinomial-1", "ex-trinomial-2"):
        t0 = time.perf_counter()
        res = run_fixture(name, CFG)
        dt = time.perf_counter() - t0
        best = min(r.max_rel_residual for r in res.rows)
        good = any(r.passed and r.max_rel_residual <= 1e-8 for r in res.rows) and dt < 5
        ok &= good
        parts.append(f"{name}: best={best:.2e} time={dt:.3f}s")
    record(acceptance_log, 4, "trinomial worked examples", ok, "; ".join(parts))


def test_5_order_claims(acceptance_log):
    orders = []
    for name in ("ex-binomial-1", "ex-binomial-2"):
        row = next(r for r in run_fixture(name, CFG).rows if r.passed)
        orders.append(structural_order(row.bundle.f))
    x, y = MPoly.var(2, 0), MPoly.var(2, 1)
    synthetic = [
        ExpPoly.exp(x + 2 * y, 1),
        ExpPoly.exp(x * y, 1) + ExpPoly.exp(x, 2),
        ExpPoly.exp(x**3 + x * y**2, 2) + ExpPoly.exp(y, 1),
        ExpPoly.exp(x**4 - y**3, 1),
    ]
    rel = []
    for f in synthetic:
        est = estimate_order(f, 2, 20, samples_per_radius=512)
        rel.append(abs(est.numeric - est.structural) / est.structural)
    ok = orders == [10, 13] and max(rel) <= 0.1
    record(acceptance_log, 5, "growth order", ok, f"structural={orders} worst_rel_slope_error={max(rel):.3f}")


def test_6_nonexistence_grid(acceptance_log):
    rng = np.random.default_rng(6)
    hits = 0
    for i in range(50):
        P = random_mpoly(rng, 2, max_deg=4, n_terms=3)
        if P.degree < 1:
            P = P + MPoly.var(2, 0)
        Q = random_mpoly(rng, 2, max_deg=3, n_terms=2)
        if Q.is_zero:
            Q = MPoly.const(2, 1)
        c = tuple(complex(*rng.standard_normal(2)) for _ in range(2))
        if i % 2 == 0:
            spec = BinomialDiff(1.5, 2, P, Q, MPoly.zero(2), 1, -1, c)
            v = diagnose(spec)
            good = v.kind == "NoFiniteOrderSolution" and v.certificate.get("forced_p") == 0.5
        else:
            a1, a0 = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
            spec = BinomialDiff(1.5, 2, P, Q, MPoly.zero(2), a1, a0, c)
            v = diagnose(spec)
            good = v.kind == "NoFiniteOrderSolution" and v.family == "binomial-difference"
        hits += good
    record(acceptance_log, 6, "non-existence diagnosis", hits == 50, f"{hits}/50 cases")


def test_7_kernel_oracles(acceptance_log):
    rng = np.random.default_rng(7)
    shift_worst = deriv_worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 5))
        p = random_mpoly(rng, n)
        c, z = random_point(rng, n), random_point(rng, n)
        zc = [u + v for u, v in zip(z, c)]
        shift_worst = max(shift_worst, abs(p.shift(c)(z) - poly_direct(p, zc)) / max(poly_abs_scale(p, zc), 1e-300))
        i = int(rng.integers(0, n))
        fd = central_difference(lambda w: poly_direct(p, w), z, i)
        deriv_worst = max(deriv_worst, abs(p.partial(i)(z) - fd) / max(poly_abs_scale(p.partial(i), z), 1e-300))
    ep_shift_worst = ep_deriv_worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 4))
        f = random_exppoly(rng, n)
        c, z = random_point(rng, n, 1.0), random_point(rng, n)
        zc = [u + v for u, v in zip(z, c)]
        ep_shift_worst = max(ep_shift_worst, abs(f.shift(c)(z) - ep_direct(f, zc)) / ep_term_scale(f, zc))
        i = int(rng.integers(0, n))
        fd = central_difference(lambda w: ep_direct(f, w), z, i)
        scale = ep_term_scale(f.partial(i), z) + ep_term_scale(f, z)
        ep_deriv_worst = max(ep_deriv_worst, abs(f.partial(i)(z) - fd) / scale)
    # shift results round to the term scale; 1e-12 relative is the stated budget
    ok = max(shift_worst, ep_shift_worst) <= 1e-12 and max(deriv_worst, ep_deriv_worst) <= 1e-6
    record(
        acceptance_log, 7, "kernel oracles", ok,
        f"poly shift={shift_worst:.1e} deriv={deriv_worst:.1e}; exp shift={ep_shift_worst:.1e} deriv={ep_deriv_worst:.1e}",
    )


def test_8_linear_reduction_examples(acceptance_log):
    c, ell, w = (1, 2), MPoly.linear([1, 0]), MPoly.linear([2, -1])
    periodic = ExpPoly.sin(ell * (2 * PI))
    g = w + w**2 + 0.25
    examples = {
        "a": (9, 4, math.sqrt(3), math.sqrt(5), 1, 1),
        "b": (7, 3, 2, -1, 1, -1),
        "c": (5, 2, 3, -2, -1, 1),
        "d": (2, 3, math.sqrt(7), math.sqrt(11), -1, -1),
    }
    worst, ok = 0.0, True
    for a, b, g1, g2, sb, sr in examples.values():
        bund = construct_linear_reduced(a, b, g1, g2, c, ell, periodic, g, sb, sr)
        rep = verify(bund.spec, bund.f, CFG)
        worst = max(worst, rep.max_rel_residual)
        ok &= rep.passed and rep.max_rel_residual <= 1e-9
    record(acceptance_log, 8, "linear reduction examples", ok, f"4 examples, worst residual={worst:.1e}")


def test_9_round_trip_solvers(acceptance_log):
    rng = np.random.default_rng(9)
    xi_worst, done = 0.0, 0
    while done < 100:
        a, b, om, g1, g2, Lc = (complex(*rng.standard_normal(2)) for _ in range(6))
        if abs(om * om - a * b) < 1e-3 or abs(g1) < 1e-2:
            continue
        r = solve_xi(a, b, om, g1, g2, Lc)
        roots = omega_roots(a, b, om)
        t = g1 * cmath.exp(Lc / 2) + g2
        X = r.value**2
        num = roots.w1 * roots.sqrt_b * t - roots.sqrt_a
        den = roots.w2 * roots.sqrt_b * t - roots.sqrt_a
        xi_worst = max(xi_worst, abs(X * den - num) / (abs(X * den) + abs(num)))
        done += 1
    lin_worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        c = random_point(rng, n)
        target = complex(*rng.standard_normal(2))
        k = int(rng.integers(-3, 4))
        base = random_mpoly(rng, n, max_deg=1, n_terms=2)
        (res,) = solve_linear_exponent(target, c, (k,), base)
        z = random_point(rng, n)
        zc = [u + v for u, v in zip(z, c)]
        Lc = poly_direct(res.value, zc) - poly_direct(res.value, z)
        lin_worst = max(lin_worst, abs(cmath.exp(Lc) - target) / abs(target))
        lin_worst = max(lin_worst, abs(Lc - cmath.log(target) - 2j * PI * k) / abs(Lc))
    ok = xi_worst <= 1e-12 and lin_worst <= 1e-12
    record(acceptance_log, 9, "round-trip solvers", ok, f"xi={xi_worst:.1e} linear={lin_worst:.1e}")
