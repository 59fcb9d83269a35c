import itertools

import numpy as np
import pytest

from fermat_forge.algebra import MPoly
from fermat_forge.errors import DegenerateGrid
from fermat_forge.expfun import ExpPoly
from fermat_forge.growth import estimate_order, structural_order

from strategies import random_exppoly

z = MPoly.var(1, 0)
x, y = MPoly.var(2, 0), MPoly.var(2, 1)


def test_structural_examples():
    assert structural_order(ExpPoly.const(2, 3)) == 0
    assert structural_order(ExpPoly.exp(x * y)) == 2
    assert structural_order(ExpPoly.exp(x**3, y) + ExpPoly.exp(y)) == 3


def test_structural_product_rule_brute_force():
    rng = np.random.default_rng(31)
    for _ in range(20):
        f, g = random_exppoly(rng, 2, expo_deg=3), random_exppoly(rng, 2, expo_deg=3)
        prod = f * g
        pairs = [(s.expo + t.expo).degree for s, t in itertools.product(f.terms, g.terms)]
        assert structural_order(prod) <= max(max(pairs), 0)
        assert structural_order(prod) <= max(structural_order(f), structural_order(g))


def test_structural_shift_invariance():
    rng = np.random.default_rng(32)
    for _ in range(20):
        f = random_exppoly(rng, 3, expo_deg=4)
        assert structural_order(f.shift((0.3, -1j, 2))) == structural_order(f)


def test_exp_z_order_one():
    est = estimate_order(ExpPoly.exp(z), 2, 50)
    assert abs(est.numeric - 1) <= 0.1


def test_cos_order_one():
    # the constant offset log 2 in log M(r) = r - log 2 biases short ranges upward
    est = estimate_order(ExpPoly.cos(z), 5, 200)
    assert abs(est.numeric - 1) <= 0.1


def test_degree_three_two_variables():
    f = ExpPoly.exp(x**3 + x * y**2, 2) + ExpPoly.exp(y, 1)
    est = estimate_order(f, 2, 20, samples_per_radius=512)
    assert est.structural == 3
    assert abs(est.numeric - 3) <= 0.3


def test_monotone_in_degree():
    slopes = [estimate_order(ExpPoly.exp(x**d + y), 2, 20).numeric for d in (1, 2, 3)]
    assert slopes == sorted(slopes)


def test_degenerate_grids():
    f = ExpPoly.exp(z)
    with pytest.raises(DegenerateGrid):
        estimate_order(f, n_radii=2)
    with pytest.raises(DegenerateGrid):
        estimate_order(f, r_min=1.0)
    with pytest.raises(DegenerateGrid):
        estimate_order(ExpPoly.zero(1))


def test_deterministic_and_csv():
    f = ExpPoly.exp(x * y)
    a, b = estimate_order(f, seed=5), estimate_order(f, seed=5)
    assert a == b
    lines = a.to_csv().splitlines()
    assert lines[0] == "r,log_r,log_log_M"
    assert len(lines) == 1 + len(a.slope_points)
    assert a.to_json()["r_grid"]["n_radii"] == 8
