import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat_forge.algebra import (
    TAU_COEF,
    MPoly,
    is_periodic,
    make_periodic,
    periodic_direction,
    poly_eval,
    poly_partial,
    poly_shift,
)
from fermat_forge.errors import AxisOutOfRange, DimensionMismatch, MalformedInput, PeriodicityViolation

from oracles import central_difference, poly_abs_scale, poly_direct
from strategies import mpolys, points, random_mpoly, random_point, shifts

z1, z2, z3 = (MPoly.var(3, i) for i in range(3))


def _monomials(n, deg):
    return [e for d in range(max(deg, 0) + 1) for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]


def test_eval_examples():
    p = MPoly.var(2, 0) ** 2 + MPoly.var(2, 1)
    assert poly_eval(p, (2, 3)) == 7
    assert poly_eval(MPoly.const(3, 1), (5, -2, 1j)) == 1
    w = (2 * z1 + z2 - z3) ** 5
    assert poly_eval(w, (2, -1, 3)) == 0


def test_shift_binomial_expansion():
    p = MPoly.var(2, 0) ** 2
    expected = MPoly.var(2, 0) ** 2 + MPoly.var(2, 0) * 2 + 1
    assert poly_shift(p, (1, 0)).equals(expected)


def test_partial_examples():
    p = MPoly.var(2, 0) ** 2 * MPoly.var(2, 1)
    assert poly_partial(p, 0).equals(MPoly.var(2, 0) * MPoly.var(2, 1) * 2)
    assert poly_partial(MPoly.const(2, 5), 1).is_zero
    with pytest.raises(AxisOutOfRange):
        p.partial(2)


def test_printed_direction_is_periodic():
    c = (2, -1, 3)
    H = make_periodic((1, 2 + 3j, 1j), c, [0, 1, 0, 0.5, 0, 0, 0, 0, 0, 0, 1])
    assert H.degree == 10
    assert is_periodic(H, c)
    assert poly_shift(H, c).equals(H)


def test_make_periodic_rejects_nonorthogonal():
    with pytest.raises(PeriodicityViolation):
        make_periodic((1, 1), (1, 1), [0, 1])


def test_periodic_direction_cancels_exactly():
    c = (0.3 + 0.1j, -1.7, 2.2j)
    d = periodic_direction(c)
    assert sum(a * b for a, b in zip(d, c)) == 0
    H = make_periodic(d, c, [1, 2, 3, 4])
    assert is_periodic(H, c)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_shift_matches_direct_evaluation(data):
    p = data.draw(mpolys())
    c = data.draw(shifts(p.n))
    z = data.draw(points(p.n))
    zc = [a + b for a, b in zip(z, c)]
    shifted = poly_shift(p, c)
    got = poly_eval(shifted, z)
    want = poly_direct(p, zc)
    # normalization may drop terms below TAU_COEF times the largest coefficient
    dropped = TAU_COEF * max((abs(v) for _, v in shifted.items()), default=0.0) * sum(
        np.prod([abs(zi) ** k for zi, k in zip(z, e)]) for e in _monomials(p.n, p.degree)
    )
    assert abs(got - want) <= 1e-12 * poly_abs_scale(p, zc) + dropped


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_shift_composition_and_commutation(data):
    p = data.draw(mpolys(max_deg=4))
    c = data.draw(shifts(p.n))
    twice = poly_shift(poly_shift(p, c), c)
    assert twice.equals(poly_shift(p, tuple(2 * x for x in c)), tol=1e-9)
    i = data.draw(st.integers(0, p.n - 1))
    assert poly_partial(poly_shift(p, c), i).equals(poly_shift(poly_partial(p, i), c), tol=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_leibniz(data):
    p = data.draw(mpolys(max_deg=3))
    q = data.draw(mpolys(n=p.n, max_deg=3))
    i = data.draw(st.integers(0, p.n - 1))
    assert (p * q).partial(i).equals(p.partial(i) * q + p * q.partial(i), tol=1e-10)


def test_partial_matches_finite_difference():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        p = random_mpoly(rng, n)
        z = random_point(rng, n)
        i = int(rng.integers(0, n))
        exact = poly_eval(p.partial(i), z)
        fd = central_difference(lambda w: poly_direct(p, w), z, i)
        scale = max(poly_abs_scale(p.partial(i), z), 1e-300)
        assert abs(fd - exact) <= 1e-6 * scale


def test_periodic_sampled():
    rng = np.random.default_rng(3)
    for _ in range(10):
        c = tuple(complex(*rng.standard_normal(2)) for _ in range(3))
        d = periodic_direction(c, 0, 2)
        H = make_periodic(d, c, [0, 0, 0, 1])
        for _ in range(10):
            z = random_point(rng, 3)
            zc = [a + b for a, b in zip(z, c)]
            assert abs(poly_direct(H, zc) - poly_direct(H, z)) <= 1e-12 * max(1.0, poly_abs_scale(H, z))


def test_normalization_drops_tiny_and_cancels():
    p = MPoly(1, {(1,): 1.0, (0,): 1e-20})
    assert len(p) == 1
    assert (MPoly.var(2, 0) - MPoly.var(2, 0)).is_zero


def test_grlex_order_and_json_roundtrip():
    p = MPoly(2, {(0, 1): 1, (2, 0): 2j, (1, 1): -3, (0, 0): 4})
    assert [sum(e) for e in p.terms] == [2, 2, 1, 0]
    assert MPoly.from_json(p.to_json()) == p


def test_json_errors():
    with pytest.raises(MalformedInput):
        MPoly.from_json({"n": 2, "terms": [{"exps": [1.5, 0], "re": 1}]})
    with pytest.raises(MalformedInput):
        MPoly.from_json({"terms": []})


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        MPoly.var(2, 0) + MPoly.var(3, 0)
    with pytest.raises(DimensionMismatch):
        MPoly.var(2, 0).shift((1, 2, 3))
