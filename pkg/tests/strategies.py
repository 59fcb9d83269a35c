"""Hypothesis strategies and seeded generators for random test instances."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from fermat_forge.algebra import MPoly
from fermat_forge.expfun import ExpPoly, ExpTerm

finite = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)


@st.composite
def mpolys(draw, n=None, max_deg=6, max_terms=6):
    n = draw(st.integers(1, 4)) if n is None else n
    k = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(k):
        deg = draw(st.integers(0, max_deg))
        exps = [0] * n
        for _ in range(deg):
            exps[draw(st.integers(0, n - 1))] += 1
        terms[tuple(exps)] = draw(cplx)
    return MPoly(n, terms)


@st.composite
def shifts(draw, n):
    return tuple(draw(st.lists(cplx, min_size=n, max_size=n)))


@st.composite
def points(draw, n, radius=1.5):
    return [complex(draw(st.floats(-radius, radius)), draw(st.floats(-radius, radius))) for _ in range(n)]


def random_mpoly(rng: np.random.Generator, n: int, max_deg: int = 6, n_terms: int = 5, scale: float = 1.0) -> MPoly:
    terms = {}
    for _ in range(n_terms):
        deg = int(rng.integers(0, max_deg + 1))
        exps = np.zeros(n, dtype=int)
        for _ in range(deg):
            exps[rng.integers(0, n)] += 1
        terms[tuple(int(e) for e in exps)] = complex(*(scale * rng.standard_normal(2)))
    return MPoly(n, terms)


def random_exppoly(rng: np.random.Generator, n: int, n_terms: int = 3, expo_deg: int = 2) -> ExpPoly:
    """Moderate exponents (coefficients ~0.3) so values stay representable."""
    terms = []
    for _ in range(n_terms):
        coef = random_mpoly(rng, n, max_deg=2, n_terms=2)
        expo = random_mpoly(rng, n, max_deg=expo_deg, n_terms=3, scale=0.3)
        terms.append(ExpTerm(coef, expo))
    return ExpPoly(n, terms)


def random_point(rng: np.random.Generator, n: int, radius: float = 1.5) -> list[complex]:
    return [complex(*(radius * (2 * rng.random(2) - 1))) for _ in range(n)]
