"""Growth order of exponential polynomials, structurally and by sampling.

The numeric estimate uses the maximum modulus: on the torus |z_i| = r the
largest sampled log|f| stands in for log M(r), and the order is the
least-squares slope of log log M(r) against log r.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from ._codec import SCHEMA
from .errors import DegenerateGrid
from .expfun import ExpPoly


def structural_order(f: ExpPoly) -> int:
    """Largest total degree among the exponents of ``f`` (0 for polynomials)."""
    return max((max(t.expo.degree, 0) for t in f.terms if not t.coef.is_zero), default=0)


@dataclass(frozen=True)
class OrderEstimate:
    structural: int
    numeric: float
    slope_points: tuple
    r_min: float
    r_max: float
    n_radii: int
    samples_per_radius: int
    seed: int

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "structural": self.structural,
            "numeric": self.numeric,
            "r_grid": {"r_min": self.r_min, "r_max": self.r_max, "n_radii": self.n_radii, "spacing": "geometric"},
            "samples_per_radius": self.samples_per_radius,
            "seed": self.seed,
            "slope_points": [list(p) for p in self.slope_points],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "log_r", "log_log_M"])
        for log_r, llm in self.slope_points:
            w.writerow([repr(math.exp(log_r)), repr(log_r), repr(llm)])
        return buf.getvalue()


def torus_points(n: int, r: float, samples: int, rng: np.random.Generator) -> np.ndarray:
    theta = 2 * np.pi * rng.random((samples, n))
    return r * np.exp(1j * theta)


def estimate_order(
    f: ExpPoly,
    r_min: float = 2.0,
    r_max: float = 20.0,
    n_radii: int = 8,
    samples_per_radius: int = 512,
    seed: int = 0,
) -> OrderEstimate:
    """Slope of log log M(r) against log r over a geometric radius grid."""
    if n_radii < 3:
        raise DegenerateGrid("need at least 3 radii")
    if not 1 < r_min < r_max:
        raise DegenerateGrid("need 1 < r_min < r_max")
    if f.is_zero:
        raise DegenerateGrid("the zero function has no order")
    rng = np.random.default_rng(seed)
    radii = np.geomspace(r_min, r_max, n_radii)
    points = []
    for r in radii:
        logmag, _, _ = f.eval_log_many(torus_points(f.n, float(r), samples_per_radius, rng))
        log_m = float(np.max(logmag))
        # log log M is only defined once M exceeds e
        if log_m > 0:
            points.append((math.log(r), math.log(log_m)))
    if len(points) >= 2:
        x, y = np.array(points).T
        numeric = float(np.polyfit(x, y, 1)[0])
    else:
        numeric = 0.0
    return OrderEstimate(
        structural_order(f), numeric, tuple(points), float(r_min), float(r_max), n_radii, samples_per_radius, seed
    )
