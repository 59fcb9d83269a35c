"""Sparse multivariate polynomials over the complex numbers.

Polynomials are immutable.  Terms are stored in graded lexicographic
order (highest total degree first) so that iteration and serialization
are deterministic.

Two thresholds govern which coefficients survive an operation:

* ``TAU_CANCEL``: a coefficient obtained by summing several contributions
  is treated as an exact zero when it is below ``TAU_CANCEL`` times the
  largest contribution.  This is what makes ``shift`` of a c-periodic
  polynomial a termwise fixed point in floating point.
* ``TAU_COEF``: after collection, coefficients below ``TAU_COEF`` times
  the largest surviving coefficient are dropped (scale-free cleanup).
"""

from __future__ import annotations

import cmath
import math
from numbers import Number
from operator import add
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    AxisOutOfRange,
    DimensionMismatch,
    MalformedInput,
    PeriodicityViolation,
)

TAU_COEF = 1e-14
TAU_CANCEL = 1e-12


def as_complex(x) -> complex:
    """Coerce a scalar to a finite Python complex."""
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite coefficient {z!r}")
    return z


def grlex_key(exps: Sequence[int]):
    return (-sum(exps), tuple(-e for e in exps))


def bilinear(u: Sequence[complex], v: Sequence[complex]) -> complex:
    """Complex bilinear pairing sum(u_i * v_i) (no conjugation)."""
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} != {len(v)}")
    total = 0j
    for a, b in zip(u, v):
        total += complex(a) * complex(b)
    return total


def _collect(n: int, pairs: Iterable[tuple[tuple[int, ...], complex]]) -> dict:
    acc: dict[tuple[int, ...], complex] = {}
    mag: dict[tuple[int, ...], float] = {}
    for e, v in pairs:
        if v == 0:
            continue
        acc[e] = acc.get(e, 0j) + v
        a = abs(v)
        if a > mag.get(e, 0.0):
            mag[e] = a
    out = {e: v for e, v in acc.items() if abs(v) > TAU_CANCEL * mag[e]}
    if out:
        big = max(abs(v) for v in out.values())
        out = {e: v for e, v in out.items() if abs(v) > TAU_COEF * big}
    return out


class MPoly:
    """Sparse polynomial in ``n`` complex variables.

    Parameters
    ----------
    n : int
        Ambient dimension.
    terms : mapping, optional
        Multi-index tuple -> coefficient.  Zero and negligible coefficients
        are dropped on construction.
    """

    __slots__ = ("n", "_terms", "_cache")

    def __init__(self, n: int, terms: Mapping[Sequence[int], Number] | None = None):
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        self.n = int(n)
        pairs = []
        for e, v in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != self.n:
                raise DimensionMismatch(f"multi-index {e} has length {len(e)}, expected {self.n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            pairs.append((e, as_complex(v)))
        self._set(_collect(self.n, pairs))

    def _set(self, d: dict) -> None:
        self._terms = {e: d[e] for e in sorted(d, key=grlex_key)}
        self._cache = None

    @classmethod
    def _raw(cls, n: int, d: dict) -> "MPoly":
        p = cls.__new__(cls)
        p.n = n
        p._set(d)
        return p

    @classmethod
    def _from_pairs(cls, n, pairs) -> "MPoly":
        return cls._raw(n, _collect(n, pairs))

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "MPoly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, value) -> "MPoly":
        v = as_complex(value)
        return cls._raw(n, {(0,) * n: v} if v != 0 else {})

    @classmethod
    def var(cls, n: int, i: int) -> "MPoly":
        if not 0 <= i < n:
            raise AxisOutOfRange(f"axis {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): 1 + 0j})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "MPoly":
        """The affine form ``sum(coeffs[i] * z_i) + const``."""
        n = len(coeffs)
        pairs = []
        for i, a in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            pairs.append((tuple(e), as_complex(a)))
        pairs.append(((0,) * n, as_complex(const)))
        return cls._from_pairs(n, pairs)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple[int, ...], complex]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    @property
    def constant_term(self) -> complex:
        return self._terms.get((0,) * self.n, 0j)

    def linear_coeffs(self) -> list[complex]:
        out = []
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            out.append(self._terms.get(tuple(e), 0j))
        return out

    def strip_constant(self) -> "MPoly":
        z = (0,) * self.n
        if z not in self._terms:
            return self
        return MPoly._raw(self.n, {e: v for e, v in self._terms.items() if e != z})

    def max_abs_coef(self) -> float:
        return max((abs(v) for v in self._terms.values()), default=0.0)

    def order_key(self):
        return tuple((grlex_key(e), v.real, v.imag) for e, v in self._terms.items())

    def equals(self, other: "MPoly", tol: float = 0.0) -> bool:
        """Termwise equality; ``tol`` is relative to max(1, |coef|)."""
        if self.n != other.n:
            return False
        if tol == 0.0:
            return self._terms == other._terms
        for e in set(self._terms) | set(other._terms):
            a = self._terms.get(e, 0j)
            b = other._terms.get(e, 0j)
            if abs(a - b) > tol * max(1.0, abs(a), abs(b)):
                return False
        return True

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        if not self._terms:
            return f"MPoly({self.n}, 0)"
        parts = []
        for e, v in self._terms.items():
            mono = "*".join(
                f"z{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"({v:.6g})" + (f"*{mono}" if mono else ""))
        return f"MPoly({self.n}, " + " + ".join(parts) + ")"

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "MPoly") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, Number):
            return MPoly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MPoly._from_pairs(self.n, [*self._terms.items(), *other._terms.items()])

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.n, {e: -v for e, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            s = as_complex(other)
            if s == 0:
                return MPoly.zero(self.n)
            return MPoly._from_pairs(self.n, [(e, v * s) for e, v in self._terms.items()])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        pairs = [
            (tuple(map(add, e1, e2)), v1 * v2)
            for e1, v1 in self._terms.items()
            for e2, v2 in other._terms.items()
        ]
        return MPoly._from_pairs(self.n, pairs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self * (1 / as_complex(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MPoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    @staticmethod
    def sum(polys: Sequence["MPoly"], n: int | None = None) -> "MPoly":
        """Sum with cancellation detection across all summands at once."""
        if not polys:
            if n is None:
                raise ValueError("empty sum needs n")
            return MPoly.zero(n)
        n = polys[0].n
        for p in polys:
            if p.n != n:
                raise DimensionMismatch("dimensions differ in sum")
        return MPoly._from_pairs(n, [kv for p in polys for kv in p._terms.items()])

    # -- calculus ---------------------------------------------------------
    def partial(self, i: int) -> "MPoly":
        if not 0 <= i < self.n:
            raise AxisOutOfRange(f"axis {i} out of range for n={self.n}")
        pairs = []
        for e, v in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                pairs.append((tuple(e2), v * e[i]))
        return MPoly._from_pairs(self.n, pairs)

    def directional(self, c: Sequence) -> "MPoly":
        """sum_i c_i * d/dz_i, collected jointly so that exact cancellations vanish."""
        if len(c) != self.n:
            raise DimensionMismatch(f"direction of length {len(c)} for n={self.n}")
        c = [as_complex(x) for x in c]
        pairs = []
        for e, v in self._terms.items():
            for i in range(self.n):
                if e[i] and c[i] != 0:
                    e2 = list(e)
                    e2[i] -= 1
                    pairs.append((tuple(e2), v * e[i] * c[i]))
        return MPoly._from_pairs(self.n, pairs)

    def shift(self, c: Sequence) -> "MPoly":
        """The polynomial z -> p(z + c), by the Taylor series in direction c."""
        if len(c) != self.n:
            raise DimensionMismatch(f"shift of length {len(c)} for n={self.n}")
        pieces = [self]
        term = self
        k = 1
        while True:
            term = term.directional(c)
            if term.is_zero:
                break
            term = term * (1.0 / k)
            pieces.append(term)
            k += 1
        if len(pieces) == 1:
            return self
        return MPoly.sum(pieces)

    # -- evaluation -------------------------------------------------------
    def _arrays(self):
        if self._cache is None:
            if self._terms:
                E = np.array(list(self._terms.keys()), dtype=np.int64).reshape(-1, self.n)
                C = np.array(list(self._terms.values()), dtype=complex)
            else:
                E = np.zeros((0, self.n), dtype=np.int64)
                C = np.zeros(0, dtype=complex)
            self._cache = (E, C)
        return self._cache

    def eval_many(self, Z) -> np.ndarray:
        """Evaluate at each row of an (N, n) array of points."""
        Z = np.asarray(Z, dtype=complex)
        if Z.ndim == 1:
            Z = Z.reshape(1, -1)
        if Z.shape[1] != self.n:
            raise DimensionMismatch(f"points have {Z.shape[1]} coordinates, expected {self.n}")
        E, C = self._arrays()
        N = Z.shape[0]
        if not len(C):
            return np.zeros(N, dtype=complex)
        maxdeg = int(E.max()) if E.size else 0
        table = np.ones((N, self.n, maxdeg + 1), dtype=complex)
        for k in range(1, maxdeg + 1):
            table[:, :, k] = table[:, :, k - 1] * Z
        mono = table[:, np.arange(self.n)[None, :], E].prod(axis=2)
        return mono @ C

    def abs_eval_many(self, Z) -> np.ndarray:
        """sum |coef| |z^I| at each point; the natural scale for relative errors."""
        Z = np.abs(np.asarray(Z, dtype=complex))
        if Z.ndim == 1:
            Z = Z.reshape(1, -1)
        E, C = self._arrays()
        if not len(C):
            return np.zeros(Z.shape[0])
        mono = np.prod(Z[:, None, :] ** E[None, :, :], axis=2)
        return mono @ np.abs(C)

    def __call__(self, z) -> complex:
        return complex(self.eval_many(np.asarray(z, dtype=complex).reshape(1, -1))[0])

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"exps": list(e), "re": v.real, "im": v.imag} for e, v in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "MPoly":
        try:
            n = obj["n"]
            if not isinstance(n, int) or isinstance(n, bool):
                raise MalformedInput(f"MPoly 'n' must be an integer, got {n!r}")
            terms = {}
            for t in obj["terms"]:
                e = tuple(t["exps"])
                if not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
                    raise MalformedInput(f"non-integer exponents {t['exps']!r}")
                terms[e] = terms.get(e, 0j) + complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
            return cls(n, terms)
        except MalformedInput:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad MPoly JSON: {exc}") from exc


# -- module-level operations ------------------------------------------------


def poly_eval(p: MPoly, z: Sequence) -> complex:
    if len(z) != p.n:
        raise DimensionMismatch(f"point of length {len(z)} for n={p.n}")
    return p(z)


def poly_shift(p: MPoly, c: Sequence) -> MPoly:
    return p.shift(c)


def poly_partial(p: MPoly, i: int) -> MPoly:
    return p.partial(i)


def is_periodic(p: MPoly, c: Sequence) -> bool:
    """True when shift by c leaves p unchanged termwise."""
    return p.shift(c).equals(p)


def periodic_direction(c: Sequence, i: int | None = None, j: int | None = None) -> list[complex]:
    """A direction d with d.c == 0 exactly: d_i = c_j, d_j = -c_i, zeros elsewhere.

    By default ``i`` is the first axis with ``c_i != 0`` and ``j`` the next axis.
    """
    c = [as_complex(x) for x in c]
    n = len(c)
    if n < 2:
        raise DimensionMismatch("non-constant periodic polynomials need n >= 2")
    if i is None:
        i = next((k for k, x in enumerate(c) if x != 0), 0)
    if j is None:
        j = (i + 1) % n
    if i == j:
        raise ValueError("i and j must differ")
    d = [0j] * n
    d[i] = c[j]
    d[j] = -c[i]
    return d


def make_periodic(d: Sequence, c: Sequence, coeffs: Sequence) -> MPoly:
    """Expand H(s) = sum_k coeffs[k] * s^k with s = d.z, requiring d.c == 0 exactly."""
    if len(d) != len(c):
        raise DimensionMismatch(f"direction length {len(d)} != shift length {len(c)}")
    pairing = bilinear(d, c)
    if pairing != 0:
        raise PeriodicityViolation(f"d.c = {pairing!r} is not exactly zero")
    n = len(d)
    s = MPoly.linear(d)
    result = MPoly.zero(n)
    power = MPoly.const(n, 1)
    for k, a in enumerate(coeffs):
        if k:
            power = power * s
        a = as_complex(a)
        if a != 0:
            result = result + power * a
    return result


def linear_value(p: MPoly, c: Sequence) -> complex:
    """L(c) for the homogeneous linear part of p."""
    return bilinear(p.linear_coeffs(), c)


def principal_log(x) -> complex:
    return cmath.log(as_complex(x))
