"""Exponential polynomials: finite sums of ``Q_j(z) * exp(h_j(z))``.

The canonical form keeps exponents free of constant terms (``exp(const)``
is folded into the coefficient), merges terms whose exponents agree up to
``TAU_EXPO`` and orders terms by exponent, then coefficient.  Identity
checking is then structural: an expression is identically zero exactly
when its canonical form is empty.

Evaluation happens in the log domain so that ``exp(h)`` with high-degree
``h`` never overflows while the final value is still representable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number
from typing import Sequence

import numpy as np

from .algebra import MPoly, as_complex
from .errors import (
    DimensionMismatch,
    MalformedInput,
    NotSingleExponential,
    OverflowInFold,
    TotalOverflow,
)

TAU_EXPO = 1e-10
TAU_RES = 1e-9
FOLD_LIMIT = 700.0
_LOG_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class ExpTerm:
    coef: MPoly
    expo: MPoly


@dataclass(frozen=True)
class LogValue:
    """A complex number ``exp(logmag + 1j * phase)``; phase in (-pi, pi]."""

    logmag: float
    phase: float

    @classmethod
    def of(cls, logmag, phase) -> "LogValue":
        ph = math.remainder(float(phase), 2 * math.pi)
        if ph <= -math.pi:
            ph += 2 * math.pi
        return cls(float(logmag), ph)

    def to_complex(self) -> complex:
        if self.logmag > _LOG_MAX:
            raise TotalOverflow("value exceeds double range", log=self)
        return cmath.rect(math.exp(self.logmag), self.phase) if self.logmag > -math.inf else 0j


@dataclass(frozen=True)
class SamplingConfig:
    n_points: int = 200
    seed: int = 0
    radius: float = 1.5
    tol: float = TAU_RES

    def __post_init__(self):
        if self.n_points <= 0 or self.radius <= 0 or self.tol <= 0:
            raise ValueError("n_points, radius and tol must be positive")


def sample_polydisc(n: int, n_points: int, radius: float, seed: int) -> np.ndarray:
    """Uniform samples from the polydisc of the given radius, shape (n_points, n)."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random((n_points, n)))
    theta = 2 * np.pi * rng.random((n_points, n))
    return r * np.exp(1j * theta)


def _expo_close(p: MPoly, q: MPoly) -> bool:
    if p.terms.keys() != q.terms.keys():
        return False
    for e, a in p.items():
        b = q.terms[e]
        if abs(a - b) > TAU_EXPO * max(1.0, abs(a), abs(b)):
            return False
    return True


def _fold(coef: MPoly, expo: MPoly) -> ExpTerm:
    k = expo.constant_term
    if k == 0:
        return ExpTerm(coef, expo)
    if abs(k.real) > FOLD_LIMIT:
        raise OverflowInFold(f"folding exp({k}) would overflow; rescale the exponent")
    return ExpTerm(coef * cmath.exp(k), expo.strip_constant())


def _normalize(n: int, terms: Sequence[ExpTerm]) -> tuple[ExpTerm, ...]:
    folded = []
    for t in terms:
        if t.coef.is_zero:
            continue
        folded.append(_fold(t.coef, t.expo))
    folded.sort(key=lambda t: t.expo.order_key())
    buckets: dict[tuple, list[tuple[MPoly, list[MPoly]]]] = {}
    order = []
    for t in folded:
        support = tuple(t.expo.terms.keys())
        groups = buckets.setdefault(support, [])
        for rep, coefs in groups:
            if _expo_close(rep, t.expo):
                coefs.append(t.coef)
                break
        else:
            groups.append((t.expo, [t.coef]))
            order.append((support, len(groups) - 1))
    out = []
    for support, idx in order:
        rep, coefs = buckets[support][idx]
        coef = coefs[0] if len(coefs) == 1 else MPoly.sum(coefs)
        if not coef.is_zero:
            out.append(ExpTerm(coef, rep))
    out.sort(key=lambda t: (t.expo.order_key(), t.coef.order_key()))
    return tuple(out)


class ExpPoly:
    """A sum of ``coef * exp(expo)`` terms in ``n`` variables.

    By default the terms are normalized.  ``normalize=False`` keeps them
    verbatim, which is only meant for reference scales in residual checks.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Sequence[ExpTerm] = (), normalize: bool = True):
        self.n = int(n)
        for t in terms:
            if t.coef.n != self.n or t.expo.n != self.n:
                raise DimensionMismatch("term dimension differs from ExpPoly dimension")
        self.terms = _normalize(self.n, terms) if normalize else tuple(terms)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "ExpPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, value) -> "ExpPoly":
        return cls(n, [ExpTerm(MPoly.const(n, value), MPoly.zero(n))])

    @classmethod
    def from_poly(cls, q: MPoly) -> "ExpPoly":
        return cls(q.n, [ExpTerm(q, MPoly.zero(q.n))])

    @classmethod
    def exp(cls, h: MPoly, coef=1) -> "ExpPoly":
        """``coef * exp(h)``; ``coef`` may be a scalar or an MPoly."""
        if not isinstance(coef, MPoly):
            coef = MPoly.const(h.n, coef)
        return cls(h.n, [ExpTerm(coef, h)])

    @classmethod
    def cos(cls, h: MPoly) -> "ExpPoly":
        return cls(h.n, [ExpTerm(MPoly.const(h.n, 0.5), h * 1j), ExpTerm(MPoly.const(h.n, 0.5), h * -1j)])

    @classmethod
    def sin(cls, h: MPoly) -> "ExpPoly":
        return cls(h.n, [ExpTerm(MPoly.const(h.n, -0.5j), h * 1j), ExpTerm(MPoly.const(h.n, 0.5j), h * -1j)])

    @classmethod
    def concat(cls, parts: Sequence["ExpPoly"], normalize: bool = True) -> "ExpPoly":
        if not parts:
            raise ValueError("nothing to concatenate")
        n = parts[0].n
        for p in parts:
            if p.n != n:
                raise DimensionMismatch("dimensions differ")
        return cls(n, [t for p in parts for t in p.terms], normalize=normalize)

    # -- inspection -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"ExpPoly(n={self.n}, terms={len(self.terms)})"

    def equals(self, other: "ExpPoly", tol: float = 0.0) -> bool:
        if self.n != other.n or len(self.terms) != len(other.terms):
            return False
        return all(
            a.expo.equals(b.expo, tol) and a.coef.equals(b.coef, tol)
            for a, b in zip(self.terms, other.terms)
        )

    def max_expo_degree(self) -> int:
        return max((max(t.expo.degree, 0) for t in self.terms), default=0)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            if other.n != self.n:
                raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")
            return other
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")
            return ExpPoly.from_poly(other)
        if isinstance(other, Number):
            return ExpPoly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExpPoly(self.n, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly(self.n, [ExpTerm(-t.coef, t.expo) for t in self.terms], normalize=False)

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
            return ExpPoly(self.n, [ExpTerm(t.coef * s, t.expo) for t in self.terms])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prods = [
            ExpTerm(a.coef * b.coef, a.expo + b.expo) for a in self.terms for b in other.terms
        ]
        return ExpPoly(self.n, prods)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self * (1 / as_complex(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = ExpPoly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, c: Sequence) -> "ExpPoly":
        if len(c) != self.n:
            raise DimensionMismatch(f"shift of length {len(c)} for n={self.n}")
        return ExpPoly(self.n, [ExpTerm(t.coef.shift(c), t.expo.shift(c)) for t in self.terms])

    def partial(self, i: int) -> "ExpPoly":
        return ExpPoly(
            self.n,
            [ExpTerm(t.coef.partial(i) + t.coef * t.expo.partial(i), t.expo) for t in self.terms],
        )

    def halve_exponent(self) -> "ExpPoly":
        """exp(h) -> exp(h / 2) with the principal square root of the coefficient."""
        if len(self.terms) != 1 or not self.terms[0].coef.is_constant:
            raise NotSingleExponential("need a single term with a constant coefficient")
        t = self.terms[0]
        root = cmath.sqrt(t.coef.constant_term)
        return ExpPoly(self.n, [ExpTerm(MPoly.const(self.n, root), t.expo * 0.5)])

    # -- evaluation -------------------------------------------------------
    def term_logs(self, Z) -> tuple[np.ndarray, np.ndarray]:
        """Per-term log magnitude and phase, each of shape (T, N)."""
        Z = np.asarray(Z, dtype=complex)
        if Z.ndim == 1:
            Z = Z.reshape(1, -1)
        if Z.shape[1] != self.n:
            raise DimensionMismatch(f"points have {Z.shape[1]} coordinates, expected {self.n}")
        N = Z.shape[0]
        if not self.terms:
            return np.zeros((0, N)), np.zeros((0, N))
        mags, phases = [], []
        with np.errstate(divide="ignore"):
            for t in self.terms:
                q = t.coef.eval_many(Z)
                h = t.expo.eval_many(Z)
                mags.append(np.log(np.abs(q)) + h.real)
                phases.append(np.angle(q) + h.imag)
        return np.array(mags), np.array(phases)

    def eval_log_many(self, Z) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Log magnitude, phase and largest-term log magnitude at each point."""
        mags, phases = self.term_logs(Z)
        N = mags.shape[1] if mags.ndim == 2 else np.asarray(Z).reshape(-1, self.n).shape[0]
        if mags.shape[0] == 0:
            return np.full(N, -np.inf), np.zeros(N), np.full(N, -np.inf)
        top = mags.max(axis=0)
        safe = np.where(np.isfinite(top), top, 0.0)
        s = (np.exp(mags - safe) * np.exp(1j * phases)).sum(axis=0)
        with np.errstate(divide="ignore"):
            logmag = np.where(np.isfinite(top), safe + np.log(np.abs(s)), -np.inf)
        return logmag, np.angle(s), top

    def eval_log(self, z) -> LogValue:
        logmag, phase, _ = self.eval_log_many(np.asarray(z, dtype=complex).reshape(1, -1))
        return LogValue.of(logmag[0], phase[0])

    def __call__(self, z) -> complex:
        return self.eval_log(z).to_complex()

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"coef": t.coef.to_json(), "expo": t.expo.to_json()} for t in self.terms],
        }

    @classmethod
    def from_json(cls, obj) -> "ExpPoly":
        try:
            n = obj["n"]
            terms = [
                ExpTerm(MPoly.from_json(t["coef"]), MPoly.from_json(t["expo"])) for t in obj["terms"]
            ]
            return cls(n, terms)
        except MalformedInput:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad ExpPoly JSON: {exc}") from exc


# -- spec-level operations ----------------------------------------------------


def ep_normalize(e: ExpPoly) -> ExpPoly:
    return ExpPoly(e.n, e.terms)


def ep_add(x: ExpPoly, y: ExpPoly) -> ExpPoly:
    return x + y


def ep_mul(x: ExpPoly, y: ExpPoly) -> ExpPoly:
    return x * y


def ep_shift(x: ExpPoly, c: Sequence) -> ExpPoly:
    return x.shift(c)


def ep_partial(x: ExpPoly, i: int) -> ExpPoly:
    return x.partial(i)


def ep_halve_exponent(x: ExpPoly) -> ExpPoly:
    return x.halve_exponent()


def ep_eval(x: ExpPoly, z: Sequence) -> tuple[complex, LogValue]:
    """Value and log form at z.  Raises TotalOverflow (carrying ``log``) when
    the value itself is not representable."""
    lv = x.eval_log(z)
    return lv.to_complex(), lv


@dataclass(frozen=True)
class ZeroCertificate:
    verdict: bool
    kind: str  # "symbolic", "numeric" or "none"
    max_rel_residual: float
    n_points: int
    seed: int
    radius: float
    witness: tuple[complex, ...] | None = None


def relative_residuals(x: ExpPoly, Z, reference: ExpPoly | None = None) -> np.ndarray:
    """|x(z)| divided by the magnitude of the largest single term of ``reference``."""
    ref = x if reference is None else reference
    logmag, _, _ = x.eval_log_many(Z)
    _, _, scale = ref.eval_log_many(Z)
    with np.errstate(invalid="ignore", over="ignore"):
        rel = np.exp(logmag - scale)
    rel = np.where(np.isneginf(logmag), 0.0, rel)
    rel = np.where(np.isneginf(scale) & ~np.isneginf(logmag), np.inf, rel)
    return rel


def ep_is_zero(
    x: ExpPoly, cfg: SamplingConfig | None = None, reference: ExpPoly | None = None
) -> ZeroCertificate:
    """Symbolic zero test with a sampled fallback.

    ``reference`` supplies the term magnitudes the residual is measured
    against (the un-cancelled pieces of an identity); by default the largest
    term of ``x`` itself.
    """
    cfg = cfg or SamplingConfig()
    if x.is_zero:
        return ZeroCertificate(True, "symbolic", 0.0, 0, cfg.seed, cfg.radius)
    Z = sample_polydisc(x.n, cfg.n_points, cfg.radius, cfg.seed)
    rel = relative_residuals(x, Z, reference)
    worst = int(np.argmax(rel))
    max_rel = float(rel[worst])
    ok = max_rel <= cfg.tol
    witness = None if ok else tuple(complex(v) for v in Z[worst])
    return ZeroCertificate(ok, "numeric" if ok else "none", max_rel, cfg.n_points, cfg.seed, cfg.radius, witness)
