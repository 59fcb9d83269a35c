"""JSON encoding helpers for complex scalars and vectors."""

from __future__ import annotations

from numbers import Number

from .algebra import MPoly, as_complex
from .errors import MalformedInput

SCHEMA = "fermat-forge/1"


def enc_c(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def dec_c(x, name: str = "value") -> complex:
    """Accepts a number, a [re, im] pair or {"re": .., "im": ..}."""
    try:
        if isinstance(x, bool):
            raise TypeError("boolean")
        if isinstance(x, Number):
            return as_complex(x)
        if isinstance(x, (list, tuple)) and len(x) == 2 and all(
            isinstance(v, Number) and not isinstance(v, bool) for v in x
        ):
            return as_complex(complex(x[0], x[1]))
        if isinstance(x, dict) and set(x) <= {"re", "im"}:
            return as_complex(complex(x.get("re", 0.0), x.get("im", 0.0)))
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"{name}: not a complex scalar ({exc})") from exc
    raise MalformedInput(f"{name}: not a complex scalar: {x!r}")


def enc_vec(v) -> list[list[float]]:
    return [enc_c(z) for z in v]


def dec_vec(x, name: str = "vector") -> tuple[complex, ...]:
    if not isinstance(x, (list, tuple)) or not x:
        raise MalformedInput(f"{name}: expected a non-empty list of scalars")
    return tuple(dec_c(v, f"{name}[{i}]") for i, v in enumerate(x))


def dec_mpoly(x, name: str = "polynomial", n: int | None = None) -> MPoly:
    """An MPoly from its JSON form, or a bare scalar as a constant when ``n`` is known."""
    if isinstance(x, dict) and "terms" in x:
        p = MPoly.from_json(x)
    elif n is not None:
        p = MPoly.const(n, dec_c(x, name))
    else:
        raise MalformedInput(f"{name}: expected an MPoly object")
    if n is not None and p.n != n:
        raise MalformedInput(f"{name}: dimension {p.n}, expected {n}")
    return p
