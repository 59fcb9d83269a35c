"""Command-line front end: construct, verify, diagnose, order, reproduce.

All payloads are JSON read from a file argument or stdin.  Exit codes:
0 success, 1 verification failed or no solution, 2 malformed input.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from typing import Any, Callable

from ._codec import SCHEMA, dec_c, dec_mpoly, dec_vec
from .equations import diagnose, spec_from_json, verify
from .errors import DimensionMismatch, FermatForgeError, InvalidSpec, MalformedInput
from .expfun import ExpPoly, SamplingConfig
from .fixtures import FIXTURES, run_fixture
from .growth import estimate_order
from .solutions import (
    FAMILY_CIRCLE,
    FAMILY_SINE,
    construct_binomial,
    construct_binomial_single,
    construct_classical,
    construct_linear_reduced,
    construct_pdde,
    construct_pdde_single,
    construct_trinomial,
    construct_trinomial_two,
    construct_trinomial_w0,
)

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2

# parameter kinds: C complex scalar, V shift vector, M polynomial, E exponential
# polynomial, I integer, B boolean
_SCALARS = {"a": "C", "b": "C", "a1": "C", "a0": "C", "c": "V"}
_TRI = {"a": "C", "b": "C", "g1": "C", "g2": "C", "c": "V", "swap": "B"}
CONSTRUCTORS: dict[tuple[str, str], tuple[Callable, dict]] = {
    ("binomial", "i"): (
        construct_binomial,
        {**_SCALARS, **dict.fromkeys(("L1", "L2", "psi1", "psi2", "Q1", "Q2"), "M"), "k1": "C", "k2": "C", "strict": "B"},
    ),
    ("binomial", "ii"): (
        construct_binomial_single,
        {**_SCALARS, "P": "M", "Q": "M", "beta": "E", "L21": "M", "B": "C"},
    ),
    ("pdde", "i"): (
        construct_pdde,
        {"a": "C", "b": "C", "c": "V", "axis": "I", "h1": "M", "h2": "M", "alpha1": "C", "alpha2": "C", "strict": "B"},
    ),
    ("pdde", "ii"): (
        construct_pdde_single,
        {"a": "C", "b": "C", "c": "V", "axis": "I", "P": "M", "Q": "M", "gamma": "E", "L1": "M", "H": "M", "r5": "C"},
    ),
    ("trinomial", "i"): (
        construct_trinomial,
        {**_TRI, "omega": "C", "L": "M", "H": "M", "B3": "C", "xi": "C", "strict": "B"},
    ),
    ("trinomial", "ii"): (
        construct_trinomial_two,
        {**_TRI, "omega": "C", **dict.fromkeys(("L1", "L2", "H1", "H2"), "M"), "D1": "C", "D2": "C", "strict": "B"},
    ),
    ("trinomial-w0", "i"): (
        lambda **kw: construct_trinomial_w0("i", **kw),
        {**_TRI, "L": "M", "H": "M", "B3": "C", "xi": "C", "strict": "B"},
    ),
    ("trinomial-w0", "ii"): (
        lambda **kw: construct_trinomial_w0("ii", **kw),
        {**_TRI, **dict.fromkeys(("L1", "L2", "H1", "H2"), "M"), "D1": "C", "D2": "C", "strict": "B"},
    ),
    ("linear-reduced", ""): (
        construct_linear_reduced,
        {"a": "C", "b": "C", "g1": "C", "g2": "C", "c": "V", "ell": "M", "periodic": "E", "g": "M", "sign_b": "I", "sign_rhs": "I"},
    ),
    (FAMILY_SINE, ""): (
        lambda **kw: construct_classical(FAMILY_SINE, **kw),
        {"q": "C", "c": "C", "k": "I", "B": "C"},
    ),
    (FAMILY_CIRCLE, ""): (lambda **kw: construct_classical(FAMILY_CIRCLE, **kw), {"h": "M"}),
}
_REQUIRED_W0 = {
    "i": {"a", "b", "g1", "g2", "c", "L", "H"},
    "ii": {"a", "b", "g1", "g2", "c", "L1", "L2", "H1", "H2"},
}


def _required(family: str, case: str, fn: Callable) -> set[str]:
    if family == "trinomial-w0":
        return _REQUIRED_W0[case]
    if family == FAMILY_CIRCLE:
        return {"h"}
    if family == FAMILY_SINE:
        return set()
    sig = inspect.signature(fn)
    return {n for n, p in sig.parameters.items() if p.default is inspect.Parameter.empty}


def _decode_param(kind: str, value: Any, name: str):
    if kind == "C":
        return dec_c(value, name)
    if kind == "V":
        return dec_vec(value, name)
    if kind == "M":
        return dec_mpoly(value, name)
    if kind == "E":
        if not isinstance(value, dict):
            raise MalformedInput(f"{name}: expected an ExpPoly object")
        return ExpPoly.from_json(value)
    if kind == "I":
        if not isinstance(value, int) or isinstance(value, bool):
            raise MalformedInput(f"{name}: expected an integer")
        return value
    if kind == "B":
        if not isinstance(value, bool):
            raise MalformedInput(f"{name}: expected true or false")
        return value
    raise AssertionError(kind)


def decode_construct(obj) -> tuple[Callable, dict]:
    if not isinstance(obj, dict):
        raise MalformedInput("construct input must be an object with 'family' and 'params'")
    family = obj.get("family")
    case = str(obj.get("case", ""))
    entry = CONSTRUCTORS.get((family, case))
    if entry is None:
        known = ", ".join(f"{f}{'/' + c if c else ''}" for f, c in CONSTRUCTORS)
        raise MalformedInput(f"unknown family/case {family!r}/{case!r}; known: {known}")
    fn, schema = entry
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise MalformedInput("params must be an object")
    kwargs = {}
    for name, value in params.items():
        if name not in schema:
            raise MalformedInput(f"params.{name}: unknown parameter for {family}")
        kwargs[name] = _decode_param(schema[name], value, f"params.{name}")
    missing = _required(family, case, fn) - set(kwargs)
    if missing:
        raise MalformedInput(f"params: missing {', '.join(sorted(missing))}")
    return fn, kwargs


# -- I/O --------------------------------------------------------------------------


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for k, v in payload.items():
            out.write(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}\n")


def _cfg(args) -> SamplingConfig:
    return SamplingConfig(n_points=args.samples, seed=args.seed, radius=args.radius, tol=args.tol)


# -- subcommands ------------------------------------------------------------------


def cmd_construct(args, out) -> int:
    fn, kwargs = decode_construct(_read_json(args.input))
    bundle = fn(**kwargs)
    payload = bundle.to_json()
    if bundle.spec is not None:
        payload["verification"] = verify(bundle.spec, bundle.f, _cfg(args)).to_json()
    _emit(payload, args.output, out)
    ok = bundle.spec is None or payload["verification"]["passed"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out) -> int:
    obj = _read_json(args.input)
    if not isinstance(obj, dict) or "spec" not in obj or "f" not in obj:
        raise MalformedInput("verify input must be an object with 'spec' and 'f'")
    spec = spec_from_json(obj["spec"])
    f = ExpPoly.from_json(obj["f"])
    report = verify(spec, f, _cfg(args), obj.get("branch_labels", []))
    _emit(report.to_json(), args.output, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_diagnose(args, out) -> int:
    obj = _read_json(args.input)
    claimed = isinstance(obj, dict) and "spec" in obj and "f" in obj
    spec = spec_from_json(obj["spec"] if claimed else obj)
    verdict = diagnose(spec)
    _emit(verdict.to_json(), args.output, out)
    return EXIT_FAIL if claimed and verdict.kind == "NoFiniteOrderSolution" else EXIT_OK


def cmd_order(args, out) -> int:
    obj = _read_json(args.input)
    f = ExpPoly.from_json(obj.get("f", obj) if isinstance(obj, dict) else obj)
    est = estimate_order(f, args.r_min, args.r_max, args.n_radii, args.samples, args.seed)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(est.to_csv())
    _emit(est.to_json(), args.output, out)
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    names = list(args.fixtures) + ([args.fixture] if args.fixture else [])
    if not names or "all" in names:
        names = list(FIXTURES)
    unknown = [n for n in names if n not in FIXTURES]
    if unknown:
        raise MalformedInput(f"unknown fixture(s): {', '.join(unknown)}; known: {', '.join(FIXTURES)}")
    branch = None if args.branches == "all" else int(args.branches)
    results = [run_fixture(n, _cfg(args), branch) for n in names]
    if args.output == "json":
        payload = {"schema": SCHEMA, "fixtures": [r.to_json() for r in results]}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"{'fixture':28s} {'branch':24s} {'status':6s} {'symbolic':8s} max_rel_residual\n")
        for r in results:
            for row in r.rows:
                out.write(
                    f"{r.fixture.name:28s} {row.branch:24s} {'PASS' if row.passed else 'FAIL':6s} "
                    f"{str(row.symbolic_zero).lower():8s} {row.max_rel_residual:.3e}\n"
                )
            out.write(f"{r.fixture.name:28s} {'(any branch)':24s} {'PASS' if r.passed else 'FAIL'}  # {r.fixture.provenance}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _branches(value: str) -> str:
    if value == "all" or value.isdigit():
        return value
    raise argparse.ArgumentTypeError("expected 'all' or a non-negative branch index")


def _positive(cast):
    def conv(value):
        x = cast(value)
        if x <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return x

    return conv


def _common(samples: int = 200, output: str = "json") -> argparse.ArgumentParser:
    # a fresh parent per subcommand: parents share Action objects, so defaults would leak
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=_positive(int), default=samples)
    common.add_argument("--radius", type=_positive(float), default=1.5)
    common.add_argument("--tol", type=_positive(float), default=1e-9)
    common.add_argument("--output", choices=("json", "text"), default=output)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermat-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[_common()], help="build a solution bundle from family parameters")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[_common()], help="check a candidate against an equation")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diagnose", parents=[_common()], help="classify an equation spec")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("order", parents=[_common(samples=512)], help="structural and sampled growth order")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--r-min", type=float, default=2.0)
    p.add_argument("--r-max", type=float, default=20.0)
    p.add_argument("--n-radii", type=int, default=8)
    p.add_argument("--csv", help="also write (r, log r, log log M) rows here")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("reproduce", parents=[_common(output="text")], help="run named fixtures")
    p.add_argument("fixtures", nargs="*", help="fixture ids, or 'all'")
    p.add_argument("--fixture", help="a single fixture id")
    p.add_argument("--branches", type=_branches, default="all")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (MalformedInput, InvalidSpec, DimensionMismatch) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except (FermatForgeError, IndexError) as exc:
        _emit({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}, args.output, out)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
