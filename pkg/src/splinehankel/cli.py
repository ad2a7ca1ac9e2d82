"""Command-line front end: transforms, basis dumps, coefficient dumps, and a
self-validation mode.  Output is CSV (header row, comma-separated, LF line
endings, shortest round-trip decimals)."""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .expansion import (
    FunctionSpec,
    GramConditionError,
    gram_coefficients,
    haar_coefficients,
    reconstruct,
)
from .hankel_kernel import (
    BasisTransform,
    atom_hankel,
    eq4_direct,
    haar_closed_form,
    Z_SWITCH,
)
from .oracle import QuadratureError, quadrature_hankel
from .pipeline import TransformRequest, transform, transform_with_oracle
from .specfun import PrecisionLossError
from .splines import WaveletIndex

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4


class UsageError(Exception):
    pass


class InputDataError(Exception):
    pass


def _parse_grid(spec: str) -> tuple[float, ...]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be 'min:max:count', got {spec!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad grid {spec!r}: {exc}") from None
    if count < 2:
        raise UsageError(f"grid count must be >= 2, got {count}")
    if not lo < hi:
        raise UsageError(f"grid needs min < max, got {lo} >= {hi}")
    return tuple(float(x) for x in np.linspace(lo, hi, count))


def _load_csv(path: str) -> FunctionSpec:
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise InputDataError(f"cannot read input CSV {path!r}: {exc}") from None
    rows = []
    for i, line in enumerate(lines):
        cells = line.split(",")
        if len(cells) != 2:
            raise InputDataError(f"{path}:{i + 1}: expected two columns")
        try:
            rows.append((float(cells[0]), float(cells[1])))
        except ValueError:
            if i == 0:
                continue  # header row
            raise InputDataError(f"{path}:{i + 1}: non-numeric row") from None
    if len(rows) < 2:
        raise InputDataError(f"{path}: needs at least two data rows")
    try:
        return FunctionSpec.from_samples(*zip(*rows))
    except ValueError as exc:
        raise InputDataError(f"{path}: {exc}") from None


def _function_from_args(args) -> FunctionSpec:
    if args.input is not None:
        if args.builtin is not None:
            raise UsageError("give either --builtin or --input, not both")
        spec = _load_csv(args.input)
        return FunctionSpec.from_samples(spec.abscissae, spec.values, args.interp)
    if args.builtin is None:
        raise UsageError("one of --builtin or --input is required")
    try:
        if args.builtin == "gaussian":
            return FunctionSpec.gaussian(args.a)
        if args.builtin == "constant":
            return FunctionSpec.constant(args.value)
        if args.builtin == "ramp":
            return FunctionSpec.ramp()
        if args.builtin == "haar-atom":
            return FunctionSpec.haar_atom(args.atom_j, args.atom_k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown builtin {args.builtin!r}")


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_csv(path: str | None, header: list[str], rows) -> None:
    text = ",".join(header) + "\n"
    text += "".join(",".join(_fmt(c) if isinstance(c, float) else str(c) for c in row) + "\n" for row in rows)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _add_function_args(sub) -> None:
    sub.add_argument("--builtin", choices=["gaussian", "constant", "ramp", "haar-atom"])
    sub.add_argument("--a", type=float, default=1.0, help="gaussian width")
    sub.add_argument("--value", type=float, default=1.0, help="constant value")
    sub.add_argument("--atom-j", type=int, default=0)
    sub.add_argument("--atom-k", type=int, default=0)
    sub.add_argument("--input", help="two-column CSV (r, f), strictly increasing r")
    sub.add_argument("--interp", choices=["linear", "cubic"], default="linear")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splinehankel",
        description="Hankel transforms via B-spline wavelet series",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    tr = subs.add_parser("transform", help="transform f on a p grid, write CSV")
    _add_function_args(tr)
    tr.add_argument("--nu", type=int, default=0)
    tr.add_argument("--m", type=int, default=1)
    tr.add_argument("--R", type=float, required=True)
    tr.add_argument("--J", type=int, required=True)
    tr.add_argument("--p", required=True, help="grid as min:max:count")
    tr.add_argument("--oracle", action="store_true", help="add quadrature columns")
    tr.add_argument("--output", help="CSV path (default: stdout)")

    ba = subs.add_parser("basis", help="dump one atom transform over a p grid")
    ba.add_argument("--m", type=int, default=1)
    ba.add_argument("--nu", type=int, default=0)
    ba.add_argument("--kind", choices=["wavelet", "scaling"], default="wavelet")
    ba.add_argument("--j", type=int, default=0)
    ba.add_argument("--k", type=int, default=0)
    ba.add_argument("--p", required=True)
    ba.add_argument("--output")

    co = subs.add_parser("coeffs", help="dump expansion coefficients")
    _add_function_args(co)
    co.add_argument("--m", type=int, default=1)
    co.add_argument("--R", type=float, required=True)
    co.add_argument("--J", type=int, required=True)
    co.add_argument("--output")

    va = subs.add_parser("validate", help="run consistency checks on a config")
    _add_function_args(va)
    va.add_argument("--nu", type=int, default=0)
    va.add_argument("--m", type=int, default=1)
    va.add_argument("--R", type=float, required=True)
    va.add_argument("--J", type=int, required=True)
    va.add_argument("--p", default="0.1:10:5")
    return parser


def _cmd_transform(args) -> int:
    f = _function_from_args(args)
    grid = _parse_grid(args.p)
    try:
        req = TransformRequest(f, args.nu, args.m, args.R, args.J, grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.oracle:
        res = transform(req)
        oracle_vals = tuple(
            quadrature_hankel(f, args.nu, args.R, p) for p in res.p_grid
        )
        rows = [
            (p, v, o, abs(v - o))
            for p, v, o in zip(res.p_grid, res.values, oracle_vals)
        ]
        _write_csv(args.output, ["p", "F", "F_oracle", "abs_err"], rows)
    else:
        res = transform(req)
        _write_csv(args.output, ["p", "F"], list(zip(res.p_grid, res.values)))
    print(f"# f(R) = {_fmt(res.diagnostics.f_at_radius)}", file=sys.stderr)
    return EXIT_OK


def _cmd_basis(args) -> int:
    grid = _parse_grid(args.p)
    try:
        bt = BasisTransform(args.m, args.nu, args.kind, WaveletIndex(args.j, args.k))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [(p, atom_hankel(bt, p)) for p in grid]
    _write_csv(args.output, ["p", "value"], rows)
    return EXIT_OK


def _cmd_coeffs(args) -> int:
    f = _function_from_args(args)
    try:
        if args.m == 1:
            coeffs = haar_coefficients(f, args.R, args.J)
        else:
            coeffs = gram_coefficients(f, args.m, args.R, args.J)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [("c0", k, float(c)) for k, c in enumerate(coeffs.c0, start=coeffs.scaling_start)]
    for j, row in enumerate(coeffs.d):
        rows.extend(
            (f"d{j}", k, float(c))
            for k, c in enumerate(row, start=coeffs.wavelet_start)
        )
    _write_csv(args.output, ["level", "k", "value"], rows)
    return EXIT_OK


def _cmd_validate(args) -> int:
    f = _function_from_args(args)
    grid = _parse_grid(args.p)
    checks: list[tuple[str, bool, str]] = []

    if args.m == 1:
        coeffs = haar_coefficients(f, args.R, args.J)
    else:
        coeffs = gram_coefficients(f, args.m, args.R, args.J)

    finite = all(
        math.isfinite(c) for c in list(coeffs.c0) + [x for row in coeffs.d for x in row]
    )
    checks.append(("finite-coefficients", finite, f"{len(coeffs.c0)} averages"))

    # projection idempotence: coefficients of the reconstruction reproduce themselves
    rec = FunctionSpec.from_callable(
        lambda r: np.array([reconstruct(coeffs, float(x)) for x in np.atleast_1d(r)])
    )
    if args.m == 1:
        coeffs2 = haar_coefficients(rec, args.R, args.J)
    else:
        coeffs2 = gram_coefficients(rec, args.m, args.R, args.J)
    dev = max(
        float(np.max(np.abs(coeffs.c0 - coeffs2.c0))),
        max((float(np.max(np.abs(a - b))) for a, b in zip(coeffs.d, coeffs2.d)), default=0.0),
    )
    checks.append(("projection-idempotence", dev <= 1e-8, f"max dev {dev:.3e}"))

    # two-path agreement at the base atom, inside the series region
    pmax = 2.0 * math.sqrt(Z_SWITCH) * 2.0 / (4 * args.m - 2)
    agree = True
    detail = ""
    for p in (0.25 * pmax, 0.75 * pmax):
        a = eq4_direct(args.m, args.nu, WaveletIndex(0, 0), p)
        b = atom_hankel(BasisTransform(args.m, args.nu, "wavelet", WaveletIndex(0, 0)), p)
        err = abs(a - b) / max(1.0, abs(b))
        detail = f"rel dev {err:.3e} at p={p:.3g}"
        if err > 1e-9:
            agree = False
            break
    checks.append(("two-path-agreement", agree, detail))

    # series vs quadrature oracle on a coarse sub-grid
    sub = grid[:: max(1, len(grid) // 5)]
    req = TransformRequest(f, args.nu, args.m, args.R, args.J, tuple(sub))
    res = transform_with_oracle(req)
    maxerr = res.diagnostics.max_oracle_err
    checks.append(
        ("oracle-deviation", math.isfinite(maxerr) and maxerr < 0.1, f"max {maxerr:.3e}")
    )

    ok = True
    for name, passed, detail in checks:
        print(f"{'PASS' if passed else 'FAIL'}: {name} ({detail})")
        ok = ok and passed
    return EXIT_OK if ok else EXIT_NUMERICAL


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {
        "transform": _cmd_transform,
        "basis": _cmd_basis,
        "coeffs": _cmd_coeffs,
        "validate": _cmd_validate,
    }[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"splinehankel: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputDataError as exc:
        print(f"splinehankel: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PrecisionLossError, QuadratureError, GramConditionError, ArithmeticError) as exc:
        print(f"splinehankel: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
