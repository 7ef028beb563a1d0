"""Command-line interface: ``twistlift <command> FIXTURE ...``.

Exit status is 0 when every check passes, 1 on a verification mismatch and
2 on usage or fixture errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from twistlift.fixtures import parse_fixture, resolve
from twistlift.lseries import Oracle
from twistlift.pipeline import Workspace, brandt, eigen_orientations, verify_fixture
from twistlift.waldspurger import RATIO_TOLERANCE, make_table, verify_identity
from twistlift.weights import CalibrationError

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path):
    return parse_fixture(resolve(path))


def cmd_verify_fixture(args, out) -> int:
    fx = _load(args.fixture)
    status = OK
    for check in verify_fixture(fx):
        print(f"{'PASS' if check.ok else 'FAIL'}  {check.name}: {check.detail}", file=out)
        if not check.ok:
            status = MISMATCH
    return status


def cmd_theta(args, out) -> int:
    fx = _load(args.fixture)
    result = Workspace(fx).lift(args.family, args.bound)
    print(result.eigenform.expansion(), file=out)
    return OK


TABLE_COLUMNS = {
    "full": ("D", "c", "star", "L_predicted", "L_oracle"),
    "oracle": ("D", "c", "star", "L_oracle"),
    "predict": ("D", "c", "star", "L_predicted"),
}


def _row_values(row, columns):
    values = {"D": str(row.D), "c": str(row.c), "star": str(row.star),
              "L_predicted": f"{row.L_predicted:.6f}", "L_oracle": f"{row.L_oracle:.6f}"}
    return [values[c] for c in columns]


def cmd_table(args, out) -> int:
    fx = _load(args.fixture)
    bound = args.bound if args.bound is not None else args.dmax - 1
    if bound < args.dmax - 1:
        raise UsageError(f"bound {bound} too small for dmax {args.dmax}; need at least {args.dmax - 1}")
    ws = Workspace(fx)
    result = ws.lift(args.family, bound)
    rows = make_table(result.family, result.eigenform, ws.oracle, args.dmax, result.k_hat)
    mode = "oracle" if args.oracle_only else "predict" if args.predict_only else "full"
    columns = TABLE_COLUMNS[mode]
    cells = [_row_values(r, columns) for r in rows]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        out.write(buf.getvalue())
    else:
        widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h) for i, h in enumerate(columns)]
        print("  ".join(h.rjust(w) for h, w in zip(columns, widths)), file=out)
        for c in cells:
            print("  ".join(x.rjust(w) for x, w in zip(c, widths)), file=out)
    return OK if all(r.consistent() for r in rows) else MISMATCH


def cmd_brandt(args, out) -> int:
    fx = _load(args.fixture)
    B = brandt(fx, args.n)
    for row in B:
        print(" ".join(str(x).rjust(6) for x in row), file=out)
    status = MISMATCH
    for label, vector in (("cusp", fx.eigenvector), ("eisenstein", [1] * len(B))):
        for orientation, value in eigen_orientations(B, vector).items():
            shown = "not an eigenvector" if value is None else f"eigenvalue {value}"
            print(f"{label} {orientation}: {shown}", file=out)
            if label == "cusp" and value is not None:
                status = OK
    return status


def cmd_lvalue(args, out) -> int:
    fx = _load(args.fixture)
    value = Oracle(fx.curve).central_value(args.D, args.length_factor)
    print(repr(value), file=out)
    return OK


def cmd_calibrate(args, out) -> int:
    fx = _load(args.fixture)
    ws = Workspace(fx)
    result = ws.lift(args.family)
    signs = " ".join(f"{s:+d}" for s in result.signs)
    print(f"signs: {signs}", file=out)
    print(f"k_hat: {result.k_hat!r}", file=out)
    print(f"spread: {result.spread:.3e}", file=out)
    status = OK if result.spread < RATIO_TOLERANCE else MISMATCH
    family = result.family
    if family.k_printed:
        rel = abs(result.k_hat - float(family.k_printed)) / float(family.k_printed)
        print(f"printed k: {family.k_printed} (relative error {rel:.3e})", file=out)
        if rel >= RATIO_TOLERANCE:
            status = MISMATCH
    if family.identity:
        report = verify_identity(family, result.k_hat, ws.oracle)
        print(f"identity k = {report.expression}: {report.value!r} (relative error {report.relative_error:.3e})",
              file=out)
        if not report.ok:
            status = MISMATCH
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistlift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-fixture", help="recompute forms, unit counts and height from quaternion data")
    p.add_argument("fixture")
    p.set_defaults(func=cmd_verify_fixture)

    p = sub.add_parser("theta", help="print the q-expansion of a family's eigenform")
    p.add_argument("fixture")
    p.add_argument("--family", required=True)
    p.add_argument("--bound", type=int, default=50)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("table", help="coefficients and central values for a family")
    p.add_argument("fixture")
    p.add_argument("--family", required=True)
    p.add_argument("--dmax", type=int, default=200)
    p.add_argument("--bound", type=int, help="eigenform bound (default dmax - 1)")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    only = p.add_mutually_exclusive_group()
    only.add_argument("--oracle-only", action="store_true")
    only.add_argument("--predict-only", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("brandt", help="Brandt matrix B(n) and eigenvector checks")
    p.add_argument("fixture")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_brandt)

    p = sub.add_parser("lvalue", help="oracle central value L(f, D, 1)")
    p.add_argument("fixture")
    p.add_argument("-D", type=int, required=True)
    p.add_argument("--length-factor", type=float, default=1.0)
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("calibrate", help="class signs, fitted constant and identity check")
    p.add_argument("fixture")
    p.add_argument("--family", required=True)
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CalibrationError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return MISMATCH
    except (ValueError, FileNotFoundError, KeyError, UsageError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
