"""Command-line front end: ``gpc {curve,surface,norm,dist,stability,moments}``.

Exit codes: 0 ok, 1 stability bound violated, 2 usage error, 3 data error,
4 theorem hypothesis violated.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path
from typing import List, Optional

from . import curves, injectivity, metrics, stability
from .diagrams import PersistenceDiagram, load_diagram
from .errors import DataError, GpcError, HypothesisViolated
from .kernels import QuadratureSpec
from .weights import WeightKind, WeightSpec

EXIT_OK, EXIT_BOUND, EXIT_USAGE, EXIT_DATA, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4

WEIGHT_TOKENS = [k.value for k in WeightKind if k is not WeightKind.CUSTOM]


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.10g}"


def _positive(name):
    def conv(s):
        try:
            v = float(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number") from None
        if not v > 0 or v != v or v == float("inf"):
            raise argparse.ArgumentTypeError(f"{name} must be positive and finite")
        return v

    return conv


def _int_at_least(lo):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError("expected an integer") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}")
        return v

    return conv


def _floats(n):
    def conv(s):
        parts = s.split(":")
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} colon-separated numbers") from None
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} colon-separated numbers")
        for a, b in zip(vals[::2], vals[1::2]):
            if not a < b:
                raise argparse.ArgumentTypeError("each range needs lower < upper")
        return vals

    return conv


def write_output(text: str, out: Optional[str]):
    """Write to stdout, or atomically to ``out`` (temp file + rename)."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def quad_spec(args) -> QuadratureSpec:
    rtol = args.rtol if args.rtol is not None else os.environ.get("GPC_QUAD_RTOL")
    pad = args.pad if args.pad is not None else os.environ.get("GPC_QUAD_PAD")
    kw = {}
    try:
        if rtol is not None:
            kw["relative_tolerance"] = float(rtol)
        if pad is not None:
            kw["support_padding"] = float(pad)
        return QuadratureSpec(**kw)
    except ValueError as exc:
        raise UsageError(f"bad quadrature setting: {exc}") from None


def _load(path: str) -> PersistenceDiagram:
    try:
        return load_diagram(path)
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from None
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from None


def _model(D, args) -> curves.GpcModel:
    return curves.GpcModel.build(D, WeightSpec(WeightKind.from_token(args.weight)), args.sigma)


def cmd_curve(args) -> int:
    m = _model(_load(args.input), args)
    a, b = args.range
    write_output(curves.gpc_sample(m, a, b, args.samples).to_csv(), args.output)
    return EXIT_OK


def cmd_surface(args) -> int:
    m = _model(_load(args.input), args)
    x0, x1, y0, y1 = args.grid
    xs, ys, vals = curves.surface_grid(m, (x0, x1), (y0, y1), args.nx, args.ny)
    rows = [f"# sigma={fmt(m.sigma)} weight={m.weight_kind} diagram={m.diagram.digest()}", "x,y,value"]
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            rows.append(f"{fmt(x)},{fmt(y)},{fmt(vals[i, j])}")
    write_output("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def cmd_norm(args) -> int:
    m = _model(_load(args.input), args)
    closed = curves.l1_norm_closed(m)
    quad = curves.l1_norm_quadrature(m, quad_spec(args))
    exact = curves.closed_form_is_exact(m)
    text = (
        f"closed={fmt(closed)}\n"
        f"quadrature={fmt(quad)}\n"
        f"closed_is_exact={'true' if exact else 'false (upper bound)'}\n"
    )
    write_output(text, args.output)
    return EXIT_OK


def cmd_dist(args) -> int:
    C, D = _load(args.input), _load(args.input2)
    w1, match = metrics.wasserstein1(C, D)
    lines = [f"w1={fmt(w1)}"]
    if not args.w1_only:
        l1 = curves.l1_distance(_model(C, args), _model(D, args), quad_spec(args))
        lines.append(f"l1={fmt(l1)}")
    write_output("\n".join(lines) + "\n", args.output)
    if args.matching:
        rows = ["c_index,d_index_or_DIAG,cost_contribution"]
        for i, j in match.pairs:
            rows.append(f"{i},{j},{fmt(metrics.linf(C[i], D[j]))}")
        for i in match.c_to_diagonal:
            rows.append(f"{i},DIAG,{fmt(metrics.diagonal_cost(C[i]))}")
        for j in match.d_to_diagonal:
            rows.append(f"DIAG,{j},{fmt(metrics.diagonal_cost(D[j]))}")
        write_output("\n".join(rows) + "\n", args.matching)
    return EXIT_OK


REPORT_FIELDS = ["pair", "theorem", "constant", "additive_term", "w1", "l1_dist",
                 "bound_value", "holds", "slack", "inputs"]


def _report_values(name, rep) -> List[str]:
    row = rep.as_row()
    out = [name]
    for k in REPORT_FIELDS[1:]:
        v = row[k]
        out.append(("true" if v else "false") if isinstance(v, bool) else
                   fmt(v) if isinstance(v, float) else str(v))
    return out


def _stability_pairs(args):
    p1, p2 = Path(args.input), Path(args.input2)
    if p1.is_dir() != p2.is_dir():
        raise UsageError("stability needs two files or two directories")
    if not p1.is_dir():
        return [(p1.name, str(p1), str(p2))]
    common = sorted({f.name for f in p1.iterdir() if f.is_file()} & {f.name for f in p2.iterdir() if f.is_file()})
    if not common:
        raise DataError("no file names shared by the two directories")
    return [(n, str(p1 / n), str(p2 / n)) for n in common]


def cmd_stability(args) -> int:
    theorem = stability.Theorem(args.theorem)
    spec = WeightSpec(WeightKind.from_token(args.weight)) if args.weight else None
    q = quad_spec(args)
    reports = []
    for name, a, b in _stability_pairs(args):
        rep = stability.verify(_load(a), _load(b), args.sigma, theorem, spec, spec,
                               K=args.lipschitz, quad=q, combine=args.combine)
        reports.append((name, rep))
    if args.format == "csv":
        rows = [",".join(REPORT_FIELDS)] + [",".join(_report_values(n, r)) for n, r in reports]
    else:
        rows = []
        for n, r in reports:
            rows += [f"{k}={v}" for k, v in zip(REPORT_FIELDS, _report_values(n, r))]
            rows.append("")
        rows = rows[:-1]
    write_output("\n".join(rows) + "\n", args.output)
    return EXIT_OK if all(r.holds for _, r in reports) else EXIT_BOUND


def cmd_moments(args) -> int:
    C = _load(args.input)
    if args.input2 is None:
        text = injectivity.moment_table(C, args.max_order).to_csv()
    else:
        D = _load(args.input2)
        text = injectivity.injectivity_probe(C, D, args.sigma, args.max_order).line() + "\n"
    write_output(text, args.output)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gpc", description="Gaussian persistence curves")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, weight_default="none"):
        sp.add_argument("--sigma", type=_positive("sigma"), default=1.0)
        sp.add_argument("--weight", choices=WEIGHT_TOKENS, default=weight_default)
        sp.add_argument("-o", "--output", default=None)
        sp.add_argument("--rtol", type=_positive("rtol"), default=None, help="quadrature relative tolerance")
        sp.add_argument("--pad", type=_positive("pad"), default=None, help="support padding in sigmas")

    sp = sub.add_parser("curve", help="sample the curve on a uniform grid")
    sp.add_argument("input")
    common(sp)
    sp.add_argument("--range", type=_floats(2), required=True, metavar="A:B")
    sp.add_argument("--samples", type=_int_at_least(2), default=256)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("surface", help="sample the persistence surface on a grid")
    sp.add_argument("input")
    common(sp)
    sp.add_argument("--grid", type=_floats(4), required=True, metavar="X0:X1:Y0:Y1")
    sp.add_argument("--nx", type=_int_at_least(2), default=50)
    sp.add_argument("--ny", type=_int_at_least(2), default=50)
    sp.set_defaults(func=cmd_surface)

    sp = sub.add_parser("norm", help="closed-form and quadrature L1 norm")
    sp.add_argument("input")
    common(sp)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("dist", help="W1 between diagrams and L1 between curves")
    sp.add_argument("input")
    sp.add_argument("input2")
    common(sp)
    sp.add_argument("--w1-only", action="store_true")
    sp.add_argument("--matching", default=None, metavar="FILE", help="write the optimal matching as CSV")
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("stability", help="check a stability bound on a pair (or two directories)")
    sp.add_argument("input")
    sp.add_argument("input2")
    common(sp, weight_default=None)
    sp.add_argument("--theorem", choices=[t.value for t in stability.Theorem], required=True)
    sp.add_argument("--lipschitz", type=float, default=None, metavar="K")
    sp.add_argument("--combine", choices=["max", "sum"], default="max")
    sp.add_argument("--format", choices=["text", "csv"], default="text")
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("moments", help="moment table, or injectivity probe for two diagrams")
    sp.add_argument("input")
    sp.add_argument("input2", nargs="?")
    common(sp)
    sp.add_argument("--max-order", type=_int_at_least(0), default=16)
    sp.set_defaults(func=cmd_moments)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gpc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisViolated as exc:
        print(f"gpc: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (DataError, GpcError, ValueError) as exc:
        print(f"gpc: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
