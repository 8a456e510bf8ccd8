"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a mathematical check
fails (or a point is not on the scale), 2 for usage and scale-spec errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from tslog.calculus import IntegrationConfig
from tslog.convexity import (
    check_by_derivative,
    check_by_second_derivative,
    check_definition,
    check_slope_form,
)
from tslog.errors import NotInScaleError, PreconditionError, QuadratureError, TimeScaleError
from tslog.families import KINDS, ScaleSpec, build
from tslog.functions import BUILTINS, NAMES
from tslog.logarithm import (
    chain_rule_residual,
    default_tol,
    log_fn,
    log_table,
    log_ts,
    power_sum_residual,
    product_identity_residual,
    quotient_identity_residual,
    sigma_recurrence_residual,
    sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONVEXITY_METHODS = {
    "definition": check_definition,
    "slope": check_slope_form,
    "derivative": check_by_derivative,
    "second": check_by_second_derivative,
}


class UsageError(Exception):
    pass


def number(text: str) -> float:
    """Parse a float, also accepting fractions such as ``1/3``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def fmt_human(x: float) -> str:
    return f"{float(x):.6g}"


# -- scale options --------------------------------------------------------------


def add_scale_options(p: argparse.ArgumentParser):
    g = p.add_argument_group("time scale")
    g.add_argument("--scale", default=None, help=f"family ({', '.join(KINDS)}) or an inline JSON scale spec")
    g.add_argument("--spec", metavar="FILE", help="read the JSON scale spec from FILE")
    g.add_argument("--window", nargs=2, type=number, metavar=("LO", "HI"))
    g.add_argument("--q", type=number, help="ratio of the qN0 / qZ families")
    g.add_argument("--h", type=number, help="step of the hZ family")
    g.add_argument("--components", help='JSON list of [lo, hi] pairs for custom scales, e.g. "[[0,1],[2,2]]"')
    g.add_argument("--eps", type=number, help="membership snapping tolerance (default 1e-9)")


def spec_from_args(args) -> ScaleSpec:
    if args.spec:
        with open(args.spec) as fh:
            spec = ScaleSpec.from_json(fh.read())
    elif args.scale and args.scale.lstrip().startswith("{"):
        spec = ScaleSpec.from_json(args.scale)
    else:
        if not args.scale:
            raise UsageError("give --scale KIND (with --window) or --spec FILE")
        d = {"kind": args.scale}
        if args.window is not None:
            d["window"] = list(args.window)
        if args.q is not None:
            d["q"] = args.q
        if args.h is not None:
            d["h"] = args.h
        if args.components is not None:
            try:
                d["components"] = json.loads(args.components)
            except json.JSONDecodeError as exc:
                raise UsageError(f"--components is not valid JSON: {exc}") from None
        spec = ScaleSpec.from_dict(d)
    if args.eps is not None:
        spec = ScaleSpec.from_dict({**spec.to_dict(), "eps": args.eps})
    return spec


def config_from_args(args) -> IntegrationConfig:
    return IntegrationConfig(quad_tol=args.quad_tol)


# -- output ---------------------------------------------------------------------


def emit_json(out, command, spec, results, passed):
    doc = {"command": command, "scale": spec.to_dict(), "results": results, "pass": passed}
    out.write(json.dumps(doc, allow_nan=False) + "\n")


def emit_csv(out, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    out.write(buf.getvalue())


# -- commands -------------------------------------------------------------------


def cmd_scale(args, spec, out):
    T = build(spec)
    comps = T.to_components()
    if args.format == "json":
        emit_json(out, args.command_line, spec, [{"lo": lo, "hi": hi} for lo, hi in comps], True)
    elif args.format == "csv":
        emit_csv(out, ["lo", "hi"], comps)
    else:
        for lo, hi in comps:
            out.write(f"{fmt_human(lo)}\n" if lo == hi else f"[{fmt_human(lo)}, {fmt_human(hi)}]\n")
    return EXIT_OK


def cmd_eval(args, spec, out):
    T = build(spec)
    cfg = config_from_args(args)
    rows, missing = [], []
    for t in args.at:
        try:
            rows.append((t, log_ts(T, t, cfg, method=args.method)))
        except NotInScaleError:
            missing.append(t)
    for t in missing:
        sys.stderr.write(f"error: {t!r} is not a point of the time scale\n")
    passed = not missing
    if args.format == "json":
        emit_json(out, args.command_line, spec, [{"t": t, "L": v} for t, v in rows], passed)
    elif args.format == "csv":
        emit_csv(out, ["t", "L"], rows)
    else:
        for t, v in rows:
            out.write(f"L({fmt_human(t)}) = {fmt_human(v)}\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_table(args, spec, out):
    T = build(spec)
    rows = log_table(T, config_from_args(args), grid_n=args.grid, method=args.method)
    if args.format == "json":
        emit_json(out, args.command_line, spec, [{"t": t, "L": v} for t, v in rows], True)
    elif args.format == "csv":
        emit_csv(out, ["t", "L"], rows)
    else:
        for t, v in rows:
            out.write(f"{fmt_human(t):>12}  {fmt_human(v):>12}\n")
    return EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify {args.kind} needs " + ", ".join(f"--{n}" for n in missing))


def _resolve_fn(name, T, cfg):
    if name == "log":
        return log_fn(T, cfg)
    try:
        return BUILTINS[name]
    except KeyError:
        raise UsageError(f"unknown function {name!r}; choose from {', '.join(NAMES)}") from None


def cmd_verify(args, spec, out):
    T = build(spec)
    cfg = config_from_args(args)
    tol = args.tol if args.tol is not None else default_tol(T)
    kind = args.kind
    p = _resolve_fn(args.p, T, cfg) if kind == "chain" else None
    if args.sweep:
        results = sweep(kind, T, cfg, tol, grid_n=args.grid, p=p)
        if not results:
            raise PreconditionError(f"no admissible parameters for the {kind} identity in this window")
    elif kind == "product":
        _need(args, "a", "b")
        results = [product_identity_residual(T, args.a, args.b, cfg, tol)]
    elif kind == "power":
        _need(args, "a", "n")
        results = [power_sum_residual(T, args.a, args.n, cfg, tol)]
    elif kind == "quotient":
        _need(args, "x", "y")
        results = [quotient_identity_residual(T, args.x, args.y, cfg, tol)]
    elif kind == "sigma":
        _need(args, "t")
        results = [sigma_recurrence_residual(T, args.t, cfg, tol)]
    else:
        _need(args, "t")
        results = [chain_rule_residual(p, T, args.t, cfg, tol=tol)]
    passed = all(r.passed for r in results)
    worst = max(results, key=lambda r: r.residual)
    if args.format == "json":
        emit_json(out, args.command_line, spec, [r.to_dict() for r in results], passed)
    elif args.format == "csv":
        keys = sorted({k for r in results for k in r.params})
        emit_csv(
            out,
            ["kind", *keys, "lhs", "rhs", "residual", "tol", "pass"],
            [[r.kind, *(r.params.get(k, "") for k in keys), r.lhs, r.rhs, r.residual, r.tol_used, r.passed] for r in results],
        )
    else:
        if args.sweep:
            n_fail = sum(not r.passed for r in results)
            out.write(f"{kind}: {len(results)} cases, {n_fail} failed, max residual {worst.residual:.3g} (tol {tol:.3g})\n")
            for r in results:
                if not r.passed:
                    out.write(f"  FAIL {_params(r)}: residual {r.residual:.3g}\n")
        else:
            r = results[0]
            out.write(
                f"{kind} {_params(r)}: lhs={fmt_human(r.lhs)} rhs={fmt_human(r.rhs)} "
                f"residual={r.residual:.3g} tol={r.tol_used:.3g} {'PASS' if r.passed else 'FAIL'}\n"
            )
    return EXIT_OK if passed else EXIT_FAIL


def _params(r):
    return " ".join(f"{k}={fmt_human(v)}" for k, v in r.params.items())


def cmd_convexity(args, spec, out):
    T = build(spec)
    cfg = config_from_args(args)
    f = _resolve_fn(args.fn, T, cfg)
    check = CONVEXITY_METHODS[args.method]
    kw = {"grid_n": args.grid, "tol": args.tol if args.tol is not None else 1e-9}
    if args.method in ("derivative", "second"):
        kw["cfg"] = cfg
    v = check(f, T, args.interval, **kw)
    passed = {
        "convex": v.convex,
        "concave": v.concave,
        "any": v.convex or v.concave,
        "both": v.convex and v.concave,
    }[args.expect]
    if args.format == "json":
        emit_json(out, args.command_line, spec, [{"fn": args.fn, **v.to_dict()}], passed)
    elif args.format == "csv":
        emit_csv(
            out,
            ["fn", "method", "convex", "concave", "max_violation", "witness"],
            [[args.fn, v.method, v.convex, v.concave, v.max_violation, json.dumps(list(v.witness)) if v.witness else ""]],
        )
    else:
        label = {(True, True): "convex and concave", (True, False): "convex", (False, True): "concave"}.get(
            (v.convex, v.concave), "neither convex nor concave"
        )
        out.write(f"{args.fn} ({args.method}, {v.n_points} points): {label}; max violation {v.max_violation:.3g}\n")
        if v.witness:
            out.write("  witness: " + ", ".join(fmt_human(w) for w in v.witness) + "\n")
        if v.note:
            out.write(f"  note: {v.note}\n")
        out.write("PASS\n" if passed else f"FAIL (expected {args.expect})\n")
    return EXIT_OK if passed else EXIT_FAIL


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tslog", description="Natural logarithm on time scales.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        add_scale_options(p)
        p.add_argument("--format", choices=("human", "csv", "json"), default=default_format)
        p.add_argument("--quad-tol", type=number, default=1e-10, help="adaptive Simpson tolerance per dense segment")

    p = sub.add_parser("scale", help="materialize a time scale and list its components")
    common(p, "human")
    p.set_defaults(handler=cmd_scale)

    p = sub.add_parser("eval", help="evaluate L_T at points")
    common(p, "csv")
    p.add_argument("--at", nargs="+", type=number, required=True, metavar="T")
    p.add_argument("--method", choices=("auto", "integral", "closed"), default="auto")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("table", help="tabulate L_T over the scale")
    common(p, "csv")
    p.add_argument("--grid", type=int, default=33, help="samples per dense component")
    p.add_argument("--method", choices=("auto", "integral", "closed"), default="auto")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("verify", help="check a logarithm identity")
    p.add_argument("kind", choices=("product", "power", "quotient", "sigma", "chain"))
    common(p, "human")
    for name in ("a", "b", "x", "y", "t"):
        p.add_argument(f"--{name}", type=number)
    p.add_argument("--n", type=int)
    p.add_argument("--p", default="square", help="increasing map for the chain rule (default: square)")
    p.add_argument("--tol", type=number, help="residual tolerance (default: TSLOG_DEFAULT_TOL or 1e-12/1e-8)")
    p.add_argument("--sweep", action="store_true", help="check every admissible parameter combination")
    p.add_argument("--grid", type=int, default=33, help="samples per dense component in sweeps")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("convexity", help="test convexity / concavity of a function")
    common(p, "human")
    p.add_argument("--fn", default="log", help=f"one of {', '.join(NAMES)}")
    p.add_argument("--method", choices=tuple(CONVEXITY_METHODS), default="definition")
    p.add_argument("--interval", nargs=2, type=number, metavar=("LO", "HI"))
    p.add_argument("--grid", type=int, default=33)
    p.add_argument("--tol", type=number)
    p.add_argument("--expect", choices=("any", "convex", "concave", "both"), default="any")
    p.set_defaults(handler=cmd_convexity)
    return parser


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.command_line = " ".join(["tslog", *argv])
    try:
        spec = spec_from_args(args)
        return args.handler(args, spec, out)
    except NotInScaleError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL if args.command == "eval" else EXIT_USAGE
    except (UsageError, TimeScaleError, PreconditionError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (QuadratureError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
