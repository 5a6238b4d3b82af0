"""Command-line front end.

Exit codes: 0 success, 2 parse/config error, 3 unsupported configuration
for the requested command.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bases import (
    BaseSpec,
    DiagonalAut,
    IdentityAut,
    PolyDerivation,
    ScaleAut,
    ShiftAut,
    UnsupportedAutomorphism,
)
from .ore import LaurentOrePoly, laurent_series_norm, localizability_probe, ore_mul
from .parsing import (
    ConfigError,
    ParseError,
    format_element,
    format_series,
    parse_config_text,
    parse_expr,
    parse_scalar,
)
from .quotient import (
    canonical_representative,
    ideal_member,
    phi,
    phi_table,
    quotient_norm,
    reduce_to_ore,
    vanishing_test,
)
from .tensor import TwistedSeries, mul as series_mul, twisted_norm


@dataclass(frozen=True)
class SessionConfig:
    spec: BaseSpec
    delta: object
    caps: dict
    fmt: str


def _build_config(values: dict) -> SessionConfig:
    base = values.get("base", "entire")
    ngens = 2
    if base.startswith("free"):
        if "(" in base:
            try:
                ngens = int(base[base.index("(") + 1 : base.rindex(")")])
            except ValueError:
                raise ConfigError(f"bad base spec {base!r}")
        base = "free"
    if base not in ("entire", "interval", "free"):
        raise ConfigError(f"unknown base {base!r}")

    aut_name = values.get("automorphism", "scale" if base == "entire" else "shift")
    if base == "free" and "automorphism" not in values:
        aut_name = "diagonal"
    if aut_name == "identity":
        aut = IdentityAut()
    elif aut_name == "shift":
        aut = ShiftAut()
    elif aut_name == "scale":
        aut = ScaleAut(parse_scalar(values.get("q", "2")))
    elif aut_name == "diagonal":
        qs = [parse_scalar(part) for part in values.get("q", "2, 1/2").split(",")]
        if len(qs) != ngens:
            raise ConfigError("diagonal needs one factor per generator")
        aut = DiagonalAut(tuple(qs))
    else:
        raise ConfigError(f"unknown automorphism {aut_name!r}")

    derivation = values.get("derivation", "none")
    if derivation == "none":
        delta = None
    elif derivation == "ddz":
        if base == "free":
            raise ConfigError("the derivation needs a polynomial base")
        delta = PolyDerivation()
    else:
        raise ConfigError(f"unknown derivation {derivation!r}")

    try:
        spec = BaseSpec(base, aut, ngens)
    except UnsupportedAutomorphism as exc:
        raise ConfigError(str(exc))
    caps = {
        "max_word_len": int(values.get("L", 16)),
        "max_degree": int(values.get("D", 32)),
    }
    fmt = values.get("format", "text")
    if fmt not in ("text", "csv"):
        raise ConfigError(f"unknown output format {fmt!r}")
    return SessionConfig(spec, delta, caps, fmt)


def load_config(path: str | None) -> SessionConfig:
    values = {}
    if path is not None:
        with open(path) as handle:
            values = parse_config_text(handle.read())
    return _build_config(values)


def _grid(text: str | None, fallback):
    if text is None:
        return fallback
    return [Fraction(part.strip()) for part in text.split(",")]


def _fmt_value(value: float) -> str:
    return repr(float(value))


class UnsupportedCommand(RuntimeError):
    pass


def _parse(source: str, config: SessionConfig):
    return parse_expr(source, config.spec, config.caps, config.delta)


def _require_series(obj, command: str) -> TwistedSeries:
    if not isinstance(obj, TwistedSeries):
        raise UnsupportedCommand(f"{command} expects an x1/x2 expression")
    return obj


def _base_element(source: str, config: SessionConfig):
    parsed = _parse(source, config)
    if isinstance(parsed, LaurentOrePoly):
        raise UnsupportedCommand("expected a base-algebra element")
    if any(w for w in parsed.terms):
        raise UnsupportedCommand("expected a base-algebra element without x1/x2")
    return parsed.coefficient(())


def run_command(args, config: SessionConfig, out=None) -> int:
    if out is None:
        out = sys.stdout
    cmd = args.command
    if cmd == "mul":
        lhs, rhs = _parse(args.exprs[0], config), _parse(args.exprs[1], config)
        if isinstance(lhs, TwistedSeries) != isinstance(rhs, TwistedSeries):
            # a factor without t or x1/x2 lives in the base algebra and
            # can be lifted into the Ore picture of the other factor
            def lift(obj):
                if isinstance(obj, TwistedSeries) and not any(obj.terms):
                    return LaurentOrePoly(
                        config.spec, {0: obj.coefficient(())}, config.delta
                    )
                return obj

            lhs, rhs = lift(lhs), lift(rhs)
        if isinstance(lhs, TwistedSeries) != isinstance(rhs, TwistedSeries):
            raise UnsupportedCommand("operands must both use x1/x2 or both use t")
        product = series_mul(lhs, rhs) if isinstance(lhs, TwistedSeries) else ore_mul(lhs, rhs)
        print(format_element(product), file=out)
        if getattr(product, "truncated", False):
            print("warning: terms beyond the caps were dropped", file=sys.stderr)
    elif cmd == "norm":
        parsed = _parse(args.exprs[0], config)
        lam, rho = args.lam, args.rho
        if isinstance(parsed, TwistedSeries):
            value, exactness = twisted_norm(parsed, lam, float(rho))
            print(f"{_fmt_value(value)} ({exactness.value})", file=out)
        else:
            value = laurent_series_norm(parsed, lam, float(rho))
            print(_fmt_value(value), file=out)
    elif cmd == "qnorm":
        series = _require_series(_parse(args.exprs[0], config), "qnorm")
        value = quotient_norm(series, args.lam, float(args.rho),
                              paper_display=args.paper_display)
        print(_fmt_value(value), file=out)
    elif cmd == "reduce":
        series = _require_series(_parse(args.exprs[0], config), "reduce")
        rep = canonical_representative(series, float(args.rho))
        print(format_series(rep.series), file=out)
        if rep.dropped:
            dropped = ", ".join(f"(m={m}, n={n})" for m, n in sorted(rep.dropped))
            print(f"dropped classes: {dropped}", file=out)
    elif cmd == "phi":
        series = _require_series(_parse(args.exprs[0], config), "phi")
        if args.m is not None and args.n is not None:
            print(str(phi(series, args.m, args.n)), file=out)
        else:
            table = phi_table(series)
            if not table:
                print("0", file=out)
            for (m, n), value in sorted(table.items()):
                print(f"phi({m},{n}) = {value}", file=out)
    elif cmd == "ideal-test":
        series = _require_series(_parse(args.exprs[0], config), "ideal-test")
        print("true" if ideal_member(series) else "false", file=out)
    elif cmd == "to-ore":
        series = _require_series(_parse(args.exprs[0], config), "to-ore")
        print(format_element(reduce_to_ore(series)), file=out)
    elif cmd == "localizability":
        lams = _grid(args.lambda_grid, [args.lam if args.lam is not None else 1])
        reports = localizability_probe(config.spec, lams, args.depth or 8)
        for report in reports:
            fwd, bwd = report.forward, report.backward
            print(
                f"lambda={float(report.lam)}: forward {fwd.verdict}"
                f" (sup ratio {fwd.sup_ratio:.6g})"
                f", inverse {bwd.verdict} (sup ratio {bwd.sup_ratio:.6g})",
                file=out,
            )
            if not report.family_bounded:
                print(
                    "  family not certified bounded at this seminorm"
                    " (no negative certificate implied)",
                    file=out,
                )
    elif cmd == "vanishing":
        r = _base_element(args.r if args.r is not None else "1", config)
        lams = _grid(args.lambda_grid, [args.lam if args.lam is not None else 1])
        rhos = _grid(args.rho_grid, [args.rho if args.rho is not None else 1])
        report = vanishing_test(config.spec, r, lams, rhos, args.depth or 12)
        if config.fmt == "csv" or args.format == "csv":
            out.write(report.to_csv())
        else:
            print(report.verdict.value, file=out)
            if not report.r_invertible and report.verdict.value != "NoDecay":
                print("note: r is not invertible; only membership of the"
                      " closed ideal follows", file=out)
    elif cmd == "table":
        parsed = _parse(args.exprs[0], config)
        lams = _grid(args.lambda_grid, [args.lam if args.lam is not None else 1])
        rhos = _grid(args.rho_grid, [args.rho if args.rho is not None else 1])
        print("lambda,rho,value,exactness", file=out)
        for lam in sorted(lams, key=float):
            for rho in sorted(rhos, key=float):
                if isinstance(parsed, TwistedSeries):
                    value, exactness = twisted_norm(parsed, lam, float(rho))
                    tag = exactness.value
                else:
                    value, tag = laurent_series_norm(parsed, lam, float(rho)), "exact"
                print(f"{float(lam)},{float(rho)},{_fmt_value(value)},{tag}", file=out)
    else:
        raise UnsupportedCommand(f"unknown command {cmd!r}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewcalc",
        description="Seminorm analytics for skew polynomial and twisted series algebras",
    )
    parser.add_argument("--config", metavar="PATH")
    parser.add_argument("command", choices=[
        "mul", "norm", "qnorm", "reduce", "phi", "ideal-test",
        "to-ore", "localizability", "vanishing", "table",
    ])
    parser.add_argument("exprs", nargs="*")
    parser.add_argument("--lambda", dest="lam", type=Fraction, default=None)
    parser.add_argument("--rho", type=Fraction, default=None)
    parser.add_argument("--lambda-grid", dest="lambda_grid")
    parser.add_argument("--rho-grid", dest="rho_grid")
    parser.add_argument("--depth", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--r")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--paper-display", action="store_true")
    parser.add_argument("--format", choices=["text", "csv"], default="text")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.lam is None:
        args.lam = Fraction(1)
    if args.rho is None:
        args.rho = Fraction(1)
    try:
        return run_command(args, config)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedAutomorphism, UnsupportedCommand) as exc:
        print(f"unsupported configuration: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
