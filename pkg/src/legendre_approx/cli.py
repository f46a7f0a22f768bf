"""``approxcli``: reproduce the SNR comparison and related reports as csv/json.

Exit codes: 0 success, 1 computation error, 2 invalid configuration,
3 capability gap (e.g. bounds requested for a function without a certified
derivative bound).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import analysis, approx, functions
from .basis import Interval, SignConvention
from .errors import ApproxError, CapabilityError
from .quadrature import DEFAULT_POINTS, MAX_POINTS, gauss_rule

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_CONFIG = 2
EXIT_CAPABILITY = 3

SLOPE_TOL = 1e-9
MAX_ORDER_CAP = 30


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    functions: tuple[str, ...]
    interval: Interval
    max_order: int
    quad_points: int
    taylor_point: Optional[float]
    convention: SignConvention
    fmt: str
    grid: int
    output: Optional[str]

    @property
    def expansion_point(self) -> float:
        return self.interval.midpoint if self.taylor_point is None else self.taylor_point

    def as_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "functions": list(self.functions),
            "interval": [self.interval.a, self.interval.b],
            "max_order": self.max_order,
            "quad_points": self.quad_points,
            "taylor_point": self.expansion_point,
            "convention": self.convention.value,
            "format": self.fmt,
            "grid": self.grid,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--function", default="all",
                        choices=sorted(functions.BUILTINS) + ["all"])
    common.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"), default=(0.0, 1.0))
    common.add_argument("--max-order", type=int, default=None)
    common.add_argument("--quad-points", type=int, default=DEFAULT_POINTS)
    common.add_argument("--taylor-point", default="mid")
    common.add_argument("--convention", choices=("paper", "standard"), default="paper")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--grid", type=int, default=501)
    common.add_argument("--output", default=None)

    parser = _Parser(prog="approxcli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    sub.add_parser("table1", parents=[common], help="Taylor vs Legendre SNR table")
    sub.add_parser("trace", parents=[common], help="approximant traces on a uniform grid")
    sub.add_parser("bounds", parents=[common], help="coefficient sizes against their bounds")
    sub.add_parser("slope", parents=[common], help="kernel vs regression slope estimates")
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    """Parse and validate ``argv``; raise :class:`ConfigError` on any problem."""
    ns = build_parser().parse_args(list(argv))
    a, b = ns.interval
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ConfigError(f"--interval needs finite A < B, got {a} {b}")
    iv = Interval(a, b)

    max_order = ns.max_order
    if max_order is None:
        max_order = 12 if ns.subcommand == "bounds" else 6
    if not 1 <= max_order <= MAX_ORDER_CAP:
        raise ConfigError(f"--max-order must be in [1, {MAX_ORDER_CAP}], got {max_order}")
    if not 1 <= ns.quad_points <= MAX_POINTS:
        raise ConfigError(f"--quad-points must be in [1, {MAX_POINTS}], got {ns.quad_points}")
    if ns.grid < 2:
        raise ConfigError(f"--grid must be at least 2, got {ns.grid}")

    if ns.taylor_point == "mid":
        taylor_point = None
    else:
        try:
            taylor_point = float(ns.taylor_point)
        except ValueError:
            raise ConfigError(f"--taylor-point must be a number or 'mid', got {ns.taylor_point!r}")
        if not (math.isfinite(taylor_point) and a <= taylor_point <= b):
            raise ConfigError(f"--taylor-point {taylor_point} lies outside [{a}, {b}]")

    names = ("sine", "exp", "entropy") if ns.function == "all" else (ns.function,)
    return RunConfig(
        subcommand=ns.subcommand,
        functions=names,
        interval=iv,
        max_order=max_order,
        quad_points=ns.quad_points,
        taylor_point=taylor_point,
        convention=SignConvention(ns.convention),
        fmt=ns.format,
        grid=ns.grid,
        output=ns.output,
    )


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return v


def _csv_value(v, decimals: Optional[int]):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.{decimals}f}" if decimals is not None else repr(v)
    return str(v)


def render(cfg: RunConfig, columns: Sequence[str], rows: Sequence[Sequence],
           decimals: Optional[int] = None) -> str:
    """Serialize rows in the configured format."""
    if cfg.fmt == "json":
        payload = {
            "config": cfg.as_dict(),
            "rows": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_value(v, decimals) for v in row])
    return buf.getvalue()


def _specs(cfg: RunConfig):
    return [functions.builtin(name) for name in cfg.functions]


def cmd_table1(cfg: RunConfig, specs=None) -> tuple[int, str]:
    specs = _specs(cfg) if specs is None else specs
    rule = gauss_rule(cfg.quad_points, cfg.interval)
    reports = analysis.snr_table(specs, cfg.max_order, cfg.interval, rule,
                                 cfg.expansion_point, cfg.convention)
    rows = []
    for taylor, legendre in zip(reports[::2], reports[1::2]):
        for (order, t_db), (_, l_db) in zip(taylor.rows, legendre.rows):
            rows.append((taylor.function, order, t_db, l_db))
    columns = ("function", "order", "taylor_snr_db", "legendre_snr_db")
    return EXIT_OK, render(cfg, columns, rows, decimals=2)


def cmd_trace(cfg: RunConfig, specs=None) -> tuple[int, str]:
    specs = _specs(cfg) if specs is None else specs
    rule = gauss_rule(cfg.quad_points, cfg.interval)
    iv, K = cfg.interval, cfg.max_order
    x = np.linspace(iv.a, iv.b, cfg.grid)
    columns = (["function", "x", "f"] + [f"taylor_{k}" for k in range(1, K + 1)]
               + [f"legendre_{k}" for k in range(1, K + 1)])
    rows = []
    for f in specs:
        traces = [np.asarray(f(x), dtype=float)]
        traces += [approx.evaluate_taylor(approx.taylor_expand(f, cfg.expansion_point, k), x)
                   for k in range(1, K + 1)]
        traces += [approx.evaluate_series(approx.partial_projection(f, k, iv, rule, cfg.convention), x)
                   for k in range(1, K + 1)]
        for i, xi in enumerate(x):
            rows.append([f.name, float(xi)] + [float(t[i]) for t in traces])
    return EXIT_OK, render(cfg, columns, rows)


def cmd_bounds(cfg: RunConfig, specs=None) -> tuple[int, str]:
    specs = _specs(cfg) if specs is None else specs
    missing = [f.name for f in specs if f.derivative_bound is None]
    if missing:
        raise CapabilityError(f"no certified derivative bound for {', '.join(missing)}")
    rule = gauss_rule(cfg.quad_points, cfg.interval)
    columns = ("function", "n", "coeff_abs", "bound_max", "contribution", "bound_sq",
               "ratio", "dominated", "n0")
    rows = []
    ok = True
    for f in specs:
        n0, table = analysis.bound_table(f, cfg.max_order, cfg.interval, rule)
        for r in table:
            rows.append((f.name, r.n, r.coeff_abs, r.bound_max, r.contribution, r.bound_sq,
                         r.ratio, r.dominated, n0))
            if r.n >= n0 and not r.dominated:
                ok = False
    return (EXIT_OK if ok else EXIT_COMPUTE), render(cfg, columns, rows)


def cmd_slope(cfg: RunConfig, specs=None) -> tuple[int, str]:
    specs = _specs(cfg) if specs is None else specs
    iv = cfg.interval
    rule = gauss_rule(cfg.quad_points, iv)
    columns = ("function", "kernel_slope", "regression_slope", "legendre_c1_slope", "max_abs_diff")
    rows = []
    ok = True
    for f in specs:
        kernel = approx.slope_kernel_estimate(f, iv, rule)
        regression = approx.slope_regression_oracle(f, iv, rule)
        series = approx.slope_from_series(approx.project(f, 1, iv, rule, cfg.convention))
        values = (kernel, regression, series)
        diff = max(values) - min(values)
        ok = ok and diff <= SLOPE_TOL
        rows.append((f.name, kernel, regression, series, diff))
    return (EXIT_OK if ok else EXIT_COMPUTE), render(cfg, columns, rows)


COMMANDS = {
    "table1": cmd_table1,
    "trace": cmd_trace,
    "bounds": cmd_bounds,
    "slope": cmd_slope,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"approxcli: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        code, text = COMMANDS[cfg.subcommand](cfg)
    except CapabilityError as exc:
        print(f"approxcli: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (ApproxError, ArithmeticError, ValueError) as exc:
        print(f"approxcli: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"approxcli: cannot write {cfg.output}: {exc}", file=sys.stderr)
            return EXIT_COMPUTE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
