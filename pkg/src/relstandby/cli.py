"""``relstandby`` command line.

    relstandby <validate|curve|table|simulate> --config <path|bundled name>
               [--quantity Q] [--grid a:b:n] [--seed N] [--count N] [--strict]
               [--format csv|json] [--out path]

Exit status: 0 success, 1 computation or validity failure, 2 usage or
configuration error.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import mrl, reliability
from .config import QUANTITIES, ConfigError, RunConfig, TableConfig, bundled_configs, load_config, parse_grid
from .engine import Estimate, Path
from .errors import RelStandbyError, ValidationError
from .simulate import Targets, simulate_metrics
from .system import validate_system

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# tolerances for flagging table cells against the printed reference values
MTTF_TOL = 1e-4
COST_TOL = 1e-3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parser():
    p = _Parser(prog="relstandby", description="Reliability of a k-out-of-n system with one cold standby under a copula.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("validate", "curve", "table", "simulate"):
        s = sub.add_parser(name)
        s.add_argument("--config", action="append", required=True, help="config path or bundled name (repeatable for table)")
        s.add_argument("--quantity", choices=QUANTITIES)
        s.add_argument("--grid", help="start:stop:points")
        s.add_argument("--seed", type=int)
        s.add_argument("--count", type=int, help="Monte Carlo sample count (simulate)")
        s.add_argument("--strict", action="store_true", help="treat an improper copula density as failure")
        s.add_argument("--format", choices=("csv", "json"))
        s.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--list-configs", action="store_true", help=argparse.SUPPRESS)
    return p


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _single(args) -> RunConfig:
    if len(args.config) != 1:
        raise ConfigError(f"{args.command} takes exactly one --config")
    cfg = load_config(args.config[0])
    if isinstance(cfg, TableConfig):
        raise ConfigError(f"{args.config[0]} is a table config; use the table command")
    return cfg


def _structural(cfg: RunConfig):
    report = validate_system(cfg.system)
    if not report.ok:
        raise ConfigError("invalid system: " + "; ".join(report.failures))
    return report


def _warn_improper(report):
    v = report.copula_validity
    if v is not None and not v.is_proper_density:
        print(
            f"warning: copula density min {v.min_corner_density:.6g} at corner {v.argmin_corner}; "
            "values are signed-density formula evaluations",
            file=sys.stderr,
        )
        return True
    return False


def cmd_validate(args) -> int:
    cfg = _single(args)
    report = validate_system(cfg.system)
    print(json.dumps(report.to_dict(), indent=2))
    if not report.ok:
        for f in report.failures:
            print(f"error: {f}", file=sys.stderr)
        return EXIT_USAGE
    improper = _warn_improper(report)
    return EXIT_FAIL if (improper and args.strict) else EXIT_OK


def _curve_point(quantity, spec, x, ev) -> Estimate:
    if quantity == "SurvivalBare":
        return reliability.survival_kn(spec, x)
    if quantity == "SurvivalT":
        return reliability.survival_T(spec, x, ev)
    return {"Psi1": mrl.psi1, "Psi2": mrl.psi2, "Psi3": mrl.psi3}[quantity](spec, x, ev)


def curve_rows(cfg: RunConfig, quantity: str, xs):
    """``(x, value, error_bound, path)`` rows for one quantity on a grid."""
    rows = []
    for x in xs:
        est = _curve_point(quantity, cfg.system, float(x), cfg.eval)
        rows.append((float(x), est.value, est.error_bound, est.path.value))
    return rows


def _fmt(v):
    return f"{v:.12g}"


def format_curve_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "value", "error_bound", "path"])
    for x, v, e, p in rows:
        w.writerow([_fmt(x), _fmt(v), _fmt(e), p])
    return buf.getvalue()


def cmd_curve(args) -> int:
    cfg = _single(args)
    _warn_improper(_structural(cfg))
    quantity = args.quantity or cfg.quantity
    if quantity is None:
        raise ConfigError("no quantity given (use --quantity or the config's 'quantity')")
    grid = parse_grid(args.grid) if args.grid else cfg.grid
    if grid is None:
        raise ConfigError("no grid given (use --grid or the config's 'grid')")
    rows = curve_rows(cfg, quantity, grid.values())
    fmt = args.format or cfg.output_format
    if fmt == "json":
        text = json.dumps(
            {"quantity": quantity, "rows": [dict(zip(("x", "value", "error_bound", "path"), r)) for r in rows]}, indent=2
        ) + "\n"
    else:
        text = format_curve_csv(rows)
    _emit(text, args.out or cfg.output_path)
    return EXIT_OK


TABLE_FIELDS = ("mttf_bare", "mttf_standby", "cost_rate_bare", "cost_rate_standby")


def table_row(cfg: RunConfig):
    """Compute one table row and compare it with the config's reference values."""
    rates = reliability.cost_rates(cfg.system, cfg.unit_cost, cfg.eval)
    row = {
        "name": cfg.name,
        "mttf_bare": rates.mttf_bare.value,
        "mttf_bare_error": rates.mttf_bare.error_bound,
        "mttf_standby": rates.mttf_standby.value,
        "mttf_standby_error": rates.mttf_standby.error_bound,
        "cost_rate_bare": rates.cost_rate_bare,
        "cost_rate_standby": rates.cost_rate_standby,
    }
    notes = []
    for key in TABLE_FIELDS:
        if key in cfg.reference:
            tol = MTTF_TOL if key.startswith("mttf") else COST_TOL
            ref = float(cfg.reference[key])
            if abs(row[key] - ref) > tol:
                notes.append(f"{cfg.name or 'row'}: {key} computed {row[key]:.6f} but reference prints {ref:.6f}")
    row["flags"] = notes
    return row


def format_table(title, rows) -> str:
    lines = [title] if title else []
    header = f"{'row':<28}{'E(bare)':>12}{'E(T)':>12}{'C_bare':>12}{'C_T':>12}"
    lines += [header, "-" * len(header)]
    footnotes = []
    for r in rows:
        mark = ""
        if r["flags"]:
            footnotes.extend(r["flags"])
            mark = f" [{len(footnotes)}]" if len(r["flags"]) == 1 else f" [{len(footnotes) - len(r['flags']) + 1}-{len(footnotes)}]"
        lines.append(
            f"{r['name']:<28}{r['mttf_bare']:>12.6f}{r['mttf_standby']:>12.6f}"
            f"{r['cost_rate_bare']:>12.6f}{r['cost_rate_standby']:>12.6f}{mark}"
        )
    for i, note in enumerate(footnotes, 1):
        lines.append(f"[{i}] {note}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    sections = []
    for ref in args.config:
        c = load_config(ref)
        sections.append((c.title, c.rows) if isinstance(c, TableConfig) else (c.name, (c,)))
    all_rows = []
    for title, cfgs in sections:
        rows = []
        for cfg in cfgs:
            _warn_improper(_structural(cfg))
            rows.append(table_row(cfg))
        sys.stdout.write(format_table(title, rows))
        all_rows += [dict(r, table=title) for r in rows]
    if args.out:
        fmt = args.format or "csv"
        if fmt == "json":
            text = json.dumps(all_rows, indent=2) + "\n"
        else:
            buf = io.StringIO()
            cols = ["table", "name", "mttf_bare", "mttf_bare_error", "mttf_standby", "mttf_standby_error",
                    "cost_rate_bare", "cost_rate_standby", "flags"]
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(cols)
            for r in all_rows:
                w.writerow([r["table"], r["name"]] + [_fmt(r[c]) for c in cols[2:-1]] + [" | ".join(r["flags"])])
            text = buf.getvalue()
        _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _single(args)
    _structural(cfg)
    count = args.count if args.count is not None else (cfg.sample_count or cfg.eval.mc_samples)
    if count < 1:
        raise ConfigError("sample count must be positive")
    seed = args.seed if args.seed is not None else cfg.eval.seed
    targets = cfg.targets or Targets(mttf=True)
    result = simulate_metrics(cfg.system, targets, count, seed, cfg.eval.substreams)
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.out or cfg.output_path)
    return EXIT_OK


COMMANDS = {"validate": cmd_validate, "curve": cmd_curve, "table": cmd_table, "simulate": cmd_simulate}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv[:1] == ["--list-configs"]:
        print("\n".join(bundled_configs()))
        return EXIT_OK
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RelStandbyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
