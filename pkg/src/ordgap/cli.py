"""``ordgap`` command line.

Usage::

    ordgap gaps --dist exp:lambda=1 --n 2..6 --method direct,stieltjes,mc --out csv
    ordgap check --dist uniform:a=0,b=1 --n 2..20 --max-order 6 --out json
    ordgap mc --dist weibull:shape=2 --n 5 --k 2 --samples 100000 --seed 3 --shards 4
    ordgap approx --dist gompertz --n 2..50
    ordgap dist-list
    ordgap dist-probe --dist uniform --x 0.25,0.5

Exit status: 0 success, 1 computation error, 2 usage error, 3 when ``check``
reports any ``fail`` verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Iterable, Sequence

from . import approx as approx_mod
from .dist import ZOO, DistributionError, make_builtin, probe
from .gaps import GapValue, Method, QuadratureConfig, gap_expectation, r_continuous, r_direct, \
    r_stieltjes
from .mc import mc_gap
from .monotone import GapSequence, check_all

GRAMMAR = (
    "ordgap <command> --dist <spec> [--n A..B] [--k K] [--method m1,m2] [--u X.Y] "
    "[--samples N] [--seed S] [--shards C] [--max-order K] [--rel-tol T] "
    "[--tail-mass D] [--out csv|json] [--output PATH]\n"
    "commands: gaps, check, mc, approx, dist-list, dist-probe\n"
    "distribution spec: name:key=value,... with name in " + ", ".join(ZOO)
)

# Every default in one place; flags override.
DEFAULTS = {
    "n": "2..10",
    "check_n": "2..20",
    "method": "direct",
    "samples": 1_000_000,
    "seed": 0,
    "shards": 1,
    "max_order": 8,
    "rel_tol": QuadratureConfig().rel_tol,
    "tail_mass": QuadratureConfig().tail_mass,
    "out": "csv",
    "check_out": "json",
}

GAPS_HEADER = ["n", "method", "value", "err_estimate"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    """17 significant digits: enough for an exact float round trip."""
    return format(float(x), ".17g")


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"--n expects A..B or a single integer, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _floats(text: str, flag: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordgap", description="Expected gaps of order statistics.",
                epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("command", choices=["gaps", "check", "mc", "approx", "dist-list", "dist-probe"])
    p.add_argument("--dist")
    p.add_argument("--n")
    p.add_argument("--k", type=int)
    p.add_argument("--method")
    p.add_argument("--u")
    p.add_argument("--x")
    p.add_argument("--samples", type=int, default=DEFAULTS["samples"])
    p.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    p.add_argument("--shards", type=int, default=DEFAULTS["shards"])
    p.add_argument("--max-order", type=int, default=DEFAULTS["max_order"])
    p.add_argument("--rel-tol", type=float, default=DEFAULTS["rel_tol"])
    p.add_argument("--tail-mass", type=float, default=DEFAULTS["tail_mass"])
    p.add_argument("--out", choices=["csv", "json"])
    p.add_argument("--output")
    return p


def _csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _table(header: Sequence[str], rows: list[Sequence], out: str, meta: dict) -> str:
    if out == "csv":
        return _csv_text(header, rows)
    return json.dumps({**meta, "rows": [dict(zip(header, r)) for r in rows]}, indent=2) + "\n"


def read_gaps_csv(source: str | Path) -> dict[str, GapSequence]:
    """Parse a ``gaps`` CSV back into one :class:`GapSequence` per method."""
    text = Path(source).read_text() if isinstance(source, Path) else source
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != GAPS_HEADER:
        raise ValueError(f"expected header {','.join(GAPS_HEADER)}, got {reader.fieldnames}")
    by_method: dict[str, list[tuple[float, float, float]]] = {}
    for row in reader:
        by_method.setdefault(row["method"], []).append(
            (float(row["n"]), float(row["value"]), float(row["err_estimate"])))
    out = {}
    for method, rows in by_method.items():
        rows.sort()
        out[method] = GapSequence(int(rows[0][0]), tuple(r[1] for r in rows),
                                  tuple(r[2] for r in rows), method)
    return out


def _methods(text: str | None) -> list[Method]:
    names = (text or DEFAULTS["method"]).split(",")
    try:
        methods = [Method(m.strip()) for m in names if m.strip()]
    except ValueError:
        raise UsageError(f"--method expects a subset of {[m.value for m in Method]}") from None
    if not methods:
        raise UsageError("--method must name at least one method")
    return sorted(set(methods), key=lambda m: list(Method).index(m))


def _need_dist(args):
    if not args.dist:
        raise UsageError(f"{args.command} requires --dist")
    return make_builtin(args.dist)


def _cfg(args) -> QuadratureConfig:
    try:
        return QuadratureConfig(rel_tol=args.rel_tol, tail_mass=args.tail_mass)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _gap_rows(args) -> list[list]:
    dist = _need_dist(args)
    cfg = _cfg(args)
    ns = parse_range(args.n or DEFAULTS["n"])
    methods = _methods(args.method)
    if args.k is not None and any(m in (Method.STIELTJES, Method.CONTINUOUS) for m in methods):
        raise UsageError("--k applies to the direct and mc methods only")
    results: list[GapValue | tuple] = []
    for n in ns:
        k = args.k if args.k is not None else n - 1
        if n < 2 and Method.MC in methods or (args.k is not None and not 1 <= k <= n - 1):
            raise UsageError(f"k={k} is out of range for n={n}")
        for m in methods:
            if m is Method.DIRECT:
                g = r_direct(dist, n, cfg) if k == n - 1 or n == 1 else gap_expectation(dist, n, k, cfg)
            elif m is Method.STIELTJES:
                g = r_stieltjes(dist, n, cfg)
            elif m is Method.CONTINUOUS:
                if args.u:
                    continue
                g = r_continuous(dist, n, cfg)
            else:
                est = mc_gap(dist, n, k, args.samples, args.seed, args.shards)
                g = GapValue(n, k, est.mean, Method.MC, est.stderr)
            results.append(g)
    if Method.CONTINUOUS in methods and args.u:
        results.extend(r_continuous(dist, u, cfg) for u in _floats(args.u, "--u"))
    order = {m: i for i, m in enumerate(Method)}
    results.sort(key=lambda g: (g.n, order[g.method]))
    return [[g.n if g.method is not Method.CONTINUOUS else float(g.n), g.method.value,
             float(g.value), float(g.err_estimate)] for g in results]


def cmd_gaps(args) -> tuple[str, int]:
    rows = _gap_rows(args)
    return _table(GAPS_HEADER, rows, args.out or DEFAULTS["out"], {"dist": args.dist}), 0


def cmd_check(args) -> tuple[str, int]:
    dist = _need_dist(args)
    cfg = _cfg(args)
    ns = parse_range(args.n or DEFAULTS["check_n"])
    if len(ns) < 2:
        raise UsageError("check needs at least two values of n")
    methods = _methods(args.method)
    if len(methods) != 1:
        raise UsageError("check uses exactly one --method")
    m = methods[0]
    if m is Method.DIRECT:
        gaps = [r_direct(dist, n, cfg) for n in ns]
    elif m is Method.STIELTJES:
        gaps = [r_stieltjes(dist, n, cfg) for n in ns]
    elif m is Method.CONTINUOUS:
        gaps = [r_continuous(dist, n, cfg) for n in ns]
    else:
        gaps = []
        for n in ns:
            est = mc_gap(dist, n, n - 1, args.samples, args.seed, args.shards)
            gaps.append(GapValue(n, n - 1, est.mean, Method.MC, est.stderr))
    seq = GapSequence(ns[0], tuple(g.value for g in gaps), tuple(g.err_estimate for g in gaps), m)
    report = check_all(seq, args.max_order)
    status = 3 if report.any_fail else 0
    if (args.out or DEFAULTS["check_out"]) == "json":
        payload = {"dist": dist.name, "method": m.value, "ns": ns,
                   "values": list(seq.values), "err_estimates": list(seq.err_estimates),
                   "report": report.to_dict()}
        return json.dumps(payload, indent=2) + "\n", status
    rows = []
    for name in ("decreasing", "difference_monotone", "ratio_monotone", "log_convex"):
        v = getattr(report, name)
        rows.append([name, "", v.status.value, float(v.worst_margin), float(v.floor)])
    for k, v in enumerate(report.cm_orders):
        rows.append(["completely_monotone", k, v.status.value, float(v.worst_margin), float(v.floor)])
    return _csv_text(["check", "order", "status", "worst_margin", "floor"], rows), status


def cmd_mc(args) -> tuple[str, int]:
    dist = _need_dist(args)
    rows = []
    for n in parse_range(args.n or DEFAULTS["n"]):
        k = args.k if args.k is not None else n - 1
        if n < 2 or not 1 <= k <= n - 1:
            raise UsageError(f"k={k} is out of range for n={n}")
        e = mc_gap(dist, n, k, args.samples, args.seed, args.shards)
        rows.append([n, k, e.mean, e.stderr, e.samples, e.seed, e.shards])
    header = ["n", "k", "mean", "stderr", "samples", "seed", "shards"]
    return _table(header, rows, args.out or DEFAULTS["out"], {"dist": args.dist}), 0


def cmd_approx(args) -> tuple[str, int]:
    dist = _need_dist(args)
    cfg = _cfg(args)
    rows = []
    for n in parse_range(args.n or DEFAULTS["n"]):
        if n < 2:
            raise UsageError("approx needs n >= 2")
        r = approx_mod.quantile_hazard_approx(dist, n, cfg)
        rows.append([r.n, r.x_n, r.inv_hazard_at_xn, r.r_quadrature, r.abs_gap])
    header = ["n", "x_n", "inv_hazard_at_xn", "r_quadrature", "abs_gap"]
    return _table(header, rows, args.out or DEFAULTS["out"], {"dist": args.dist}), 0


def cmd_dist_list(args) -> tuple[str, int]:
    rows = []
    for name, entry in ZOO.items():
        params = ";".join(
            f"{k}={entry.defaults[k]}" if k in entry.defaults else k for k in entry.keys)
        rows.append([name, params, ";".join(entry.required), entry.doc])
    return _table(["name", "parameters", "required", "description"], rows,
                  args.out or DEFAULTS["out"], {}), 0


def cmd_dist_probe(args) -> tuple[str, int]:
    dist = _need_dist(args)
    if not args.x:
        raise UsageError("dist-probe requires --x x1,x2,...")
    recs = [probe(dist, x) for x in _floats(args.x, "--x")]
    header = ["x", "F", "survival", "phi", "hazard", "inverse_hazard", "in_support"]
    rows = [[asdict(r)[h] for h in header] for r in recs]
    return _table(header, rows, args.out or DEFAULTS["out"], {"dist": dist.name}), 0


COMMANDS = {
    "gaps": cmd_gaps,
    "check": cmd_check,
    "mc": cmd_mc,
    "approx": cmd_approx,
    "dist-list": cmd_dist_list,
    "dist-probe": cmd_dist_probe,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text, status = COMMANDS[args.command](args)
    except (UsageError, DistributionError) as exc:
        print(f"ordgap: error: {exc}\nusage: {GRAMMAR}", file=stderr)
        return 2
    except (ArithmeticError, ValueError) as exc:
        print(f"ordgap: computation failed: {exc}", file=stderr)
        return 1
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
