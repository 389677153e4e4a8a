"""Command-line front end: eval | sweep | validate | heat | golden.

Points are comma-separated triples ("x1,x2,x3"); write --X=-1,0,1 (with the
equals sign) when the first coordinate is negative.  All numeric CSV output
is formatted with 17 significant digits and fixed row order, so identical
invocations produce byte-identical files regardless of the parallelism
degree.  Exit codes: 0 success, 1 validation/check failure, 2 usage error,
3 numerical non-convergence.

eval accepts a spectral point in any chamber and reports the W-mapped
presentation (spectral point sorted into the positive chamber, the same
Weyl element applied to X); the kernel is W-equivariant, so the value is
unchanged and the estimate columns refer to the mapped pair.

An optional TOML config file supplies defaults per subcommand
([eval], [sweep], ...); explicit flags override it.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

from .estimates import exponent_triple, sharp_estimate_log
from .geometry import APoint, Chamber, chamber_of, projection_permutation, root_values
from .heat import heat_estimate_log, heat_kernel_log
from .kernel import DegenerateSpectralError, ek, wall_tolerance
from .quadrature import NonConvergenceError
from .rank1 import LOG_SCALE_THRESHOLD
from .validation import ratio_sweep, run_suites, suite_names

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

SWEEP_HEADER = [
    "X",
    "lambda",
    "k",
    "chamber",
    "branch",
    "kernel_log",
    "estimate_log",
    "log_ratio",
    "quad_nodes",
    "quad_delta",
]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _plain(log_value: float) -> str:
    return _fmt(math.exp(log_value)) if log_value <= LOG_SCALE_THRESHOLD else ""


@dataclass
class RunConfig:
    """Validated arguments of one invocation; every downstream precondition
    is checked here so failures surface as named-field usage errors."""

    subcommand: str
    X: APoint | None = None
    Y: APoint | None = None
    lam: APoint | None = None
    k: float = 1.0
    t: float = 1.0
    rel_tol: float = 1e-9
    radius: float = 5.0
    grid_n: int = 8
    chamber: Chamber | None = None
    formula: str = "auto"
    out: str | None = None
    fmt: str = "csv"
    jobs: int = 1
    suite: str = "all"
    t_exponent: str = "derived"
    check: bool = False


def _parse_point(text: str, field: str, parser) -> APoint:
    try:
        parts = [float(v) for v in text.split(",")]
        if len(parts) != 3:
            raise ValueError("need exactly three coordinates")
        return APoint(*parts)
    except ValueError as exc:
        parser.error(f"--{field}: {exc}")


def _require_interior(lam: APoint, field: str, parser):
    # the evaluator's precondition: off every wall after Weyl projection
    from .geometry import project_plus, root_values

    rv = root_values(project_plus(lam))
    tol = wall_tolerance(lam)
    if lam.norm() > 0 and not (rv.alpha > tol and rv.beta > tol):
        parser.error(
            f"--{field}: point {lam.coords()} is on or too near a chamber wall "
            f"(projected root values {rv.alpha}, {rv.beta}, wall tolerance {tol!r})"
        )


def _load_config(path: str | None, section: str) -> dict:
    if not path:
        return {}
    try:
        import tomllib  # py >= 3.11
    except ModuleNotFoundError:  # pragma: no cover - version dependent
        import tomli as tomllib
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    return data.get(section, {})


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl-a2",
        description="Evaluate and verify the A2 Dunkl kernel, its sharp estimates, and the heat kernel.",
    )
    parser.add_argument("--config", help="TOML file with per-subcommand defaults")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_eval = sub.add_parser("eval", help="evaluate kernel and estimate at one point")
    p_eval.add_argument("--X", required=True)
    p_eval.add_argument("--lambda", dest="lam", required=True)
    p_eval.add_argument("--k", type=float, required=True)
    p_eval.add_argument("--rel-tol", type=float, default=None)
    p_eval.add_argument("--formula", choices=("alpha", "beta", "auto"), default=None)
    p_eval.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    p_eval.add_argument("--out", default=None)

    p_sweep = sub.add_parser("sweep", help="kernel/estimate ratio sweep over a chamber grid")
    p_sweep.add_argument("--chamber", required=True)
    p_sweep.add_argument("--radius", type=float, required=True)
    p_sweep.add_argument("--grid", dest="grid_n", type=int, required=True)
    p_sweep.add_argument("--k", type=float, required=True)
    p_sweep.add_argument("--rel-tol", type=float, default=None)
    p_sweep.add_argument("--jobs", type=int, default=None)
    p_sweep.add_argument("--out", required=True)

    p_val = sub.add_parser("validate", help="run invariant suites")
    p_val.add_argument("--suite", default=None, help=f"one of {', '.join(suite_names())} or 'all'")

    p_heat = sub.add_parser("heat", help="heat kernel and heat estimate at one point")
    p_heat.add_argument("--t", type=float, required=True)
    p_heat.add_argument("--X", required=True)
    p_heat.add_argument("--Y", required=True)
    p_heat.add_argument("--k", type=float, required=True)
    p_heat.add_argument("--rel-tol", type=float, default=None)
    p_heat.add_argument("--t-exponent", dest="t_exponent", choices=("derived", "printed"), default=None)
    p_heat.add_argument("--out", default=None)

    p_gold = sub.add_parser("golden", help="regenerate golden files from the brute-force oracles")
    p_gold.add_argument("--out", default=None, help="target directory (default: DUNKL_GOLDEN_DIR)")
    p_gold.add_argument("--check", action="store_true", help="compare against packaged values")
    return parser


def _merge(args, parser) -> RunConfig:
    section = _load_config(args.config, args.subcommand)
    cfg = RunConfig(subcommand=args.subcommand)

    def pick(name, cast=None):
        v = getattr(args, name, None)
        if v is None:
            v = section.get(name.replace("_", "-"), section.get(name))
        if v is not None and cast:
            v = cast(v)
        return v

    for name, cast in (
        ("k", float),
        ("t", float),
        ("rel_tol", float),
        ("radius", float),
        ("grid_n", int),
        ("formula", str),
        ("fmt", str),
        ("jobs", int),
        ("suite", str),
        ("t_exponent", str),
        ("out", str),
    ):
        v = pick(name, cast)
        if v is not None:
            setattr(cfg, name, v)
    cfg.check = bool(getattr(args, "check", False))

    if cfg.subcommand in ("eval", "heat"):
        cfg.X = _parse_point(pick("X"), "X", parser)
        if not 1e-14 <= cfg.rel_tol <= 1e-2:
            parser.error("--rel-tol: must lie in [1e-14, 1e-2]")
    if cfg.subcommand == "eval":
        cfg.lam = _parse_point(pick("lam"), "lambda", parser)
        _require_interior(cfg.lam, "lambda", parser)
    if cfg.subcommand == "heat":
        cfg.Y = _parse_point(pick("Y"), "Y", parser)
        if cfg.t <= 0:
            parser.error("--t: time must be positive")
        _require_interior(cfg.Y, "Y", parser)
        rvx = root_values(cfg.X)
        if min(rvx.alpha, rvx.beta) < 0:
            parser.error(
                f"--X: heat estimate requires X in the closed positive chamber, got {cfg.X.coords()}"
            )
    if cfg.subcommand in ("eval", "sweep", "heat"):
        if not 0 < cfg.k <= 8:
            parser.error("--k: multiplicity must lie in (0, 8]")
    if cfg.subcommand == "sweep":
        name = pick("chamber")
        try:
            cfg.chamber = Chamber[name.upper()]
        except (KeyError, AttributeError):
            parser.error(f"--chamber: unknown chamber {name!r}; use C123 .. C321")
        if not 1 <= cfg.grid_n <= 64:
            parser.error("--grid: must lie in [1, 64]")
        if not 0 < cfg.radius <= 50:
            parser.error("--radius: must lie in (0, 50]")
        if cfg.jobs < 1:
            parser.error("--jobs: must be >= 1")
    if cfg.subcommand == "validate":
        known = set(suite_names()) | {"all"}
        if cfg.suite not in known:
            parser.error(f"--suite: unknown suite {cfg.suite!r}; choose from {sorted(known)}")
    return cfg


def _point_str(p: APoint) -> str:
    return ",".join(_fmt(v) for v in p.coords())


def _cmd_eval(cfg: RunConfig) -> int:
    # canonical presentation: spectral point in C+, same Weyl element on X
    perm = projection_permutation(cfg.lam)
    X, lam = cfg.X.permuted(perm), cfg.lam.permuted(perm)
    kv = ek(X, lam, cfg.k, rel_tol=cfg.rel_tol, formula=cfg.formula)
    est_log = sharp_estimate_log(X, lam, cfg.k)
    branch = exponent_triple(X, lam, cfg.k)
    row = {
        "X": _point_str(X),
        "lambda": _point_str(lam),
        "k": _fmt(cfg.k),
        "chamber": chamber_of(X).name,
        "branch": branch.label(),
        "value": _plain(kv.log_value),
        "kernel_log": _fmt(kv.log_value),
        "estimate_log": _fmt(est_log),
        "log_ratio": _fmt(kv.log_value - est_log),
        "formula": kv.formula_used,
        "quad_nodes": str(kv.axis_nodes),
        "quad_delta": _fmt(kv.delta),
    }
    stream = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    try:
        if cfg.fmt == "json":
            json.dump(row, stream, indent=2)
            stream.write("\n")
        else:
            w = csv.writer(stream)
            w.writerow(row.keys())
            w.writerow(row.values())
    finally:
        if cfg.out:
            stream.close()
    return EXIT_OK


def _cmd_sweep(cfg: RunConfig) -> int:
    summary = ratio_sweep(
        cfg.chamber, cfg.radius, cfg.grid_n, cfg.k,
        rel_tol=cfg.rel_tol, collect_reports=True, jobs=cfg.jobs,
    )
    with open(cfg.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_HEADER)
        for r in summary.reports:
            w.writerow(
                [
                    _point_str(r.X),
                    _point_str(r.lam),
                    _fmt(r.k),
                    r.chamber.name,
                    r.branch.label(),
                    _fmt(r.kernel_log),
                    _fmt(r.estimate_log),
                    _fmt(r.log_ratio),
                    str(r.quad_nodes),
                    _fmt(r.quad_delta),
                ]
            )
    print(
        json.dumps(
            {
                "chamber": summary.chamber.name,
                "radius": summary.radius,
                "grid_n": summary.grid_n,
                "k": summary.k,
                "count": summary.count,
                "failures": len(summary.failures),
                "log_ratio_min": summary.log_ratio_min,
                "log_ratio_max": summary.log_ratio_max,
                "log_ratio_mean": summary.mean,
                "spread": summary.spread,
                "branch_counts": summary.branch_counts,
            },
            indent=2,
            sort_keys=True,
        )
    )
    return EXIT_OK


def _cmd_validate(cfg: RunConfig) -> int:
    results = run_suites(None if cfg.suite == "all" else cfg.suite)
    failed = 0
    for suite, checks in results.items():
        for name, ok, detail in checks:
            print(f"[{'PASS' if ok else 'FAIL'}] {suite}: {name}  {detail}")
            failed += 0 if ok else 1
    print(f"{'OK' if failed == 0 else 'FAIL'}: {failed} failing check(s)")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def _cmd_heat(cfg: RunConfig) -> int:
    p_log = heat_kernel_log(cfg.t, cfg.X, cfg.Y, cfg.k, rel_tol=cfg.rel_tol)
    e_log = heat_estimate_log(cfg.t, cfg.X, cfg.Y, cfg.k, t_exponent=cfg.t_exponent)
    stream = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    try:
        w = csv.writer(stream)
        w.writerow(["t", "X", "Y", "k", "p_t", "estimate", "log_ratio"])
        w.writerow(
            [
                _fmt(cfg.t),
                _point_str(cfg.X),
                _point_str(cfg.Y),
                _fmt(cfg.k),
                _plain(p_log),
                _plain(e_log),
                _fmt(p_log - e_log),
            ]
        )
    finally:
        if cfg.out:
            stream.close()
    return EXIT_OK


def _cmd_golden(cfg: RunConfig) -> int:
    from . import goldens

    out_dir = cfg.out or str(goldens.golden_dir())
    values = goldens.regenerate(out_dir)
    print(f"golden files written to {out_dir}")
    if cfg.check:
        stored = goldens.load_golden()
        bad = goldens.compare_to_stored(values, stored)
        if bad:
            for family, key, got, want in bad:
                print(f"[FAIL] {family}/{key}: regenerated {got!r}, stored {want!r}")
            return EXIT_VALIDATION
        print(f"all {sum(len(v) for v in stored.values())} golden values reproduced")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge(args, parser)
    except OSError as exc:
        parser.error(str(exc))
    try:
        handler = {
            "eval": _cmd_eval,
            "sweep": _cmd_sweep,
            "validate": _cmd_validate,
            "heat": _cmd_heat,
            "golden": _cmd_golden,
        }[cfg.subcommand]
        return handler(cfg)
    except NonConvergenceError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DegenerateSpectralError as exc:
        print(f"degenerate spectral argument: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
