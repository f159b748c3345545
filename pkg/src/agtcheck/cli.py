"""Command-line entry point: computations and verification suites as JSON.

Exit codes: 0 when everything requested passes, 1 when a verification fails,
2 for usage errors and 3 when the chosen evaluation point is degenerate.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import InvalidCharacterError
from .fock import (agt_json, agt_reports, fock_relations, freefield_identity_checks,
                   heisenberg_fock, highest_weight_checks, transport_check, virasoro_check)
from .jack import (check_eigenvalues, check_iso_fixedpoint, check_laplace_identity,
                   check_pieri, jack)
from .localization import gaiotto, nekrasov_json
from .partitions import MultiPartition, parse_partition
from .scalars import DegeneratePointError, generic_point, make_params
from .shc import verify_relations, whittaker_localization
from .shuffle import check_shuffle_iso, shuffle_monomial

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3

SUITES = ("shc", "jack", "shuffle", "virasoro", "whittaker", "agt")


class UsageError(ValueError):
    """Invalid flags or flag combinations."""


@dataclass
class RunConfig:
    command: str
    r: int = 1
    order: int = 3
    grades: int = 3
    mode: str = "exact"
    point: tuple = None
    seed: int = None
    out: str = None
    suites: tuple = ()
    n: int = 2
    l: int = 2
    inject_fault: bool = False
    partition: tuple = ()
    words: list = field(default_factory=list)

    def context(self):
        return make_params(self.r, self.mode, self.point)

    def to_json(self):
        out = {"command": self.command, "r": self.r, "mode": self.mode}
        if self.mode == "point":
            out["point"] = [str(v) for v in self.point]
        return out


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number")


def _rationals(text):
    return [_rational(t) for t in text.split(",") if t.strip()]


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("ceilings must be >= 0")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _common(p):
    p.add_argument("--r", type=_positive, default=1, help="rank")
    p.add_argument("--mode", choices=("exact", "point"), default="exact")
    p.add_argument("--x", type=_rational, help="value of x in point mode")
    p.add_argument("--y", type=_rational, help="value of y in point mode")
    p.add_argument("--e", type=_rationals, help="comma-separated e_1..e_r in point mode")
    p.add_argument("--seed", type=int, help="draw a reproducible random point")
    p.add_argument("--out", help="write the JSON document here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="agtcheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nekrasov", help="Nekrasov series coefficients")
    _common(p)
    p.add_argument("--order", type=_nonnegative, default=3)

    p = sub.add_parser("gaiotto", help="Gaiotto state at one grade")
    _common(p)
    p.add_argument("--n", type=_nonnegative, default=1)

    p = sub.add_parser("jack", help="Jack polynomial in the power-sum basis")
    _common(p)
    p.add_argument("--lambda", dest="partition", required=True,
                   help="partition, e.g. 2,1 or (2,1)")

    p = sub.add_parser("shuffle", help="shuffle product of theta generators")
    _common(p)
    p.add_argument("--theta", required=True,
                   help="exponents l_1,...,l_n of theta_{l_1} * ... * theta_{l_n}")

    p = sub.add_parser("agt", help="Fock-side Whittaker norms against the Nekrasov series")
    _common(p)
    p.add_argument("--order", type=_nonnegative, default=3)

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--grades", type=_nonnegative, default=3, help="grade ceiling")
    p.add_argument("--n", type=_positive, default=2, help="shuffle weight ceiling")
    p.add_argument("--l", type=_nonnegative, default=2, help="index ceiling")
    p.add_argument("--inject-fault", action="store_true",
                   help="corrupt one f_{1,0} entry to exercise failure reporting")
    return parser


def config_from_args(args):
    cfg = RunConfig(command=args.command, r=args.r, mode=args.mode, seed=args.seed, out=args.out)
    given = [v is not None for v in (args.x, args.y, args.e)]
    if cfg.mode == "exact":
        if any(given) or args.seed is not None:
            raise UsageError("--x/--y/--e/--seed need --mode point")
    else:
        base = generic_point(cfg.r, args.seed)
        x = args.x if args.x is not None else base[0]
        y = args.y if args.y is not None else base[1]
        e = tuple(args.e) if args.e is not None else base[2:]
        if len(e) != cfg.r:
            raise UsageError(f"--e needs {cfg.r} values for r = {cfg.r}")
        cfg.point = (x, y) + tuple(e)
    for name in ("order", "grades", "n", "l", "inject_fault"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if args.command == "jack":
        try:
            cfg.partition = tuple(parse_partition(args.partition))
        except ValueError as exc:
            raise UsageError(str(exc))
    if args.command == "shuffle":
        try:
            cfg.words = [int(t) for t in args.theta.split(",") if t.strip()]
        except ValueError:
            raise UsageError("--theta takes comma-separated integers")
        if any(l < 0 for l in cfg.words) or not cfg.words:
            raise UsageError("--theta needs one or more exponents >= 0")
    if args.command == "verify":
        cfg.suites = SUITES if args.suite == "all" else (args.suite,)
    return cfg


# ---------------------------------------------------------------------------
# computations
# ---------------------------------------------------------------------------

def run_compute(cfg):
    """The JSON document of a computation command."""
    ctx = cfg.context()
    if cfg.command == "nekrasov":
        return nekrasov_json(ctx, cfg.order)
    if cfg.command == "gaiotto":
        return gaiotto(ctx, cfg.n).to_json(ctx)
    if cfg.command == "jack":
        ctx1 = make_params(1, cfg.mode, cfg.point[:3] if cfg.point else None)
        J = jack(ctx1, cfg.partition)
        return {"lambda": list(J.lam),
                "terms": [{"p": list(mu), "coeff": ctx1.fmt(c)}
                          for mu, c in sorted(J.expansion.items(), key=lambda kv: tuple(kv[0]))],
                "text": J.text(ctx1)}
    if cfg.command == "shuffle":
        return {"theta": cfg.words, "product": shuffle_monomial(ctx, cfg.words).to_json()}
    if cfg.command == "agt":
        return agt_json(ctx, cfg.order)
    raise UsageError(f"unknown command {cfg.command}")


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _fault(ctx):
    r = ctx.r
    return (MultiPartition([()] * r), MultiPartition([(1,)] + [()] * (r - 1)))


def suite_reports(cfg, ctx, suite):
    """The relation reports of one suite."""
    if suite == "shc":
        fault = _fault(ctx) if cfg.inject_fault else None
        return verify_relations(ctx, cfg.grades, cfg.l, fault=fault)
    if suite == "whittaker":
        return whittaker_localization(ctx, cfg.grades)
    if suite == "jack":
        ctx1 = make_params(1, cfg.mode, cfg.point[:3] if cfg.point else None)
        return (check_eigenvalues(ctx1, cfg.grades, cfg.l + 1)
                + check_pieri(ctx1, cfg.grades)
                + check_iso_fixedpoint(ctx1, cfg.grades, cfg.l)
                + check_laplace_identity(ctx1, cfg.grades))
    if suite == "shuffle":
        return check_shuffle_iso(ctx, cfg.n, cfg.l, min(cfg.grades, 2))
    if suite == "virasoro":
        out = (heisenberg_fock(ctx, cfg.grades, cfg.l)
               + highest_weight_checks(ctx, cfg.l)
               + freefield_identity_checks(ctx, cfg.l, cfg.grades)
               + fock_relations(ctx, cfg.grades, cfg.l))
        if ctx.r >= 2:
            out += virasoro_check(ctx, cfg.l, cfg.grades)
        return out
    if suite == "agt":
        out = agt_reports(ctx, cfg.grades)
        if ctx.r == 1:
            out += transport_check(ctx, cfg.grades)
        return out
    raise UsageError(f"unknown suite {suite}")


def run_verify(cfg):
    """Run the selected suites; returns (exit status, JSON report)."""
    ctx = cfg.context()
    doc = {"config": cfg.to_json(), "grades": cfg.grades, "l": cfg.l, "suites": {}}
    ok = True
    for suite in cfg.suites:
        if suite == "agt" and ctx.r > 2:
            if len(cfg.suites) == 1:
                raise UsageError("the agt suite covers r = 1 and r = 2")
            doc["suites"][suite] = {"skipped": "the agt suite covers r = 1 and r = 2"}
            continue
        reports = suite_reports(cfg, ctx, suite)
        passed = all(rep.passed for rep in reports)
        ok = ok and passed
        doc["suites"][suite] = {"passed": passed, "count": len(reports),
                                "failures": sum(not rep.passed for rep in reports),
                                "reports": [rep.to_json() for rep in reports]}
    doc["passed"] = ok
    return (EXIT_PASS if ok else EXIT_FAIL), doc


# ---------------------------------------------------------------------------

def _emit(doc, path):
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        cfg = config_from_args(args)
        if cfg.command == "verify":
            status, doc = run_verify(cfg)
        else:
            status, doc = EXIT_PASS, run_compute(cfg)
    except UsageError as exc:
        sys.stderr.write(f"agtcheck: error: {exc}\n")
        return EXIT_USAGE
    except (DegeneratePointError, InvalidCharacterError) as exc:
        hint = " (choose another point with --seed or --x/--y/--e)" if args.mode == "point" else ""
        sys.stderr.write(f"agtcheck: degenerate parameters: {exc}{hint}\n")
        return EXIT_DEGENERATE
    except ValueError as exc:
        sys.stderr.write(f"agtcheck: error: {exc}\n")
        return EXIT_USAGE
    _emit(doc, cfg.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
