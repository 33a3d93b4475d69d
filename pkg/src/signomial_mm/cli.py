"""Command-line entry point: ``solve``, ``diagnose`` and ``verify``.

Exit codes: 0 on success (a diverging run is a valid outcome), 1 for usage
or problem-file errors, 2 for numerical failures and failed verification
suites.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .diagnostics import NO, diagnose
from .problemfile import ProblemFileError, ProblemSpec, bundled_names, load, load_bundled
from .runner import resolve_options, run_problem, stage_lines, summary_line, write_trace

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _schedule(text: str) -> tuple[int, int]:
    try:
        k0, k1 = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected k0:k1 with integer exponents") from None
    if k0 > k1:
        raise argparse.ArgumentTypeError("k0 must not exceed k1")
    return k0, k1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="signomial-mm", description="MM solvers for signomial and positive-orthant quadratic programs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="run the solver on a problem file")
    solve.add_argument("problem", help="path to a .prob file or the name of a bundled problem")
    solve.add_argument("--epsilon", type=float, help="relative-change convergence threshold")
    solve.add_argument("--max-iters", type=int, dest="max_iterations", help="outer iteration budget")
    solve.add_argument("--accel", type=int, choices=(0, 1, 2, 3), help="number of secant conditions")
    solve.add_argument("--schedule", type=_schedule, help="penalty constants 2^k0 .. 2^k1")
    solve.add_argument("--inner-eps", type=float, dest="inner_eps", help="inner-loop tolerance")
    solve.add_argument("--inner-iters", type=int, dest="inner_iterations", help="Newton steps per coordinate")
    solve.add_argument("--eps-floor", type=float, dest="eps_floor", help="floor for the QP update")
    solve.add_argument("--trace", type=Path, help="write the iteration trace as CSV")

    diag = sub.add_parser("diagnose", help="convexity, coercivity and attainment checks")
    diag.add_argument("problem")
    diag.add_argument("--seed", type=int, default=0, help="seed for the multistart sphere search")

    ver = sub.add_parser("verify", help="run a reproduction or property suite")
    ver.add_argument("suite", choices=sorted(verify_mod.SUITES))
    ver.add_argument("--seed", type=int, default=0)

    sub.add_parser("list", help="list bundled problems")
    return parser


def _load(ref: str) -> ProblemSpec:
    path = Path(ref)
    if path.exists():
        return load(path)
    if ref in bundled_names():
        return load_bundled(ref)
    raise FileNotFoundError(f"{ref}: no such file or bundled problem")


def _fmt_vec(v) -> str:
    return "(" + ", ".join(f"{x:.3f}" for x in v) + ")"


def cmd_solve(args) -> int:
    spec = _load(args.problem)
    opts = resolve_options(
        spec,
        epsilon=args.epsilon,
        max_iterations=args.max_iterations,
        accel=args.accel,
        schedule=args.schedule,
        inner_eps=args.inner_eps,
        inner_iterations=args.inner_iterations,
        eps_floor=args.eps_floor,
    )
    result = run_problem(spec, opts)
    if result.path is not None:
        print("log2(lambda)  iters  x_lambda")
        print("\n".join(stage_lines(result)))
    print(summary_line(result))
    if args.trace is not None:
        with open(args.trace, "w", newline="") as fh:
            write_trace(result, fh)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    spec = _load(args.problem)
    if spec.objective is None:
        print("diagnostics apply to signomial objectives; this problem is a quadratic program")
        return EXIT_OK
    report = diagnose(spec.objective, seed=args.seed)
    n = spec.dimension
    if report.strictly_convex is None:
        print(f"strictly convex: unknown (rank {report.exponent_rank} of {n}; not a posynomial)")
    else:
        verdict = "yes" if report.strictly_convex else "no"
        print(f"strictly convex: {verdict} (rank {report.exponent_rank} of {n})")
    c = report.coercive
    line = f"coercive: {c.status}"
    if c.status == NO:
        line += f"; certificate v = {_fmt_vec(c.certificate)}"
    if c.note and c.status != NO:
        line += f" ({c.note})"
    print(line)
    b = report.bounded_below
    line = f"infimum attained: {b.status}"
    if b.status == NO:
        line += f"; certificate v = {_fmt_vec(b.certificate)} with a.v < 0 for every exponent"
    elif b.note:
        line += f" ({b.note})"
    print(line)
    if c.t_min is not None:
        print(f"min over unit v of max a.v: {c.t_min:.6f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.SUITES[args.suite](seed=args.seed)
    for item in results:
        print(item.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} passed")
    return EXIT_OK if not failed else EXIT_NUMERIC


def cmd_list(args) -> int:
    for name in bundled_names():
        print(name)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"solve": cmd_solve, "diagnose": cmd_diagnose, "verify": cmd_verify, "list": cmd_list}[args.command]
    try:
        with np.errstate(over="ignore", under="ignore"):
            return handler(args)
    except ProblemFileError as exc:
        print(f"{args.problem}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
