"""Penalty paths for the two quadratic programs, plain and accelerated.

    python scripts/reproduce_qp_tables.py [f10|f11]
"""

import math
import sys
import time

from signomial_mm.benchmarks import QP_PROBLEMS, QP_X0, TABLE2, TABLE3
from signomial_mm.driver import SolverConfig
from signomial_mm.nnqp import solve_qp
from signomial_mm.penalty import PenaltySchedule
from signomial_mm.runner import format_point

SETTINGS = {"f10": (17, 1e-9, TABLE2), "f11": (21, 1e-16, TABLE3)}


def run(name, q):
    k1, eps, _ = SETTINGS[name]
    cfg = SolverConfig(epsilon=eps, max_iterations=100_000, acceleration_q=q)
    schedule = PenaltySchedule.powers_of_two(0, k1, inner_config=cfg, stop_tolerance=None)
    start = time.perf_counter()
    result = solve_qp(QP_PROBLEMS[name], QP_X0, schedule)
    return result, time.perf_counter() - start


def main(names):
    for name in names:
        ref = SETTINGS[name][2]
        plain, t0 = run(name, 0)
        accel, t1 = run(name, 1)
        print(f"{name}: plain {t0:.2f} s, q=1 {t1:.2f} s")
        print(f"{'k':>3} {'iters':>7} {'q=1':>5}  {'x_lambda':<18} reference")
        for a, b in zip(plain.stages, accel.stages):
            k = int(round(math.log2(a.lam)))
            row = ref[k]
            print(f"{k:>3} {a.iterations:>7} {b.iterations:>5}  {format_point(a.x):<18} {row}")
        print(f"final {format_point(plain.x)}\n")


if __name__ == "__main__":
    main(sys.argv[1:] or list(SETTINGS))
