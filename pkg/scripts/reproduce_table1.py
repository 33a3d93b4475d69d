"""Unconstrained benchmarks: our result next to the reference row.

    python scripts/reproduce_table1.py
"""

import time

from signomial_mm.benchmarks import TABLE1, TABLE1_CONFIG, objective
from signomial_mm.driver import solve
from signomial_mm.runner import format_point


def main():
    start = time.perf_counter()
    print(f"{'fn':<4} {'initial':<24} {'min point':<26} {'value':>10} {'iters':>6}  reference")
    for row in TABLE1:
        tr = solve(objective(row.name), row.x0, TABLE1_CONFIG)
        point = "diverges" if tr.diverged else format_point(tr.x)
        ref_point = "diverges" if row.diverges else format_point(row.point)
        print(
            f"{row.name:<4} {format_point(row.x0):<24} {point:<26} {tr.value:>10.4f} {tr.iterations:>6}"
            f"  {ref_point} {row.value} ({row.iterations})"
        )
    print(f"total {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()
