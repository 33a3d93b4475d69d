"""Iteration counts on f6 for each secant window size.

    python scripts/acceleration_f6.py
"""

from signomial_mm.benchmarks import F6_ITERATIONS, TABLE1_CONFIG, UNCONSTRAINED
from signomial_mm.driver import SolverConfig, solve


def main():
    for q in (0, 1, 2, 3):
        cfg = SolverConfig(epsilon=TABLE1_CONFIG.epsilon, inner=TABLE1_CONFIG.inner, acceleration_q=q)
        tr = solve(UNCONSTRAINED["f6"], (1.0, 1.0), cfg)
        ref = F6_ITERATIONS.get(q, "-")
        print(
            f"q={q}  iterations {tr.iterations:>4} (reference {ref})  x=({tr.x[0]:.6f}, {tr.x[1]:.6f})"
            f"  f={tr.value:.3e}  rejected {tr.rejected_accelerations}  {tr.outcome}"
        )


if __name__ == "__main__":
    main()
