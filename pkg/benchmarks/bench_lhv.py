"""Benchmark the numba and numpy backends of the assignment-enumeration kernel.

Times exhaustive search over random parity-constraint systems of growing
universe size, verifying that both backends return identical results.
The numba backend is warmed up once so compile time is excluded.

Run:  python3 benchmarks/bench_lhv.py [--max-settings 22] [--constraints 8]
"""

import argparse
import time

import numpy as np

from twotime import _kernels
from twotime.lhv import ConstraintSet, ProductConstraint, Setting, search
from twotime.scenarios import ghz_constraint_set


def random_constraint_set(n_settings: int, n_constraints: int, seed: int) -> ConstraintSet:
    rng = np.random.default_rng(seed)
    universe = tuple(Setting("P", f"s{j:02d}") for j in range(n_settings))
    constraints = []
    for _ in range(n_constraints):
        size = int(rng.integers(2, 5))
        picks = rng.choice(n_settings, size=size, replace=False)
        settings = tuple(universe[j] for j in sorted(picks.tolist()))
        constraints.append(ProductConstraint(settings, int(rng.choice([-1, 1]))))
    return ConstraintSet(universe, tuple(constraints))


def time_backend(cs: ConstraintSet, backend: str, repeats: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = search(cs, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-settings", type=int, default=22)
    parser.add_argument("--constraints", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    have_numba = _kernels.numba_available()
    print(f"numba available: {have_numba}   default backend: {_kernels.active_backend()}")
    backends = ["numpy"] + (["numba"] if have_numba else [])

    if have_numba:
        search(ghz_constraint_set(), backend="numba")  # warm-up / compile

    ghz = ghz_constraint_set()
    print(f"\n{'system':>14} {'assignments':>12}", end="")
    for b in backends:
        print(f" {b + ' [s]':>12}", end="")
    print(" speedup" if have_numba else "")

    systems = [("ghz (6 set.)", ghz)]
    for n in range(14, args.max_settings + 1, 2):
        systems.append(
            (f"random ({n})", random_constraint_set(n, args.constraints, args.seed))
        )

    for name, cs in systems:
        timings = {}
        results = {}
        for b in backends:
            timings[b], results[b] = time_backend(cs, b, args.repeats)
        counts = {r.count for r in results.values()}
        firsts = {
            None if r.assignment is None else tuple(sorted(r.assignment.items()))
            for r in results.values()
        }
        assert len(counts) == 1 and len(firsts) == 1, f"backend mismatch on {name}"
        print(f"{name:>14} {2 ** len(cs.universe):>12}", end="")
        for b in backends:
            print(f" {timings[b]:>12.4f}", end="")
        if have_numba:
            print(f" {timings['numpy'] / timings['numba']:>7.1f}x")
        else:
            print()
    print(f"\nall backends agreed on first satisfier and count; "
          f"set {_kernels.ENV_FLAG}=1 to force the numpy path package-wide")


if __name__ == "__main__":
    main()
