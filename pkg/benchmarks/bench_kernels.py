"""Compare the compiled and pure-Python season kernels.

    python3 benchmarks/bench_kernels.py --replicates 20000 --repeat 3
"""
import argparse
import time

import numpy as np

from fluent_season import kernels
from fluent_season.season_sim import SimulationConfig, prepare, run_state
from fluent_season.synthetic import GeneratorParams, make_world


def timed(state, cfg, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        dist = run_state(state, cfg)
        best = min(best, time.perf_counter() - t0)
    return best, dist


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--replicates", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--teams", type=int, default=20)
    args = ap.parse_args()

    world = make_world(GeneratorParams(n_teams=args.teams), 0)
    probs = np.array([world.marginal(f.home, f.away) for f in world.schedule])
    state = prepare(world.schedule, [], team_ids=world.team_ids, probs=probs)
    n_fix = len(world.schedule)
    print(f"{args.teams} teams, {n_fix} fixtures, {args.replicates} replicates")

    results = {}
    for name in ("cython", "python"):
        try:
            kernels.get_backend(name)
        except (ImportError, ValueError) as exc:
            print(f"{name:>7}: unavailable ({exc})")
            continue
        cfg = SimulationConfig(args.replicates, 0, backend=name)
        secs, dist = timed(state, cfg, args.repeat)
        results[name] = (secs, dist)
        rate = args.replicates * n_fix / secs / 1e6
        print(f"{name:>7}: {secs * 1e3:9.1f} ms  ({rate:.1f} M fixtures/s)")

    if len(results) == 2:
        (tc, dc), (tp, dp) = results["cython"], results["python"]
        same = np.array_equal(dc.counts, dp.counts)
        print(f"speedup {tp / tc:.1f}x, identical counts: {same}")


if __name__ == "__main__":
    main()
