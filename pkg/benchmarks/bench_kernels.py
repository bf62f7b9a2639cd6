"""Compare the compiled and pure-Python kernels on the same games.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from losing_contracts.contracts import apply_losing, theorem1_amounts
from losing_contracts.generators import GeneratorConfig, gen_random_pd
from losing_contracts.kernels import available_backends, prepare


def games():
    for counts in [(3, 3, 3), (4, 4, 4), (3, 3, 3, 3), (4, 4, 4, 3)]:
        g = gen_random_pd(GeneratorConfig(n=len(counts), counts=counts, seed=1))
        yield counts, apply_losing(g, theorem1_amounts(g))


def workload(g, payload):
    lo = [0] * g.n
    hi = [k - 1 for k in g.counts]
    eligible = tuple(range(g.n))
    payload.nash(g.strides, lo, hi)
    payload.pd(g.strides, lo, hi)
    payload.strong(g.strides, lo, hi, eligible, (0,) * g.n, True)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = list(available_backends())
    print(f"{'counts':<14}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for counts, g in games():
        times = {}
        for backend in backends:
            payload = prepare(g, backend)
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                workload(g, payload)
                best = min(best, time.perf_counter() - start)
            times[backend] = best
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        row = "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        print(f"{str(counts):<14}{row}{speed:>9.1f}x")


if __name__ == "__main__":
    main()
