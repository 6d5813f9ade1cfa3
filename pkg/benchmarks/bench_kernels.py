"""Compare the compiled and pure-Python kernels on the library's hot paths.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from topomodels import kernels, principles, topology
from topomodels.semantics import valid_schema


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def workloads(backend):
    spaces = [s for n in range(1, 5) for s in topology.enumerate_spaces(n, True)]
    entries = principles.catalog()

    def classes():
        for space in spaces:
            for p in entries:
                valid_schema(space, p, backend=backend)

    def dgp84_discrete():
        valid_schema(topology.discrete(4), principles.lookup("DGP-84"), backend=backend)

    def canonical5():
        topology.canonical_codes(5, backend)

    def canonical6():
        topology.canonical_codes(6, backend)

    return [
        ("all schemas x 46 spaces", classes),
        ("DGP-84 on discrete:4 (65536 assignments)", dgp84_discrete),
        ("classes on 5 points (139)", canonical5),
        ("classes on 6 points (718)", canonical6),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available()
    print(f"{'workload':45s}" + "".join(f"{k.name:>12s}" for k in backends) + "   speedup")
    rows = {k.name: workloads(k) for k in backends}
    for i, (label, _) in enumerate(rows[backends[0].name]):
        times = [_time(rows[k.name][i][1], args.repeat) for k in backends]
        speedup = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
        print(f"{label:45s}" + "".join(f"{t:11.4f}s" for t in times) + "  " + speedup)


if __name__ == "__main__":
    main()
