"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n 5]

Each workload runs over every connected labelled graph on ``n`` vertices:
connectivity, canonical codes, Laplacian characteristic polynomials and the
rank of the Laplacian with its first row removed.
"""
import argparse
import sys
import timeit

from netctrl import kernels
from netctrl.graph import enumerate_connected_graphs, laplacian


def workloads(n):
    graphs = list(enumerate_connected_graphs(n))
    laps = [laplacian(g) for g in graphs]
    return {
        "is_connected_rows": lambda m: [m.is_connected_rows(g.rows, g.n) for g in graphs],
        "canonical_code": lambda m: [m.canonical_code(g.rows, g.n, 0) for g in graphs],
        "charpoly": lambda m: [m.charpoly(a) for a in laps],
        "int_rank": lambda m: [m.int_rank(a[1:]) for a in laps],
    }, len(graphs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5, help="graph size (2..7)")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available", file=sys.stderr)
    jobs, count = workloads(args.n)
    print(f"{count} connected graphs on {args.n} vertices, best of {args.repeat}")
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name, job in jobs.items():
        times = []
        for b in backends:
            mod = kernels.backend_module(b)
            ref = job(mod)
            times.append(min(timeit.repeat(lambda: job(mod), number=1, repeat=args.repeat)))
            if b != backends[0] and ref != job(kernels.backend_module(backends[0])):
                raise SystemExit(f"{name}: backends disagree")
        row = f"{name:<20}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
