"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is run through both backends, the results are compared,
and the best-of-N wall time is printed per backend.
"""

import argparse
import sys
import timeit
from itertools import product

from aal import kernels
from aal.congruence import _flat, translations
from aal.demorgan import NAMED, _diagram_algebra
from aal.modal import KripkeFrame, complex_algebra


def fusion_workload(name):
    """Every candidate fusion table of a named diagram, as in the constraint search."""
    d = NAMED[name]
    n = len(d.labels)
    probe = _diagram_algebra(d, [0] * (n * n), name)
    e = probe.const("e")
    free = [(i, j) for i in range(n) for j in range(i, n) if e not in (i, j)]
    tables = []
    for choice in product(range(n), repeat=len(free)):
        t = [0] * (n * n)
        for x in range(n):
            t[e * n + x] = t[x * n + e] = x
        for (i, j), v in zip(free, choice):
            t[i * n + j] = t[j * n + i] = v
        tables.append(t)
    meet, neg = probe.table("meet"), probe.table("neg")

    def run(backend):
        return [backend.fusion_violation(n, t, meet, neg, e) for t in tables]

    return f"fusion sweep {name} ({len(tables)} tables)", run


def closure_workload(points):
    """Every principal congruence of a complex algebra."""
    A = complex_algebra(KripkeFrame(points, [(i, i + 1) for i in range(points - 1)], "chain", "preorder"))
    n = A.size
    flat = _flat(translations(A))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]

    def run(backend):
        return [backend.closure_labels(n, flat, [p]) for p in pairs]

    return f"principal congruences Cm(chain{points}) ({len(pairs)} pairs)", run


def refine_workload(points):
    """Leibniz refinement from every subset of a complex algebra."""
    A = complex_algebra(KripkeFrame(points, [(0, i) for i in range(1, points)], "fan", "preorder"))
    n = A.size
    flat = _flat(translations(A))
    starts = [[(m >> x) & 1 for x in range(n)] for m in range(0, 1 << n, 37)]

    def run(backend):
        return [backend.refine_labels(n, flat, s) for s in starts]

    return f"Leibniz refinement Cm(fan{points}) ({len(starts)} subsets)", run


def main(argv=None):
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled kernels unavailable; only the Python backend can run", file=sys.stderr)
        return 1
    print("workload\tpython_s\tcython_s\tspeedup\tsame_result")
    for label, run in (fusion_workload("C4"), fusion_workload("D4"), closure_workload(4), refine_workload(4)):
        same = run(kernels.python_backend) == run(kernels.compiled_backend)
        py = min(timeit.repeat(lambda: run(kernels.python_backend), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: run(kernels.compiled_backend), number=1, repeat=args.repeat))
        print(f"{label}\t{py:.4f}\t{cy:.4f}\t{py / cy:.1f}x\t{same}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
