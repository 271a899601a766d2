#!/usr/bin/env python3
"""Benchmark the row-reduction backends on exact rational matrices.

Two workloads: random dense rational matrices of growing size, and the
degree-2 adjoint coboundary matrices of random 5- and 6-dimensional Lie
algebras (the shape the cohomology module actually reduces).  Run:

    python3 benchmarks/bench_linalg.py
"""

import random
import time

from fractions import Fraction

from valdef.linalg import available_backends, reference

try:
    from valdef.linalg import _speedups
except ImportError:
    _speedups = None

BACKENDS = [("python", reference.rref)]
if _speedups is not None:
    BACKENDS.append(("cython", _speedups.rref))


def random_matrix(rng, rows, cols, density=0.7):
    return [
        [
            Fraction(rng.randint(-99, 99), rng.randint(1, 99))
            if rng.random() < density
            else Fraction(0)
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]


def coboundary_workload(rng, n):
    from valdef.cohomology import coboundary_matrix
    from valdef.algebra import AlgebraStructure, change_basis

    base = AlgebraStructure.lie(
        n, {(0, 1): {2 % n: 1}, (0, 2): {min(3, n - 1): 1}}
    )
    matrix = [
        [
            Fraction(1)
            if i == j
            else (Fraction(rng.randint(-2, 2), rng.randint(1, 2)) if j < i else Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    g = change_basis(base, matrix)
    rows, _ = coboundary_matrix(g, 2, "adjoint")
    return rows


def time_fn(fn, matrices, repeats=3):
    best = []
    for m in matrices:
        runs = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn(m)
            runs.append(time.perf_counter() - t0)
        best.append(min(runs))
    return sum(best)


def main():
    rng = random.Random(2024)
    print(f"available backends: {available_backends()}")
    cases = [
        ("dense 20x20", [random_matrix(rng, 20, 20) for _ in range(4)]),
        ("dense 40x40", [random_matrix(rng, 40, 40) for _ in range(2)]),
        ("dense 60x60", [random_matrix(rng, 60, 60)]),
        ("coboundary n=5 (50x50)", [coboundary_workload(rng, 5) for _ in range(2)]),
        ("coboundary n=6 (90x75)", [coboundary_workload(rng, 6)]),
    ]
    header = f"{'case':<26}" + "".join(f"{name:>12}" for name, _ in BACKENDS)
    if len(BACKENDS) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, matrices in cases:
        times = [time_fn(fn, matrices) for _, fn in BACKENDS]
        row = f"{label:<26}" + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)
    # cross-check: identical output on a fresh matrix
    m = random_matrix(rng, 25, 30, density=0.5)
    results = [fn(m) for _, fn in BACKENDS]
    assert all(r == results[0] for r in results), "backends disagree"
    print("backends agree on a fresh 25x30 instance")


if __name__ == "__main__":
    main()
