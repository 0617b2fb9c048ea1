#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the NumPy fallback.

Times the two hot kernels on verification-campaign-shaped workloads:
curve evaluation (many small ensembles over a 61-point coupling grid) and
small complex Hermitian eigensolves. Run from the repo root:

    python benchmarks/bench_kernels.py [--trials 2000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qig._kernels import available_backends, get_backend


def _workload(trials: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    grid = np.concatenate([[0.0], np.geomspace(1e-3, 6.0, 60)])
    emt = np.exp(-(grid**2))
    emh = np.exp(-0.5 * grid**2)
    ensembles = []
    for _ in range(trials):
        k = int(rng.integers(2, 9))
        p = rng.dirichlet(np.ones(k))
        z = rng.uniform(-1.0, 1.0, size=k)
        x = rng.uniform(-1.0, 1.0, size=k)
        ensembles.append((p, z, x))
    matrices = []
    for _ in range(trials):
        n = int(rng.integers(2, 9))
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        matrices.append(0.5 * (g + g.conj().T))
    return grid, emt, emh, ensembles, matrices


def _time(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    args = ap.parse_args()

    _, emt, emh, ensembles, matrices = _workload(args.trials)
    names = available_backends()
    print(f"backends: {', '.join(names)}   (workload: {args.trials} trials, 61-point grid)")
    results: dict[str, dict[str, float]] = {}
    for name in names:
        mod = get_backend(name)

        def curves():
            for p, z, x in ensembles:
                mod.iaz_curve(p, z, emt)
                mod.iax_curve(p, x, emh)

        def eigs():
            for m in matrices:
                mod.jacobi_eigenvalues(m)

        curves()  # warm up
        results[name] = {"curves": _time(curves), "eigenvalues": _time(eigs)}

    width = max(len(n) for n in names)
    print(f"{'backend':<{width}}  {'curves [s]':>12}  {'eigenvalues [s]':>16}")
    for name in names:
        r = results[name]
        print(f"{name:<{width}}  {r['curves']:>12.4f}  {r['eigenvalues']:>16.4f}")
    if len(names) == 2:
        a, b = names
        print(
            f"speedup ({b} / {a}): curves x{results[b]['curves'] / results[a]['curves']:.1f}, "
            f"eigenvalues x{results[b]['eigenvalues'] / results[a]['eigenvalues']:.1f}"
        )

    # cross-backend agreement on the same inputs
    if len(names) == 2:
        fast, slow = (get_backend(n) for n in names)
        worst = 0.0
        for p, z, x in ensembles[:200]:
            worst = max(worst, float(np.max(np.abs(fast.iaz_curve(p, z, emt) - slow.iaz_curve(p, z, emt)))))
            worst = max(worst, float(np.max(np.abs(fast.iax_curve(p, x, emh) - slow.iax_curve(p, x, emh)))))
        for m in matrices[:200]:
            worst = max(worst, float(np.max(np.abs(fast.jacobi_eigenvalues(m) - slow.jacobi_eigenvalues(m)))))
        print(f"max cross-backend deviation on sampled workload: {worst:.3e}")


if __name__ == "__main__":
    main()
