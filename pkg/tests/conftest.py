"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they certify:
eigenvalues come from characteristic-polynomial bisection, entropies from
50-digit mpmath evaluation.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest

mp.mp.dps = 50


def charpoly_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues via Faddeev-LeVerrier coefficients and root bisection.

    Valid for Hermitian input with distinct roots (the random suites use
    generic matrices); returns eigenvalues sorted descending.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    n = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ (m + coeffs[-1] * np.eye(n))
        coeffs.append(float((-np.trace(m) / k).real))

    def p(lam: float) -> float:
        acc = 0.0
        for c in coeffs:
            acc = acc * lam + c
        return acc

    bound = float(np.linalg.norm(a, 1)) + 1.0
    xs = np.linspace(-bound, bound, 20001)
    vals = [p(x) for x in xs]
    roots = []
    for i in range(len(xs) - 1):
        if vals[i] == 0.0:
            roots.append(float(xs[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            lo, hi = float(xs[i]), float(xs[i + 1])
            flo = vals[i]
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                fm = p(mid)
                if flo * fm <= 0.0:
                    hi = mid
                else:
                    lo = mid
                    flo = fm
            roots.append(0.5 * (lo + hi))
    assert len(roots) == n, f"root isolation found {len(roots)} of {n} eigenvalues"
    return np.sort(np.array(roots))[::-1]


def mp_binary_entropy(lam) -> float:
    """Binary entropy in bits at 50-digit precision, rounded to float."""
    lam = mp.mpf(lam)
    if lam <= 0 or lam >= 1:
        return 0.0
    ln2 = mp.log(2)
    return float(-(lam * mp.log(lam) + (1 - lam) * mp.log(1 - lam)) / ln2)


def mp_shannon_entropy(probs) -> float:
    ln2 = mp.log(2)
    acc = mp.mpf(0)
    for p in probs:
        p = mp.mpf(p)
        if p > 0:
            acc -= p * mp.log(p) / ln2
    return float(acc)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250810)
