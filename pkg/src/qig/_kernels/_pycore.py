"""NumPy implementation of the hot kernels.

Semantics mirror `_fastcore` exactly (same rotation order, same thresholds,
same clamping); only the execution strategy differs. Results of the two
backends agree to a few ulps.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_SWEEP_CAP = 100
_JACOBI_THRESHOLD = 1e-14


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def jacobi_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix, descending.

    Cyclic Jacobi rotations; converged when the off-diagonal Frobenius norm
    drops below 1e-14 (relative to the matrix norm), capped at 100 sweeps.
    Raises ArithmeticError when the cap is hit; the caller translates.
    """
    a = np.array(matrix, dtype=np.complex128, copy=True)
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    tol = _JACOBI_THRESHOLD * max(1.0, float(np.linalg.norm(a)))
    skip = tol / (4.0 * n)
    idx = np.arange(n)
    for _ in range(_SWEEP_CAP + 1):
        if _offdiag_norm(a) <= tol:
            return np.sort(np.diag(a).real)[::-1].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = abs(a[p, q])
                if b <= skip:
                    continue
                alpha = a[p, p].real
                gamma = a[q, q].real
                theta = (gamma - alpha) / (2.0 * b)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0 / (theta - np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                phase = a[p, q] / b
                others = idx[(idx != p) & (idx != q)]
                akp = a[others, p].copy()
                akq = a[others, q].copy()
                new_p = c * akp - s * np.conj(phase) * akq
                new_q = s * phase * akp + c * akq
                a[others, p] = new_p
                a[others, q] = new_q
                a[p, others] = np.conj(new_p)
                a[q, others] = np.conj(new_q)
                a[p, p] = alpha - t * b
                a[q, q] = gamma + t * b
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise ArithmeticError("jacobi eigenvalue iteration did not converge")


def _hb(lam: np.ndarray) -> np.ndarray:
    """Binary entropy in bits, elementwise, with endpoint clamping."""
    lam = np.asarray(lam, dtype=np.float64)
    inside = (lam > 0.0) & (lam < 1.0)
    safe = np.where(inside, lam, 0.5)
    out = -(safe * np.log2(safe) + (1.0 - safe) * np.log2(1.0 - safe))
    return np.where(inside, out, 0.0)


def iaz_curve(p: np.ndarray, z: np.ndarray, emt: np.ndarray) -> np.ndarray:
    """Measuring-device gain along z per grid point.

    p: member weights; z: member z-components (r cos theta); emt[k]: squared
    coherence decay exp(-(g_k/delta)^2) per grid point.
    """
    p = np.asarray(p, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    emt = np.asarray(emt, dtype=np.float64)
    zbar = float(np.dot(p, z))
    lam_avg = 0.5 * (1.0 + np.sqrt(zbar * zbar + (1.0 - zbar * zbar) * emt))
    lam_members = 0.5 * (
        1.0 + np.sqrt(z[:, None] ** 2 + (1.0 - z[:, None] ** 2) * emt[None, :])
    )
    gain = _hb(lam_avg) - p @ _hb(lam_members)
    return np.maximum(gain, 0.0)


def iax_curve(p: np.ndarray, x: np.ndarray, emh: np.ndarray) -> np.ndarray:
    """Receiver x-measurement gain per grid point after z-coupling.

    p: member weights; x: member x-components (r sin theta cos phi);
    emh[k]: coherence decay exp(-(g_k/delta)^2 / 2) per grid point.
    """
    p = np.asarray(p, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    emh = np.asarray(emh, dtype=np.float64)
    xbar = float(np.dot(p, x))
    lam_avg = 0.5 * (1.0 + xbar * emh)
    lam_members = 0.5 * (1.0 + x[:, None] * emh[None, :])
    gain = _hb(lam_avg) - p @ _hb(lam_members)
    return np.maximum(gain, 0.0)
