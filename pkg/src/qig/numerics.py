"""Small-dimension complex Hermitian eigenvalues and base-2 entropies.

Every information quantity in the package is measured in bits, so all
logarithms here are base 2 and 0*log(0) is taken as 0. Eigenvalues come
from a cyclic Jacobi iteration (see `qig._kernels`), which is deterministic
and more than accurate enough at the dimensions this package works with.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from qig import _kernels
from qig.errors import DomainError, NotAStateError, NumericalError, ValidationError

HERMITIAN_TOL = 1e-10
DIAG_IMAG_TOL = 1e-12
TRACE_TOL = 1e-9
PROB_SUM_TOL = 1e-9
PROB_ENTRY_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


def _unwrap(matrix) -> np.ndarray:
    return getattr(matrix, "matrix", matrix)


def as_hermitian(matrix) -> np.ndarray:
    """Validate and return a complex128 copy of a Hermitian matrix.

    Checks squareness, finiteness, conjugate symmetry within 1e-10 and
    diagonal imaginary parts within 1e-12.
    """
    a = np.array(_unwrap(matrix), dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValidationError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValidationError("matrix entries must be finite")
    asym = np.max(np.abs(a - a.conj().T))
    if asym > HERMITIAN_TOL:
        raise ValidationError(
            f"matrix is not Hermitian: max |A - A^dagger| = {asym:.3e} > {HERMITIAN_TOL}"
        )
    diag_imag = np.max(np.abs(np.diag(a).imag))
    if diag_imag > DIAG_IMAG_TOL:
        raise ValidationError(
            f"diagonal imaginary part {diag_imag:.3e} exceeds {DIAG_IMAG_TOL}"
        )
    return a


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    a = as_hermitian(matrix)
    # Symmetrize so rounding in the caller's entries cannot bias rotations.
    a = 0.5 * (a + a.conj().T)
    try:
        return _kernels.jacobi_eigenvalues(a)
    except ArithmeticError as exc:
        raise NumericalError(str(exc)) from exc


def clamp_spectrum(eigenvalues: Iterable[float]) -> np.ndarray:
    """Clamp eigenvalues in [-1e-10, 0) to 0; reject anything more negative."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    low = float(lam.min()) if lam.size else 0.0
    if low < EIGENVALUE_FLOOR:
        raise NotAStateError(
            f"eigenvalue {low:.3e} below floor {EIGENVALUE_FLOOR}: not a state"
        )
    return np.where(lam < 0.0, 0.0, lam)


def spectrum_entropy(eigenvalues: Iterable[float]) -> float:
    """Shannon entropy in bits of a clamped spectrum, 0*log(0) = 0."""
    lam = clamp_spectrum(eigenvalues)
    pos = lam[lam > 0.0]
    if pos.size == 0:
        return 0.0
    return max(0.0, float(-np.sum(pos * np.log2(pos))))


def von_neumann_entropy(rho) -> float:
    """S(rho) = -sum(lam * log2(lam)) over the spectrum of a unit-trace state."""
    a = _unwrap(rho)
    tr = complex(np.trace(np.asarray(a))).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotAStateError(f"trace {tr!r} differs from 1 by more than {TRACE_TOL}")
    return spectrum_entropy(hermitian_eigenvalues(a))


def validate_probabilities(entries: Sequence[float]) -> np.ndarray:
    """Check a probability vector (entries in [0,1], sum 1 within 1e-9)."""
    p = np.asarray(entries, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValidationError("probability vector must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(p)):
        raise ValidationError("probabilities must be finite")
    if p.min() < -PROB_ENTRY_TOL or p.max() > 1.0 + PROB_ENTRY_TOL:
        raise ValidationError(
            f"probability entries must lie in [0, 1]; got range "
            f"[{p.min():.3e}, {p.max():.3e}]"
        )
    total = float(p.sum())
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ValidationError(f"probabilities sum to {total!r}, not 1 within {PROB_SUM_TOL}")
    return np.clip(p, 0.0, 1.0)


def shannon_entropy(entries: Sequence[float]) -> float:
    """H(p) = -sum(p * log2(p)) in bits, 0*log(0) = 0."""
    p = validate_probabilities(entries)
    pos = p[p > 0.0]
    return max(0.0, float(-np.sum(pos * np.log2(pos))))


def binary_entropy(lam: float) -> float:
    """Two-outcome Shannon entropy H(lam) = H((lam, 1-lam)) in bits.

    Accepts lam in [-1e-12, 1 + 1e-12] (clamped into [0, 1]); symmetric
    about 1/2 where it peaks at exactly 1 bit.
    """
    if not math.isfinite(lam):
        raise DomainError("binary_entropy argument must be finite")
    if lam < -PROB_ENTRY_TOL or lam > 1.0 + PROB_ENTRY_TOL:
        raise DomainError(f"binary_entropy argument {lam!r} outside [0, 1] tolerance window")
    if lam <= 0.0 or lam >= 1.0:
        return 0.0
    return -(lam * math.log2(lam) + (1.0 - lam) * math.log2(1.0 - lam))
