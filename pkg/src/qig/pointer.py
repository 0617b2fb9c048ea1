"""Finite-strength measurement with a Gaussian pointer.

The device starts in a Gaussian wavepacket of spread `delta` and is kicked
impulsively with strength `g` conditioned on the measured observable. All
device-side entropies are computed on finite "mirror" matrices: the
purification partner of the displaced pointer mixture has elements

    M[m, n] = sqrt(rho[m, m] * rho[n, n]) * exp(-g^2 (b_m - b_n)^2 / (8 delta^2))

and shares the device state's spectrum, so no continuous-variable object
is ever represented. `gaussian_overlap_quadrature` integrates the actual
wavepacket overlap and certifies the closed-form damping factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qig import numerics
from qig.errors import NumericalError, ValidationError
from qig.states import DensityMatrix, Ensemble, Observable

# exp(arg) for arg at or below this is flushed to exactly 0 (value < 1e-300),
# keeping tails deterministic instead of platform-denormal dependent.
UNDERFLOW_ARG = math.log(1e-300)


@dataclass(frozen=True)
class PointerModel:
    """Coupling strength g >= 0 and Gaussian pointer spread delta > 0."""

    g: float
    delta: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.g) and math.isfinite(self.delta)):
            raise ValidationError("pointer parameters must be finite")
        if self.g < 0.0:
            raise ValidationError(f"coupling strength g = {self.g!r} must be >= 0")
        if self.delta <= 0.0:
            raise ValidationError(f"pointer spread delta = {self.delta!r} must be > 0")


def _flushed_exp(arg: float) -> float:
    return 0.0 if arg <= UNDERFLOW_ARG else math.exp(arg)


def damping_factor(p: PointerModel, b_m: float, b_n: float) -> float:
    """Coherence suppression exp(-g^2 (b_m - b_n)^2 / (8 delta^2)).

    Equals 1 iff g = 0 or the eigenvalues coincide; strictly decreasing in
    g otherwise. Values below 1e-300 are flushed to 0.
    """
    gap = b_m - b_n
    arg = -(p.g * p.g) * (gap * gap) / (8.0 * p.delta * p.delta)
    return _flushed_exp(arg)


def damping_matrix(p: PointerModel, obs: Observable) -> np.ndarray:
    """Matrix of pairwise damping factors for an observable's spectrum."""
    b = np.asarray(obs.eigenvalues, dtype=np.float64)
    gaps = b[:, None] - b[None, :]
    args = -(p.g * p.g) * gaps * gaps / (8.0 * p.delta * p.delta)
    out = np.where(args <= UNDERFLOW_ARG, 0.0, np.exp(np.maximum(args, UNDERFLOW_ARG)))
    return out


def _mirror_array(diag: np.ndarray, damp: np.ndarray) -> np.ndarray:
    root = np.sqrt(np.clip(diag, 0.0, None))
    return np.outer(root, root) * damp


def mirror_state(rho: DensityMatrix, obs: Observable, p: PointerModel) -> DensityMatrix:
    """Purification partner of the post-interaction device state.

    Built from the diagonal of `rho` alone (the device never sees the
    input's coherences), with off-diagonal damping per eigenvalue gap.
    The result is PSD with the same diagonal as `rho`.
    """
    if rho.dim != obs.dim:
        raise ValidationError(f"state dim {rho.dim} does not match observable dim {obs.dim}")
    a = _mirror_array(np.diag(rho.matrix).real, damping_matrix(p, obs))
    return DensityMatrix._trusted(a.astype(np.complex128))


def information_gain(e: Ensemble, obs: Observable, p: PointerModel) -> float:
    """Mutual information between preparation record and measuring device.

    S(M(rho_avg)) - sum_i p_i S(M(rho_i)) over mirror matrices M. Bounded
    above by the Holevo quantity of the ensemble and increasing toward the
    projective-measurement information for strong coupling.
    """
    if obs.dim != e.dim:
        raise ValidationError(f"observable dim {obs.dim} does not match ensemble dim {e.dim}")
    if p.g == 0.0:
        # every mirror matrix is exactly rank one (elements sqrt(d_m d_n)),
        # so both entropy terms vanish identically
        return 0.0
    damp = damping_matrix(p, obs)
    diags = [np.diag(m.state.matrix).real for m in e.members]
    probs = [m.p for m in e.members]
    avg_diag = np.zeros(e.dim)
    for w, d in zip(probs, diags):
        avg_diag += w * d
    gain = numerics.spectrum_entropy(
        numerics.hermitian_eigenvalues(_mirror_array(avg_diag, damp))
    )
    for w, d in zip(probs, diags):
        gain -= w * numerics.spectrum_entropy(
            numerics.hermitian_eigenvalues(_mirror_array(d, damp))
        )
    return max(0.0, gain)


def post_measurement_state(rho: DensityMatrix, obs: Observable, p: PointerModel) -> DensityMatrix:
    """State left behind after the pointer interaction.

    Every off-diagonal element is multiplied by the damping factor of its
    eigenvalue gap; diagonal and trace are untouched, positivity is
    preserved (entrywise product with a Gaussian kernel matrix), and g = 0
    is the identity map.
    """
    if rho.dim != obs.dim:
        raise ValidationError(f"state dim {rho.dim} does not match observable dim {obs.dim}")
    a = rho.matrix * damping_matrix(p, obs)
    return DensityMatrix._trusted(a)


def post_measurement_ensemble(e: Ensemble, obs: Observable, p: PointerModel) -> Ensemble:
    """Apply `post_measurement_state` to every member, keeping weights and labels."""
    members = [
        (m.p, post_measurement_state(m.state, obs, p), m.label) for m in e.members
    ]
    return Ensemble(members, validate=False)


def _adaptive_simpson(f, a: float, fa: float, m: float, fm: float, b: float, fb: float,
                      whole: float, tol: float, depth: int) -> float:
    if depth > 60:
        raise NumericalError("adaptive quadrature exceeded recursion depth")
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    half = 0.5 * tol
    return _adaptive_simpson(f, a, fa, lm, flm, m, fm, left, half, depth + 1) + \
        _adaptive_simpson(f, m, fm, rm, frm, b, fb, right, half, depth + 1)


def gaussian_overlap_quadrature(p: PointerModel, b_m: float, b_n: float) -> float:
    """Overlap integral of the two displaced pointer wavepackets.

    Integrates the product of the normalized Gaussians centered at g*b_m
    and g*b_n (width delta) with adaptive Simpson quadrature (absolute
    tolerance 1e-9) over [min center - 10 delta, max center + 10 delta].
    Serves as the independent check of `damping_factor`.
    """
    c1 = p.g * b_m
    c2 = p.g * b_n
    delta = p.delta
    norm = 1.0 / math.sqrt(2.0 * math.pi * delta * delta)
    inv = 1.0 / (4.0 * delta * delta)

    def integrand(q: float) -> float:
        return norm * _flushed_exp(-((q - c1) ** 2 + (q - c2) ** 2) * inv)

    lo = min(c1, c2) - 10.0 * delta
    hi = max(c1, c2) + 10.0 * delta
    mid = 0.5 * (lo + hi)
    fa, fm, fb = integrand(lo), integrand(mid), integrand(hi)
    whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(integrand, lo, fa, mid, fm, hi, fb, whole, 1e-9, 0)
