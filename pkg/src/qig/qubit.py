"""Closed-form qubit expressions and the convexity-certificate functions.

For qubits coupled along z with observable eigenvalues {+1, -1} everything
reduces to binary entropies of Bloch components. Writing t = (g/delta)^2,
z_i = r_i cos(theta_i) and x_i = r_i sin(theta_i) cos(phi_i):

    device gain (z):   H((1 + sqrt(s))/2) - sum_i p_i H(lambda_i)
                       with lambda_i = (1 + sqrt(z_i^2 + (1 - z_i^2) e^-t))/2
                       and  s = zbar^2 + (1 - zbar^2) e^-t,  zbar = sum p_i z_i
    x gain after z:    H((1 + xbar e^{-t/2})/2) - sum_i p_i H((1 + x_i e^{-t/2})/2)

The first is nondecreasing in g, the second nonincreasing; the certificate
functions at the bottom (h, f, G, K) carry the curvature and sign facts a
numerical certification of those monotonicities rests on. Note the mixed
logarithm bases: information quantities and h, f are base 2, while G and K
are stated with natural logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from qig import _kernels
from qig.errors import DomainError, ValidationError
from qig.numerics import binary_entropy, validate_probabilities
from qig.pointer import UNDERFLOW_ARG, PointerModel, post_measurement_ensemble
from qig.states import (
    PAULI_Z_OBSERVABLE,
    BlochVector,
    Ensemble,
    bloch_to_density,
    projective_information,
    rotate_state,
)

_X_TOL = 1e-12

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


def decay_factors(g: float, delta: float) -> tuple[float, float]:
    """(e^-t, e^{-t/2}) for t = (g/delta)^2, with deterministic underflow flush."""
    t = (g / delta) ** 2
    emt = 0.0 if -t <= UNDERFLOW_ARG else math.exp(-t)
    emh = 0.0 if -0.5 * t <= UNDERFLOW_ARG else math.exp(-0.5 * t)
    return emt, emh


@dataclass(frozen=True)
class QubitViewMember:
    p: float
    bloch: BlochVector
    label: str = ""


class QubitEnsembleView:
    """Qubit ensemble in Bloch coordinates, feeding the closed forms."""

    __slots__ = ("members",)

    def __init__(self, members: Iterable) -> None:
        norm = []
        for m in members:
            if isinstance(m, QubitViewMember):
                norm.append(m)
            else:
                p, bloch, *rest = m
                label = rest[0] if rest else ""
                norm.append(QubitViewMember(float(p), bloch, str(label)))
        if not norm:
            raise ValidationError("qubit ensemble view must have at least one member")
        validate_probabilities([m.p for m in norm])
        object.__setattr__(self, "members", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("QubitEnsembleView is immutable")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([m.p for m in self.members], dtype=np.float64)

    @property
    def z_components(self) -> np.ndarray:
        """Per-member r cos(theta): the means used by the z-direction gain."""
        return np.array([m.bloch.z for m in self.members], dtype=np.float64)

    @property
    def x_components(self) -> np.ndarray:
        """Per-member r sin(theta) cos(phi): the means used by the x gain."""
        return np.array([m.bloch.x for m in self.members], dtype=np.float64)

    @property
    def y_components(self) -> np.ndarray:
        return np.array([m.bloch.y for m in self.members], dtype=np.float64)

    @property
    def radii(self) -> np.ndarray:
        return np.array([m.bloch.r for m in self.members], dtype=np.float64)

    def to_ensemble(self) -> Ensemble:
        """Density-matrix ensemble equivalent of this view."""
        return Ensemble(
            [(m.p, bloch_to_density(m.bloch), m.label) for m in self.members],
            validate=False,
        )


def lambda_parameter(v: BlochVector, g: float, delta: float) -> float:
    """Larger mirror eigenvalue (1 + sqrt(z^2 + (1 - z^2) e^-t))/2 in [1/2, 1]."""
    emt, _ = decay_factors(g, delta)
    z = v.z
    arg = z * z + (1.0 - z * z) * emt
    lam = 0.5 * (1.0 + math.sqrt(arg))
    return min(lam, 1.0)


def qubit_info_gain_closed(e: QubitEnsembleView, g: float, delta: float) -> float:
    """Closed-form device gain for a z-coupled qubit ensemble, in bits.

    Matches `pointer.information_gain` on the equivalent density-matrix
    ensemble with observable eigenvalues {+1, -1}.
    """
    emt, _ = decay_factors(g, delta)
    curve = _kernels.iaz_curve(e.probabilities, e.z_components, np.array([emt]))
    return float(curve[0])


def info_gain_x_after_z(e: QubitEnsembleView, g: float, delta: float) -> float:
    """Receiver's x-measurement information after a z-coupling of strength g.

    Matches projective information along x computed on the damped
    post-measurement ensemble.
    """
    _, emh = decay_factors(g, delta)
    curve = _kernels.iax_curve(e.probabilities, e.x_components, np.array([emh]))
    return float(curve[0])


def gain_z_curve(e: QubitEnsembleView, g_values: np.ndarray, delta: float) -> np.ndarray:
    """Vector version of `qubit_info_gain_closed` over a coupling grid."""
    t = (np.asarray(g_values, dtype=np.float64) / delta) ** 2
    emt = np.where(-t <= UNDERFLOW_ARG, 0.0, np.exp(-np.minimum(t, -UNDERFLOW_ARG)))
    return _kernels.iaz_curve(e.probabilities, e.z_components, emt)


def gain_x_curve(e: QubitEnsembleView, g_values: np.ndarray, delta: float) -> np.ndarray:
    """Vector version of `info_gain_x_after_z` over a coupling grid."""
    t = (np.asarray(g_values, dtype=np.float64) / delta) ** 2
    half = 0.5 * t
    emh = np.where(-half <= UNDERFLOW_ARG, 0.0, np.exp(-np.minimum(half, -UNDERFLOW_ARG)))
    return _kernels.iax_curve(e.probabilities, e.x_components, emh)


def member_entropies(e: QubitEnsembleView) -> np.ndarray:
    """Member von Neumann entropies H((1 + r_i)/2) from the exact qubit spectrum."""
    return np.array([binary_entropy(0.5 * (1.0 + r)) for r in e.radii])


def holevo_bound_view(e: QubitEnsembleView) -> float:
    """Holevo quantity from Bloch coordinates (average radius vs member radii)."""
    p = e.probabilities
    avg = np.array(
        [float(p @ e.x_components), float(p @ e.y_components), float(p @ e.z_components)]
    )
    rbar = min(1.0, float(np.linalg.norm(avg)))
    chi = binary_entropy(0.5 * (1.0 + rbar)) - float(p @ member_entropies(e))
    return max(0.0, chi)


def complementarity_rhs(e: QubitEnsembleView) -> float:
    """Ceiling 1 - sum_i p_i S(rho_i) for the summed z- and x-direction gains."""
    rhs = 1.0 - float(e.probabilities @ member_entropies(e))
    return min(1.0, max(0.0, rhs))


def entropic_uncertainty_margin(v: BlochVector) -> float:
    """Slack H(p_z) + H(p_x) - 1 - S(rho) of the two-basis uncertainty relation.

    Nonnegative for every qubit state; zero for basis states and for the
    maximally mixed state.
    """
    hz = binary_entropy(0.5 * (1.0 + v.z))
    hx = binary_entropy(0.5 * (1.0 + v.x))
    s = binary_entropy(0.5 * (1.0 + v.r))
    return hz + hx - 1.0 - s


def pipeline_info_gain_x(e: Ensemble, p: PointerModel) -> float:
    """Dual route for the x gain: damp members, rotate z<->x, project.

    Composes `post_measurement_ensemble` with `projective_information`
    after a Hadamard rotation of every member; the closed form
    `info_gain_x_after_z` must agree with this to high accuracy.
    """
    damped = post_measurement_ensemble(e, PAULI_Z_OBSERVABLE, p)
    rotated = Ensemble(
        [(m.p, rotate_state(m.state, _HADAMARD), m.label) for m in damped.members],
        validate=False,
    )
    return projective_information(rotated, PAULI_Z_OBSERVABLE)


def _check_unit_interval(name: str, value: float, lo: float, hi: float) -> float:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite")
    if value < lo - _X_TOL or value > hi + _X_TOL:
        raise DomainError(f"{name} = {value!r} outside [{lo}, {hi}]")
    return min(hi, max(lo, value))


def h_function(x: float, a: float) -> float:
    """Concave weight h(x) whose Jensen gap is the t-derivative of the z gain.

    h(x) = (1 - x^2) a / (4 w) * log2((1 + w)/(1 - w)) with
    w = sqrt(x^2 + (1 - x^2) a), x in [-1, 1], a in (0, 1]. At |x| = 1 the
    prefactor wins and h = 0. The w -> 1 singularity (a -> 1 with |x| < 1)
    is handled by evaluating at a = 1 - 1e-12.
    """
    x = _check_unit_interval("x", x, -1.0, 1.0)
    if not math.isfinite(a) or a <= 0.0 or a > 1.0 + _X_TOL:
        raise DomainError(f"a = {a!r} outside (0, 1]")
    if abs(x) >= 1.0:
        return 0.0
    a = min(a, 1.0 - 1e-12)
    w = math.sqrt(x * x + (1.0 - x * x) * a)
    return (1.0 - x * x) * a / (4.0 * w) * math.log2((1.0 + w) / (1.0 - w))


def f_function(x: float, t: float) -> float:
    """Convex weight f(x) = (x e^{-t/2} / 4) log2((1+x e^{-t/2})/(1-x e^{-t/2})).

    Even and nonnegative on x in [-1, 1] for t >= 0; the only singular
    point x = +-1, t = 0 returns +inf.
    """
    x = _check_unit_interval("x", x, -1.0, 1.0)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"t = {t!r} must be a finite value >= 0")
    u = x * math.exp(-0.5 * t)
    if abs(u) >= 1.0:
        return math.inf
    if u == 0.0:
        return 0.0
    return 0.25 * u * math.log2((1.0 + u) / (1.0 - u))


def f_second_derivative(x: float, t: float) -> float:
    """Analytic d^2 f/dx^2 = e^-t / ((1 - e^-t x^2)^2 ln 2)."""
    x = _check_unit_interval("x", x, -1.0, 1.0)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"t = {t!r} must be a finite value >= 0")
    emt = math.exp(-t)
    denom = 1.0 - emt * x * x
    if denom <= 0.0:
        return math.inf
    return emt / (denom * denom * math.log(2.0))


def G_function(w: float, a: float) -> float:
    """Sign-certificate combination, natural logs, nonpositive on its domain.

    G(w, a) = (2 (2 + a) w^3 - 6 a w)/(w^2 - 1) + ((2 - a) w^2 - 3 a) ln((1+w)/(1-w))
    for 0 <= w < 1 and a in (0, 1]; linear in a for fixed w.
    """
    w = _check_unit_interval("w", w, 0.0, 1.0)
    if w >= 1.0:
        raise DomainError(f"w = {w!r} must be < 1")
    if not math.isfinite(a) or a <= 0.0 or a > 1.0 + _X_TOL:
        raise DomainError(f"a = {a!r} outside (0, 1]")
    a = min(a, 1.0)
    if w == 0.0:
        return 0.0
    ln_ratio = math.log((1.0 + w) / (1.0 - w))
    return (2.0 * (2.0 + a) * w ** 3 - 6.0 * a * w) / (w * w - 1.0) + (
        (2.0 - a) * w * w - 3.0 * a
    ) * ln_ratio


def G_extreme_value(w: float) -> float:
    """Stationary-in-a value 8 w^5 / ((w^2 - 1)(3 + w^2)); <= 0 on [0, 1)."""
    w = _check_unit_interval("w", w, 0.0, 1.0)
    if w >= 1.0:
        raise DomainError(f"w = {w!r} must be < 1")
    return 8.0 * w ** 5 / ((w * w - 1.0) * (3.0 + w * w))


def G_stationarity_residual(w: float) -> float:
    """ln((1+w)/(1-w)) - (2w^3 - 6w)/((w^2-1)(3+w^2)); zero where dG/da = 0."""
    w = _check_unit_interval("w", w, 0.0, 1.0)
    if w >= 1.0:
        raise DomainError(f"w = {w!r} must be < 1")
    if w == 0.0:
        return 0.0
    return math.log((1.0 + w) / (1.0 - w)) - (2.0 * w ** 3 - 6.0 * w) / (
        (w * w - 1.0) * (3.0 + w * w)
    )


def K_function(w: float) -> float:
    """K(w) = 2w - (1 - w^2) ln((1+w)/(1-w)); nonnegative and nondecreasing on [0, 1)."""
    w = _check_unit_interval("w", w, 0.0, 1.0)
    if w >= 1.0:
        raise DomainError(f"w = {w!r} must be < 1")
    if w == 0.0:
        return 0.0
    return 2.0 * w - (1.0 - w * w) * math.log((1.0 + w) / (1.0 - w))
