"""Quantum states, ensembles and their classical-information quantities.

States are stored in the eigenbasis of the measured observable; changing
the measurement direction means rotating the states, never the basis. The
qubit parametrization is the usual Bloch one,

    rho = [[(1 + r cos(theta))/2,            r sin(theta) e^{-i phi} / 2],
           [r sin(theta) e^{+i phi} / 2,     (1 - r cos(theta))/2      ]]

with 0 <= r <= 1, 0 <= theta <= pi and 0 <= phi < 2 pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from qig import numerics
from qig.errors import DomainError, ValidationError

_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    """Point of the Bloch ball in spherical coordinates (radians)."""

    r: float
    theta: float
    phi: float

    def __post_init__(self) -> None:
        for name, value in (("r", self.r), ("theta", self.theta), ("phi", self.phi)):
            if not math.isfinite(value):
                raise DomainError(f"BlochVector.{name} must be finite")
        if not -_ANGLE_TOL <= self.r <= 1.0 + _ANGLE_TOL:
            raise DomainError(f"Bloch radius {self.r!r} outside [0, 1]")
        # theta = pi is accepted: the parametrization is continuous there.
        if not -_ANGLE_TOL <= self.theta <= math.pi + _ANGLE_TOL:
            raise DomainError(f"polar angle {self.theta!r} outside [0, pi]")
        if not -_ANGLE_TOL <= self.phi < 2.0 * math.pi + _ANGLE_TOL:
            raise DomainError(f"azimuthal angle {self.phi!r} outside [0, 2 pi)")

    @property
    def z(self) -> float:
        """Cartesian z-component r cos(theta)."""
        return self.r * math.cos(self.theta)

    @property
    def x(self) -> float:
        """Cartesian x-component r sin(theta) cos(phi)."""
        return self.r * math.sin(self.theta) * math.cos(self.phi)

    @property
    def y(self) -> float:
        """Cartesian y-component r sin(theta) sin(phi)."""
        return self.r * math.sin(self.theta) * math.sin(self.phi)


class DensityMatrix:
    """Unit-trace positive-semidefinite Hermitian matrix.

    Hermiticity and trace are checked on construction; positivity is
    checked on demand (`check_psd=True`, or `validate_ensemble`) because it
    costs an eigendecomposition. The wrapped array is frozen.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, *, check_psd: bool = False) -> None:
        a = numerics.as_hermitian(matrix)
        tr = float(np.trace(a).real)
        if abs(tr - 1.0) > numerics.TRACE_TOL:
            raise ValidationError(
                f"density matrix trace {tr!r} differs from 1 beyond {numerics.TRACE_TOL}"
            )
        if check_psd:
            numerics.clamp_spectrum(numerics.hermitian_eigenvalues(a))
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @classmethod
    def _trusted(cls, array: np.ndarray) -> "DensityMatrix":
        """Wrap a matrix known valid by construction, skipping checks."""
        dm = object.__new__(cls)
        array = np.asarray(array, dtype=np.complex128)
        array.setflags(write=False)
        object.__setattr__(dm, "matrix", array)
        return dm

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Spectrum, descending."""
        return numerics.hermitian_eigenvalues(self.matrix)

    def diagonal_probabilities(self) -> np.ndarray:
        """Outcome distribution of a projective measurement in the storage basis."""
        d = np.diag(self.matrix).real.copy()
        return np.clip(d, 0.0, 1.0)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True)
class Observable:
    """Measured observable, diagonal in the storage basis, with eigenvalues b_m."""

    eigenvalues: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(b) for b in self.eigenvalues)
        if len(vals) < 2:
            raise ValidationError("observable needs at least 2 eigenvalues")
        if not all(math.isfinite(b) for b in vals):
            raise ValidationError("observable eigenvalues must be finite")
        object.__setattr__(self, "eigenvalues", vals)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def min_gap(self) -> float:
        """Smallest |b_m - b_n| over distinct pairs; 0 signals degeneracy."""
        vals = sorted(self.eigenvalues)
        return min(vals[i + 1] - vals[i] for i in range(len(vals) - 1))


PAULI_Z_OBSERVABLE = Observable((1.0, -1.0))


@dataclass(frozen=True)
class EnsembleMember:
    p: float
    state: DensityMatrix
    label: str = ""


class Ensemble:
    """Preparation set {(p_i, rho_i, label_i)} over one Hilbert space."""

    __slots__ = ("members", "dim")

    def __init__(self, members: Iterable, *, validate: bool = True) -> None:
        norm = []
        for m in members:
            if isinstance(m, EnsembleMember):
                norm.append(m)
            else:
                p, state, *rest = m
                label = rest[0] if rest else ""
                if not isinstance(state, DensityMatrix):
                    state = DensityMatrix(state)
                norm.append(EnsembleMember(float(p), state, str(label)))
        if not norm:
            raise ValidationError("ensemble must have at least one member")
        object.__setattr__(self, "members", tuple(norm))
        object.__setattr__(self, "dim", norm[0].state.dim)
        if validate:
            report = validate_ensemble(self)
            if report:
                raise ValidationError(
                    "invalid ensemble: " + "; ".join(str(v) for v in report)
                )

    def __setattr__(self, name, value):
        raise AttributeError("Ensemble is immutable")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([m.p for m in self.members], dtype=np.float64)

    @property
    def states(self) -> tuple[DensityMatrix, ...]:
        return tuple(m.state for m in self.members)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(m.label for m in self.members)


@dataclass(frozen=True)
class Violation:
    """One failed ensemble invariant, naming the offender."""

    invariant: str
    where: str
    detail: str

    def __str__(self) -> str:
        return f"{self.invariant} at {self.where}: {self.detail}"


def validate_ensemble(e: Ensemble) -> list[Violation]:
    """Full invariant check; returns an empty list iff the ensemble is valid.

    Covers probability normalization, dimension agreement, Hermiticity,
    unit trace and positive semidefiniteness of every member.
    """
    out: list[Violation] = []
    probs = np.array([m.p for m in e.members], dtype=np.float64)
    if probs.min() < -numerics.PROB_ENTRY_TOL or probs.max() > 1.0 + numerics.PROB_ENTRY_TOL:
        out.append(
            Violation(
                "probability-range",
                "ensemble",
                f"entries outside [0, 1]: range [{probs.min():.3e}, {probs.max():.3e}]",
            )
        )
    total = float(probs.sum())
    if abs(total - 1.0) > numerics.PROB_SUM_TOL:
        out.append(
            Violation("probability-normalization", "ensemble", f"sum is {total!r}, not 1")
        )
    for i, m in enumerate(e.members):
        where = f"member {i} ({m.label!r})"
        a = m.state.matrix
        if a.shape[0] != e.dim:
            out.append(
                Violation("dimension", where, f"dim {a.shape[0]} differs from ensemble dim {e.dim}")
            )
            continue
        asym = float(np.max(np.abs(a - a.conj().T)))
        if asym > numerics.HERMITIAN_TOL:
            out.append(Violation("hermiticity", where, f"max |A - A^dagger| = {asym:.3e}"))
            continue
        tr = float(np.trace(a).real)
        if abs(tr - 1.0) > numerics.TRACE_TOL:
            out.append(Violation("unit-trace", where, f"trace = {tr!r}"))
        lam_min = float(numerics.hermitian_eigenvalues(a)[-1])
        if lam_min < numerics.EIGENVALUE_FLOOR:
            out.append(Violation("positive-semidefinite", where, f"min eigenvalue = {lam_min:.3e}"))
    return out


def bloch_to_density(v: BlochVector) -> DensityMatrix:
    """2x2 density matrix of a Bloch-ball point; pure iff r = 1."""
    z = v.z
    off = 0.5 * v.r * math.sin(v.theta) * complex(math.cos(v.phi), -math.sin(v.phi))
    a = np.array(
        [[0.5 * (1.0 + z), off], [off.conjugate(), 0.5 * (1.0 - z)]],
        dtype=np.complex128,
    )
    return DensityMatrix._trusted(a)


def ensemble_average(e: Ensemble) -> DensityMatrix:
    """Mixture density matrix sum_i p_i rho_i."""
    acc = np.zeros((e.dim, e.dim), dtype=np.complex128)
    for m in e.members:
        acc += m.p * m.state.matrix
    return DensityMatrix._trusted(acc)


def holevo_bound(e: Ensemble) -> float:
    """chi = S(sum_i p_i rho_i) - sum_i p_i S(rho_i), in bits."""
    avg = ensemble_average(e)
    chi = numerics.von_neumann_entropy(avg) - sum(
        m.p * numerics.von_neumann_entropy(m.state) for m in e.members
    )
    return max(0.0, chi)


def projective_information(e: Ensemble, basis_observable: Observable) -> float:
    """Mutual information of an ideal projective measurement in the storage basis.

    I_p = H(p_m) - sum_i p_i H(p_m given i), where p_m given i is the diagonal
    of rho_i. Equals the strong-coupling limit of the pointer gain when the
    observable is nondegenerate.
    """
    if basis_observable.dim != e.dim:
        raise ValidationError(
            f"observable dim {basis_observable.dim} does not match ensemble dim {e.dim}"
        )
    avg = ensemble_average(e)
    info = numerics.shannon_entropy(avg.diagonal_probabilities()) - sum(
        m.p * numerics.shannon_entropy(m.state.diagonal_probabilities())
        for m in e.members
    )
    return max(0.0, info)


def rotate_state(rho: DensityMatrix, unitary: np.ndarray) -> DensityMatrix:
    """U rho U^dagger as a new state (U assumed unitary)."""
    u = np.asarray(unitary, dtype=np.complex128)
    if u.shape != (rho.dim, rho.dim):
        raise ValidationError(f"unitary shape {u.shape} does not match state dim {rho.dim}")
    a = u @ rho.matrix @ u.conj().T
    a = 0.5 * (a + a.conj().T)
    return DensityMatrix._trusted(a)
