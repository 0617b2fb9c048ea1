"""Seeded random generators for the property and verification suites.

Qubit states are uniform over the Bloch ball (r = u^(1/3), cos(theta)
uniform on [-1, 1], phi uniform on [0, 2 pi)); mixing weights come from a
flat Dirichlet. Higher-dimensional states use the Ginibre construction
G G^dagger / tr. Everything is driven by a caller-supplied
numpy Generator so identical seeds reproduce identical draws.
"""

from __future__ import annotations

import math

import numpy as np

from qig.states import BlochVector, DensityMatrix, Ensemble, Observable
from qig.qubit import QubitEnsembleView

SAMPLING_FAMILY = (
    "qubit ensembles: member count uniform on 2..8, flat-Dirichlet weights, "
    "states uniform over the Bloch ball (r=u^(1/3), cos(theta) uniform, phi uniform)"
)


def random_bloch_vector(rng: np.random.Generator) -> BlochVector:
    """One Bloch-ball-uniform state."""
    r = rng.random() ** (1.0 / 3.0)
    theta = math.acos(rng.uniform(-1.0, 1.0))
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return BlochVector(r, theta, phi)


def random_qubit_view(
    rng: np.random.Generator, min_members: int = 2, max_members: int = 8
) -> QubitEnsembleView:
    """Random qubit ensemble in Bloch coordinates."""
    k = int(rng.integers(min_members, max_members + 1))
    probs = rng.dirichlet(np.ones(k))
    return QubitEnsembleView(
        [(probs[i], random_bloch_vector(rng), f"s{i}") for i in range(k)]
    )


def random_qubit_ensemble(
    rng: np.random.Generator, min_members: int = 2, max_members: int = 8
) -> Ensemble:
    return random_qubit_view(rng, min_members, max_members).to_ensemble()


def random_density_matrix(rng: np.random.Generator, dim: int) -> DensityMatrix:
    """Ginibre-normalized random state of the given dimension."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    a = g @ g.conj().T
    a /= np.trace(a).real
    a = 0.5 * (a + a.conj().T)
    return DensityMatrix._trusted(a)


def random_ensemble(
    rng: np.random.Generator, dim: int, min_members: int = 2, max_members: int = 8
) -> Ensemble:
    """Random ensemble of Ginibre states in dimension `dim`."""
    k = int(rng.integers(min_members, max_members + 1))
    probs = rng.dirichlet(np.ones(k))
    return Ensemble(
        [(probs[i], random_density_matrix(rng, dim), f"s{i}") for i in range(k)],
        validate=False,
    )


def random_observable(
    rng: np.random.Generator, dim: int, min_gap: float = 0.6
) -> Observable:
    """Nondegenerate observable: unit-spaced ladder with sub-gap jitter.

    Eigenvalues m + jitter, jitter uniform on [0, 1 - min_gap], so every
    gap is at least `min_gap`. Strong-coupling tests rely on that floor.
    """
    jitter = rng.uniform(0.0, max(0.0, 1.0 - min_gap), size=dim)
    return Observable(tuple(float(m + jitter[m]) for m in range(dim)))


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    """Random Hermitian matrix with independent Gaussian entries."""
    g = rng.normal(scale=scale, size=(dim, dim)) + 1j * rng.normal(scale=scale, size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def random_qubit_unitary(rng: np.random.Generator) -> np.ndarray:
    """Bloch rotation exp(-i alpha n.sigma / 2) with Haar-ish random axis."""
    alpha = rng.uniform(0.0, 2.0 * math.pi)
    ct = rng.uniform(-1.0, 1.0)
    st = math.sqrt(max(0.0, 1.0 - ct * ct))
    beta = rng.uniform(0.0, 2.0 * math.pi)
    n = np.array([st * math.cos(beta), st * math.sin(beta), ct])
    sigma = np.array(
        [
            [[0.0, 1.0], [1.0, 0.0]],
            [[0.0, -1.0j], [1.0j, 0.0]],
            [[1.0, 0.0], [0.0, -1.0]],
        ],
        dtype=np.complex128,
    )
    ns = np.tensordot(n, sigma, axes=1)
    return math.cos(0.5 * alpha) * np.eye(2) - 1j * math.sin(0.5 * alpha) * ns
