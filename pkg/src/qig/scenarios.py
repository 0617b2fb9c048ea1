"""Prepackaged experiments: BB84 curves, coupling sweeps, random campaigns.

`verify_random` draws seeded random qubit ensembles and checks, per trial:
monotone growth of the device gain in g, monotone decay of the receiver's
x gain, the Holevo ceiling, the two-basis entropic-uncertainty margin, the
complementarity bound on the summed gains, and agreement between the
closed forms and the matrix pipeline. `conjecture_scan` measures (never
asserts) the minimum of chi - (z gain + x gain): a negative margin beyond
tolerance would be a counterexample worth reporting loudly.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from qig import numerics, pointer, qubit, sampling
from qig.errors import ValidationError
from qig.numerics import binary_entropy
from qig.pointer import PointerModel, information_gain
from qig.qubit import (
    QubitEnsembleView,
    complementarity_rhs,
    entropic_uncertainty_margin,
    gain_x_curve,
    gain_z_curve,
    holevo_bound_view,
    pipeline_info_gain_x,
)
from qig.states import (
    PAULI_Z_OBSERVABLE,
    BlochVector,
    Ensemble,
    Observable,
    bloch_to_density,
    holevo_bound,
    projective_information,
)

BOUND_TOL = 1e-9
AGREEMENT_TOL = 1e-10

QUANTITY_ORDER = ("I_a_z", "I_a_x", "chi", "complementarity_rhs", "I_p")


def theorem_grid() -> np.ndarray:
    """Default 61-point g/delta grid: {0} plus 60 log-spaced in [1e-3, 6].

    Covers the weak-coupling knee and the saturation plateau.
    """
    return np.concatenate([[0.0], np.geomspace(1e-3, 6.0, 60)])


def default_sweep_grid() -> np.ndarray:
    """Default plotting grid: 101 linear points over g/delta in [0, 5]."""
    return np.linspace(0.0, 5.0, 101)


# ---------------------------------------------------------------------------
# BB84
# ---------------------------------------------------------------------------

def bb84_view() -> QubitEnsembleView:
    """The four equiprobable conjugate-basis states in Bloch coordinates."""
    half_pi = 0.5 * math.pi
    return QubitEnsembleView(
        [
            (0.25, BlochVector(1.0, 0.0, 0.0), "z0"),
            (0.25, BlochVector(1.0, math.pi, 0.0), "z1"),
            (0.25, BlochVector(1.0, half_pi, 0.0), "x+"),
            (0.25, BlochVector(1.0, half_pi, math.pi), "x-"),
        ]
    )


def bb84_ensemble() -> Ensemble:
    """Density-matrix form of the BB84 source; averages to I/2, chi = 1."""
    return Ensemble(
        [(m.p, bloch_to_density(m.bloch), m.label) for m in bb84_view().members]
    )


def bb84_closed_forms(g: float, delta: float) -> tuple[float, float]:
    """(z gain, x gain) for the BB84 source at one coupling strength.

    z gain = H((1 + e^{-g^2/2 delta^2})/2)/2 and the x gain is its exact
    complement to 1/2, so the two always sum to 1/2.
    """
    if not (math.isfinite(g) and g >= 0.0):
        raise ValidationError(f"g = {g!r} must be finite and >= 0")
    if not (math.isfinite(delta) and delta > 0.0):
        raise ValidationError(f"delta = {delta!r} must be finite and > 0")
    _, emh = qubit.decay_factors(g, delta)
    iaz = 0.5 * binary_entropy(0.5 * (1.0 + emh))
    return iaz, 0.5 - iaz


def bb84_crossing(delta: float = 1.0, lo: float = 0.0, hi: float = 5.0,
                  tol: float = 1e-12) -> float:
    """Coupling strength where the BB84 z and x gains cross, by bisection."""
    def diff(g: float) -> float:
        iaz, iax = bb84_closed_forms(g, delta)
        return iaz - iax

    flo, fhi = diff(lo), diff(hi)
    if flo > 0.0 or fhi < 0.0:
        raise ValidationError("bracket does not straddle the crossing")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if diff(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    """Grid (in g/delta units), pointer spread, and requested quantities."""

    g_over_delta_grid: tuple[float, ...]
    delta: float = 1.0
    quantities: tuple[str, ...] = QUANTITY_ORDER

    def __post_init__(self) -> None:
        grid = tuple(float(g) for g in self.g_over_delta_grid)
        if not grid:
            raise ValidationError("sweep grid must be non-empty")
        if any(not math.isfinite(g) or g < 0.0 for g in grid):
            raise ValidationError("sweep grid values must be finite and >= 0")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValidationError("sweep grid must be strictly ascending")
        if not (math.isfinite(self.delta) and self.delta > 0.0):
            raise ValidationError(f"delta = {self.delta!r} must be > 0")
        quantities = tuple(self.quantities)
        unknown = [q for q in quantities if q not in QUANTITY_ORDER]
        if unknown:
            raise ValidationError(f"unknown sweep quantities: {unknown}")
        if not quantities:
            raise ValidationError("at least one sweep quantity is required")
        ordered = tuple(q for q in QUANTITY_ORDER if q in quantities)
        object.__setattr__(self, "g_over_delta_grid", grid)
        object.__setattr__(self, "quantities", ordered)


@dataclass(frozen=True)
class SweepResult:
    """One row per grid point, in grid order; first column is g/delta."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]


def _is_pauli_z(obs: Observable) -> bool:
    return obs.eigenvalues == (1.0, -1.0)


def _qubit_components(e: Ensemble) -> tuple[np.ndarray, np.ndarray]:
    """Per-member (z, x) Bloch components read off the density matrices."""
    z = np.array([m.state.matrix[0, 0].real - m.state.matrix[1, 1].real for m in e.members])
    x = np.array([2.0 * m.state.matrix[0, 1].real for m in e.members])
    return z, x


def sweep(e: Ensemble, spec: SweepSpec, obs: Observable | None = None,
          workers: int = 1) -> SweepResult:
    """Evaluate the requested quantities over the coupling grid.

    For qubit ensembles measured along {+1, -1} the closed-form kernels
    are used; otherwise each grid point runs the matrix pipeline. The x
    gain is only defined for qubit ensembles. Rows come back in grid
    order regardless of `workers`.
    """
    if obs is None:
        if e.dim == 2:
            obs = PAULI_Z_OBSERVABLE
        else:
            raise ValidationError("an observable is required for ensembles with dim > 2")
    if obs.dim != e.dim:
        raise ValidationError(f"observable dim {obs.dim} does not match ensemble dim {e.dim}")
    if "I_a_x" in spec.quantities and e.dim != 2:
        raise ValidationError("I_a_x is unsupported for ensembles with dim > 2")

    grid = np.asarray(spec.g_over_delta_grid, dtype=np.float64)
    g_values = grid * spec.delta
    npts = grid.size

    constants: dict[str, float] = {}
    if "chi" in spec.quantities:
        constants["chi"] = holevo_bound(e)
    if "complementarity_rhs" in spec.quantities:
        member_s = sum(m.p * numerics.von_neumann_entropy(m.state) for m in e.members)
        constants["complementarity_rhs"] = min(1.0, max(0.0, 1.0 - member_s))
    if "I_p" in spec.quantities:
        constants["I_p"] = projective_information(e, obs)

    fast = e.dim == 2 and _is_pauli_z(obs)
    columns = ("g_over_delta",) + spec.quantities
    curves: dict[str, np.ndarray] = {}

    if fast:
        z, x = _qubit_components(e)
        p = e.probabilities
        view_like_z = gain_z_curve_from_components(p, z, g_values, spec.delta)
        curves["I_a_z"] = view_like_z
        if "I_a_x" in spec.quantities:
            curves["I_a_x"] = gain_x_curve_from_components(p, x, g_values, spec.delta)
    else:
        def point(k: int) -> tuple[float, float | None]:
            pm = PointerModel(float(g_values[k]), spec.delta)
            iaz = information_gain(e, obs, pm)
            iax = pipeline_info_gain_x(e, pm) if "I_a_x" in spec.quantities else None
            return iaz, iax

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(point, range(npts)))
        else:
            results = [point(k) for k in range(npts)]
        curves["I_a_z"] = np.array([r[0] for r in results])
        if "I_a_x" in spec.quantities:
            curves["I_a_x"] = np.array([r[1] for r in results])

    rows = []
    for k in range(npts):
        row = [float(grid[k])]
        for q in spec.quantities:
            if q in constants:
                row.append(constants[q])
            else:
                row.append(float(curves[q][k]))
        rows.append(tuple(row))
    return SweepResult(columns=columns, rows=tuple(rows))


def gain_z_curve_from_components(p: np.ndarray, z: np.ndarray,
                                 g_values: np.ndarray, delta: float) -> np.ndarray:
    """Closed-form z gain for raw (weights, z-components) over a grid."""
    from qig import _kernels

    t = (np.asarray(g_values, dtype=np.float64) / delta) ** 2
    emt = np.where(-t <= pointer.UNDERFLOW_ARG, 0.0,
                   np.exp(-np.minimum(t, -pointer.UNDERFLOW_ARG)))
    return _kernels.iaz_curve(p, z, emt)


def gain_x_curve_from_components(p: np.ndarray, x: np.ndarray,
                                 g_values: np.ndarray, delta: float) -> np.ndarray:
    """Closed-form x gain for raw (weights, x-components) over a grid."""
    from qig import _kernels

    half = 0.5 * (np.asarray(g_values, dtype=np.float64) / delta) ** 2
    emh = np.where(-half <= pointer.UNDERFLOW_ARG, 0.0,
                   np.exp(-np.minimum(half, -pointer.UNDERFLOW_ARG)))
    return _kernels.iax_curve(p, x, emh)


# ---------------------------------------------------------------------------
# Random verification campaign
# ---------------------------------------------------------------------------

def _view_to_dict(view: QubitEnsembleView) -> dict:
    return {
        "members": [
            {
                "p": m.p,
                "r": m.bloch.r,
                "theta": m.bloch.theta,
                "phi": m.bloch.phi,
                "label": m.label,
            }
            for m in view.members
        ]
    }


@dataclass(frozen=True)
class CheckViolation:
    """One bound or agreement failure found during a campaign."""

    check: str
    trial: int
    magnitude: float
    g_over_delta: float | None = None
    g_pair: tuple[float, float] | None = None
    ensemble: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "trial": self.trial,
            "magnitude": self.magnitude,
            "g_over_delta": self.g_over_delta,
            "g_pair": list(self.g_pair) if self.g_pair is not None else None,
            "ensemble": self.ensemble,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of `verify_random`; empty `violations` means every check held."""

    trials: int
    seed: int
    delta: float
    g_over_delta_grid: tuple[float, ...]
    sampling_family: str
    checks: dict
    violations: tuple[CheckViolation, ...]
    conjecture_min_margin: float
    conjecture_argmin: dict

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "report": "verification",
            "trials": self.trials,
            "seed": self.seed,
            "delta": self.delta,
            "g_over_delta_grid": list(self.g_over_delta_grid),
            "sampling_family": self.sampling_family,
            "checks": self.checks,
            "violations": [v.to_dict() for v in self.violations],
            "conjecture_min_margin": self.conjecture_min_margin,
            "conjecture_argmin": self.conjecture_argmin,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _trial_checks(trial: int, view: QubitEnsembleView, grid: np.ndarray,
                  delta: float, agree_idx: Sequence[int]) -> tuple[list[CheckViolation], float, float]:
    """Run every per-trial check; return (violations, min margin, argmin g)."""
    g_values = grid * delta
    curve_z = gain_z_curve(view, g_values, delta)
    curve_x = gain_x_curve(view, g_values, delta)
    chi = holevo_bound_view(view)
    rhs = complementarity_rhs(view)
    bad: list[CheckViolation] = []
    edict: dict = {}

    def record(check: str, magnitude: float, g: float | None = None,
               pair: tuple[float, float] | None = None) -> None:
        nonlocal edict
        if not edict:
            edict = _view_to_dict(view)
        bad.append(CheckViolation(check, trial, float(magnitude), g, pair, edict))

    dz = curve_z[:-1] - curve_z[1:]
    for k in np.nonzero(dz > BOUND_TOL)[0]:
        record("gain_z_nondecreasing", dz[k], pair=(float(grid[k]), float(grid[k + 1])))
    dx = curve_x[1:] - curve_x[:-1]
    for k in np.nonzero(dx > BOUND_TOL)[0]:
        record("gain_x_nonincreasing", dx[k], pair=(float(grid[k]), float(grid[k + 1])))
    over = curve_z - chi
    for k in np.nonzero(over > BOUND_TOL)[0]:
        record("gain_z_below_holevo", over[k], g=float(grid[k]))
    for m in view.members:
        margin = entropic_uncertainty_margin(m.bloch)
        if margin < -BOUND_TOL:
            record("uncertainty_margin_nonnegative", -margin)
    comp = curve_z + curve_x - rhs
    for k in np.nonzero(comp > BOUND_TOL)[0]:
        record("complementarity_sum_bound", comp[k], g=float(grid[k]))

    ensemble = view.to_ensemble()
    for k in agree_idx:
        pm = PointerModel(float(g_values[k]), delta)
        dz_pipe = abs(float(curve_z[k]) - information_gain(ensemble, PAULI_Z_OBSERVABLE, pm))
        if dz_pipe > AGREEMENT_TOL:
            record("closed_form_matches_pipeline_z", dz_pipe, g=float(grid[k]))
        dx_pipe = abs(float(curve_x[k]) - pipeline_info_gain_x(ensemble, pm))
        if dx_pipe > AGREEMENT_TOL:
            record("closed_form_matches_pipeline_x", dx_pipe, g=float(grid[k]))

    margins = chi - (curve_z + curve_x)
    k_min = int(np.argmin(margins))
    return bad, float(margins[k_min]), float(grid[k_min])


def verify_random(trials: int, seed: int, delta: float = 1.0,
                  grid: np.ndarray | None = None,
                  agreement_indices: Sequence[int] | None = None,
                  workers: int = 1) -> VerificationReport:
    """Seeded random campaign over qubit ensembles.

    Draws `trials` ensembles, runs the full per-trial check battery on the
    61-point default grid (or the one supplied), and aggregates violations
    plus the running minimum of the conjectured chi margin. Identical
    (trials, seed) always produce identical reports; trial evaluation may
    be parallelized without affecting the output.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    grid = theorem_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    if agreement_indices is None:
        agreement_indices = (0, grid.size // 2, grid.size - 1)
    rng = np.random.default_rng(seed)
    views = [sampling.random_qubit_view(rng) for _ in range(trials)]

    def run(i: int) -> tuple[list[CheckViolation], float, float]:
        return _trial_checks(i, views[i], grid, delta, agreement_indices)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(trials)))
    else:
        results = [run(i) for i in range(trials)]

    violations: list[CheckViolation] = []
    min_margin = math.inf
    argmin: dict = {}
    for i, (bad, margin, g_at) in enumerate(results):
        violations.extend(bad)
        if margin < min_margin:
            min_margin = margin
            argmin = {
                "trial": i,
                "g_over_delta": g_at,
                "margin": margin,
                "ensemble": _view_to_dict(views[i]),
            }

    npts = grid.size
    per_pair = trials * (npts - 1)
    checks = {
        "gain_z_nondecreasing": {"comparisons": per_pair},
        "gain_x_nonincreasing": {"comparisons": per_pair},
        "gain_z_below_holevo": {"comparisons": trials * npts},
        "uncertainty_margin_nonnegative": {"comparisons": sum(len(v) for v in views)},
        "complementarity_sum_bound": {"comparisons": trials * npts},
        "closed_form_matches_pipeline_z": {"comparisons": trials * len(agreement_indices)},
        "closed_form_matches_pipeline_x": {"comparisons": trials * len(agreement_indices)},
    }
    for name, entry in checks.items():
        entry["violations"] = sum(1 for v in violations if v.check == name)

    return VerificationReport(
        trials=trials,
        seed=seed,
        delta=delta,
        g_over_delta_grid=tuple(float(g) for g in grid),
        sampling_family=sampling.SAMPLING_FAMILY,
        checks=checks,
        violations=tuple(violations),
        conjecture_min_margin=min_margin,
        conjecture_argmin=argmin,
    )


# ---------------------------------------------------------------------------
# Conjecture scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanResult:
    """Measured minimum of chi - (z gain + x gain) over a random family."""

    trials: int
    seed: int
    delta: float
    g_over_delta_grid: tuple[float, ...]
    sampling_family: str
    min_margin: float
    argmin: dict

    @property
    def counterexample_found(self) -> bool:
        return self.min_margin < -BOUND_TOL

    def to_dict(self) -> dict:
        return {
            "report": "conjecture-scan",
            "trials": self.trials,
            "seed": self.seed,
            "delta": self.delta,
            "g_over_delta_grid": list(self.g_over_delta_grid),
            "sampling_family": self.sampling_family,
            "min_margin": self.min_margin,
            "argmin": self.argmin,
            "counterexample_found": self.counterexample_found,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def conjecture_scan(trials: int, seed: int,
                    g_grid: Sequence[float] | None = None,
                    delta: float = 1.0, workers: int = 1) -> ScanResult:
    """Measure min over trials x grid of chi - (z gain + x gain).

    Report-only: the result carries the minimum margin and the ensemble
    achieving it. A margin below -1e-9 marks `counterexample_found`.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    grid = theorem_grid() if g_grid is None else np.asarray(g_grid, dtype=np.float64)
    rng = np.random.default_rng(seed)
    views = [sampling.random_qubit_view(rng) for _ in range(trials)]
    g_values = grid * delta

    def run(i: int) -> tuple[float, float]:
        view = views[i]
        margins = holevo_bound_view(view) - (
            gain_z_curve(view, g_values, delta) + gain_x_curve(view, g_values, delta)
        )
        k = int(np.argmin(margins))
        return float(margins[k]), float(grid[k])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(trials)))
    else:
        results = [run(i) for i in range(trials)]

    min_margin = math.inf
    argmin: dict = {}
    for i, (margin, g_at) in enumerate(results):
        if margin < min_margin:
            min_margin = margin
            argmin = {
                "trial": i,
                "g_over_delta": g_at,
                "margin": margin,
                "ensemble": _view_to_dict(views[i]),
            }

    return ScanResult(
        trials=trials,
        seed=seed,
        delta=delta,
        g_over_delta_grid=tuple(float(g) for g in grid),
        sampling_family=sampling.SAMPLING_FAMILY,
        min_margin=min_margin,
        argmin=argmin,
    )
