"""Ensemble definition files and structured reports.

An ensemble file is JSON with the shape

    {
      "dim": 2,
      "observable": [1.0, -1.0],
      "members": [
        {"p": 0.25, "label": "z0", "bloch": {"r": 1.0, "theta": 0.0, "phi": 0.0}},
        {"p": 0.75, "label": "m",  "matrix": {"re": [[...], ...], "im": [[...], ...]}}
      ]
    }

Angles are radians; the `bloch` form is only valid for dim = 2. Floats are
serialized with full precision so a save/load round trip reproduces the
same states bit for bit.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from qig.errors import ValidationError
from qig.states import BlochVector, DensityMatrix, Ensemble, Observable, bloch_to_density


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ValidationError(f"missing required field {key!r} in {where}")
    return doc[key]


def ensemble_from_dict(doc: dict) -> tuple[Ensemble, Observable]:
    """Parse the ensemble schema; raises ValidationError naming the bad field."""
    if not isinstance(doc, dict):
        raise ValidationError("ensemble document must be a JSON object")
    dim = _require(doc, "dim", "ensemble document")
    if not isinstance(dim, int) or dim < 2:
        raise ValidationError(f"'dim' must be an integer >= 2, got {dim!r}")
    obs_values = _require(doc, "observable", "ensemble document")
    if not isinstance(obs_values, list) or len(obs_values) != dim:
        raise ValidationError(f"'observable' must be a list of {dim} eigenvalues")
    obs = Observable(tuple(float(b) for b in obs_values))
    raw_members = _require(doc, "members", "ensemble document")
    if not isinstance(raw_members, list) or not raw_members:
        raise ValidationError("'members' must be a non-empty list")

    members = []
    for i, entry in enumerate(raw_members):
        where = f"members[{i}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where} must be an object")
        p = float(_require(entry, "p", where))
        label = str(entry.get("label", f"m{i}"))
        if "bloch" in entry and "matrix" in entry:
            raise ValidationError(f"{where} must have exactly one of 'bloch' or 'matrix'")
        if "bloch" in entry:
            if dim != 2:
                raise ValidationError(f"{where}: 'bloch' form is only valid for dim = 2")
            b = entry["bloch"]
            state = bloch_to_density(
                BlochVector(
                    float(_require(b, "r", f"{where}.bloch")),
                    float(_require(b, "theta", f"{where}.bloch")),
                    float(_require(b, "phi", f"{where}.bloch")),
                )
            )
        elif "matrix" in entry:
            m = entry["matrix"]
            re = np.asarray(_require(m, "re", f"{where}.matrix"), dtype=np.float64)
            im = np.asarray(_require(m, "im", f"{where}.matrix"), dtype=np.float64)
            if re.shape != (dim, dim) or im.shape != (dim, dim):
                raise ValidationError(f"{where}.matrix: 're' and 'im' must be {dim}x{dim}")
            state = DensityMatrix(re + 1j * im)
        else:
            raise ValidationError(f"{where} needs a 'bloch' or 'matrix' state")
        members.append((p, state, label))
    return Ensemble(members), obs


def ensemble_to_dict(e: Ensemble, obs: Observable) -> dict:
    """Serialize with full-precision matrix entries (round-trip exact)."""
    if obs.dim != e.dim:
        raise ValidationError("observable and ensemble dimensions differ")
    return {
        "dim": e.dim,
        "observable": list(obs.eigenvalues),
        "members": [
            {
                "p": m.p,
                "label": m.label,
                "matrix": {
                    "re": m.state.matrix.real.tolist(),
                    "im": m.state.matrix.imag.tolist(),
                },
            }
            for m in e.members
        ],
    }


def load_ensemble(path: str | Path) -> tuple[Ensemble, Observable]:
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError:
        raise ValidationError(f"ensemble file not found: {p}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {p}: {exc}") from None
    return ensemble_from_dict(doc)


def save_ensemble(path: str | Path, e: Ensemble, obs: Observable) -> None:
    Path(path).write_text(json.dumps(ensemble_to_dict(e, obs), indent=2) + "\n")


def format_value(v: float) -> str:
    """Fixed 12-significant-digit decimal rendering used by all tabular output."""
    if not math.isfinite(v):
        raise ValidationError(f"output values must be finite, got {v!r}")
    return format(float(v), ".12g")
