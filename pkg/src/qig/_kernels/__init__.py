"""Kernel backend selection.

The compiled core (`_fastcore`, Cython) is preferred when its extension
module built; otherwise the NumPy fallback (`_pycore`) is used. Setting
the environment variable QIG_PURE_PYTHON=1 forces the fallback. Both
backends expose the same functions with matching semantics; per-process
results are deterministic either way.
"""

from __future__ import annotations

import os

from qig._kernels import _pycore

try:
    from qig._kernels import _fastcore
except ImportError:
    _fastcore = None

if _fastcore is None or os.environ.get("QIG_PURE_PYTHON") == "1":
    _impl = _pycore
else:
    _impl = _fastcore

BACKEND_NAME: str = _impl.BACKEND_NAME
jacobi_eigenvalues = _impl.jacobi_eigenvalues
iaz_curve = _impl.iaz_curve
iax_curve = _impl.iax_curve


def available_backends() -> tuple[str, ...]:
    """Names of importable backends ("compiled" first when built)."""
    names = []
    if _fastcore is not None:
        names.append(_fastcore.BACKEND_NAME)
    names.append(_pycore.BACKEND_NAME)
    return tuple(names)


def get_backend(name: str):
    """Return a backend module by name, for benchmarks and cross-checks."""
    if name == _pycore.BACKEND_NAME:
        return _pycore
    if _fastcore is not None and name == _fastcore.BACKEND_NAME:
        return _fastcore
    raise KeyError(f"unknown or unavailable backend: {name!r}")
