"""
Backend selection for the multiplicity search.

The compiled extension is used when it imported and the instance fits its
64-bit state encoding; otherwise the pure Python search runs.  Set
``CYCLODENSITY_PURE=1`` to force the Python path.
"""
from __future__ import annotations

import os

from . import _feasible_py

try:
    if os.environ.get("CYCLODENSITY_PURE"):
        raise ImportError("pure Python backend forced")
    from . import _feasible as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def search(vectors, sizes, target, max_states=10**7, backend=None):
    """
    Multiplicities ``t`` with ``sum(t[g] * vectors[g]) == target``, or None.

    ``backend`` may be ``"python"`` or ``"compiled"`` to pin a path (the latter
    raises if the extension is missing); by default the fastest applicable one.
    """
    if backend == "python":
        return _feasible_py.search(vectors, sizes, target, max_states)
    if backend == "compiled" and _compiled is None:
        raise RuntimeError("compiled backend is not available")
    if _compiled is not None:
        result = _compiled.search(vectors, sizes, target, max_states)
        if result is not NotImplemented:
            return result
        if backend == "compiled":
            raise OverflowError("instance does not fit the compiled state encoding")
    return _feasible_py.search(vectors, sizes, target, max_states)
