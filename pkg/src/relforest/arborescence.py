"""Minimum spanning entering tree with a prescribed root (Chu-Liu-Edmonds).

Arcs point towards the root: every non-root vertex keeps exactly one
outgoing arc. An outgoing arborescence of the transposed table is the same
object, so no transposition is done here.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import _kernels
from ._jit import DEFAULT_BACKEND, HAVE_NUMBA
from .digraph import WeightedDigraph

BACKENDS = ("numba", "numpy")


class Arborescence(NamedTuple):
    parent: np.ndarray  # parent[root] == -1
    weight: float

    def arcs(self) -> dict[int, int]:
        return {int(q): int(p) for q, p in enumerate(self.parent) if p >= 0}


def _kernel(backend: str | None):
    backend = backend or DEFAULT_BACKEND
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable or disabled")
        return _kernels.cle_loops
    if backend == "numpy":
        return _kernels.cle_numpy
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def min_in_arborescence(g, root: int, backend: str | None = None) -> Arborescence | None:
    """Cheapest spanning entering tree of ``g`` rooted at ``root``.

    ``g`` is a :class:`WeightedDigraph` or a square weight table with
    ``inf`` for missing arcs. Returns ``None`` when some vertex cannot reach
    the root. Negative weights are fine.
    """
    w = g.w if isinstance(g, WeightedDigraph) else np.asarray(g, dtype=np.float64)
    n = w.shape[0]
    if not 0 <= root < n:
        raise IndexError(f"root {root} out of range for {n} vertices")
    if n == 1:
        return Arborescence(np.full(1, -1, dtype=np.int64), 0.0)
    w = np.array(w, dtype=np.float64)
    np.fill_diagonal(w, np.inf)
    ok, parent = _kernel(backend)(w, root)
    if not ok:
        return None
    tails = np.flatnonzero(parent >= 0)
    return Arborescence(parent, float(w[tails, parent[tails]].sum()))
