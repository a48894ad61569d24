"""The cheapest way to make every vertex of a set emit an arc.

All vertices outside ``S`` are merged into one sink ``*``; the arc
``q -> *`` costs the cheapest arc from ``q`` leaving ``S``. A minimum
entering tree of that merged graph rooted at ``*`` then expands back into
an arc set in which every vertex of ``S`` emits exactly one arc and no cycle
forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .arborescence import min_in_arborescence
from .digraph import INF, WeightedDigraph


@dataclass(frozen=True)
class MuCircResult:
    value: float
    H_arcs: dict[int, int] = field(default_factory=dict)
    exit_argmins: dict[int, int] = field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)


def merged_sink_table(g: WeightedDigraph, S: np.ndarray):
    """Weight table on ``S + [*]`` and the best exit head for every vertex."""
    m = S.size
    outside = np.ones(g.n, dtype=bool)
    outside[S] = False
    comp = np.flatnonzero(outside)
    W = np.full((m + 1, m + 1), INF)
    W[:m, :m] = g.w[np.ix_(S, S)]
    exits = g.w[S][:, comp]
    best = np.argmin(exits, axis=1)
    W[:m, m] = exits[np.arange(m), best]
    return W, comp[best]


def mu_circ(g: WeightedDigraph, S: Iterable[int], backend: str | None = None) -> MuCircResult:
    """Minimum weight of the arcs leaving ``S`` over forests where every
    vertex of ``S`` emits an arc, with one witness arc set.

    ``value`` is ``inf`` (and the arc sets empty) when no such forest exists.
    """
    S = np.array(sorted(set(S)), dtype=np.int64)
    if S.size == 0 or S.size >= g.n:
        raise ValueError("S must be a nonempty proper subset of the vertices")
    W, exit_heads = merged_sink_table(g, S)
    m = S.size
    tree = min_in_arborescence(W, m, backend=backend)
    if tree is None:
        return MuCircResult(INF)
    H: dict[int, int] = {}
    argmins: dict[int, int] = {}
    for i in range(m):
        q = int(S[i])
        p = int(tree.parent[i])
        if p == m:
            H[q] = int(exit_heads[i])
            argmins[q] = H[q]
        else:
            H[q] = int(S[p])
    return MuCircResult(tree.weight, H, argmins)
