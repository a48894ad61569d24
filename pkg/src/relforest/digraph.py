"""Dense weighted digraphs.

A graph on ``n`` vertices is an ``(n, n)`` float table ``w`` where
``w[q, p]`` is the weight of the arc ``q -> p`` and ``+inf`` means the arc
is absent. The diagonal is always ``+inf``.

Arc sets that can belong to a forest have at most one arc per tail, so
throughout the package they are plain ``dict`` objects mapping
``tail -> head``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

INF = math.inf


class GraphError(ValueError):
    """Raised for malformed graph input."""


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    n: int
    w: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if self.w.shape != (self.n, self.n):
            raise GraphError(f"weight table has shape {self.w.shape}, expected {(self.n, self.n)}")
        self.w.setflags(write=False)

    @classmethod
    def from_matrix(cls, w) -> "WeightedDigraph":
        """Wrap a square table; diagonal entries are discarded."""
        w = np.array(w, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise GraphError("weight table must be square")
        if np.isnan(w).any():
            raise GraphError("NaN weight")
        if (w == -INF).any():
            raise GraphError("weights must be real numbers or +inf")
        np.fill_diagonal(w, INF)
        return cls(w.shape[0], w)

    def weight(self, q: int, p: int) -> float:
        return float(self.w[q, p])

    def arcs(self) -> list[tuple[int, int, float]]:
        """Finite arcs in row-major order."""
        tails, heads = np.nonzero(np.isfinite(self.w))
        return [(int(q), int(p), float(self.w[q, p])) for q, p in zip(tails, heads)]

    def transpose(self) -> "WeightedDigraph":
        return WeightedDigraph(self.n, np.ascontiguousarray(self.w.T))

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.w, other.w)

    def __repr__(self):
        finite = int(np.isfinite(self.w).sum())
        return f"WeightedDigraph(n={self.n}, arcs={finite})"


def build_from_arcs(n: int, arcs: Iterable[tuple[int, int, float]]) -> WeightedDigraph:
    """Build a graph from ``(tail, head, weight)`` triples.

    Parallel arcs keep the minimum weight and self-loops are dropped.
    """
    if n < 1:
        raise GraphError("a graph needs at least one vertex")
    w = np.full((n, n), INF)
    for tail, head, weight in arcs:
        if not (0 <= tail < n and 0 <= head < n):
            raise GraphError(f"arc ({tail}, {head}) out of range for n={n}")
        weight = float(weight)
        if math.isnan(weight):
            raise GraphError(f"NaN weight on arc ({tail}, {head})")
        if not math.isfinite(weight):
            raise GraphError(f"arc ({tail}, {head}) must have a finite weight")
        if tail == head:
            continue
        if weight < w[tail, head]:
            w[tail, head] = weight
    return WeightedDigraph(n, w)


def min_out_arc(g: WeightedDigraph, q: int, restrict_heads: Iterable[int] | None = None):
    """Cheapest arc leaving ``q``, as ``(head, weight)``, or ``None``.

    Only heads in ``restrict_heads`` are considered when it is given. Ties go
    to the smallest head index.
    """
    row = g.w[q]
    if restrict_heads is None:
        heads = np.arange(g.n)
    else:
        heads = np.array(sorted(set(restrict_heads) - {q}), dtype=np.int64)
        if heads.size == 0:
            return None
    vals = row[heads]
    i = int(np.argmin(vals))
    if not math.isfinite(vals[i]):
        return None
    return int(heads[i]), float(vals[i])


def arcset_weight(g: WeightedDigraph, arcs: Mapping[int, int], S: Iterable[int] | None = None) -> float:
    """Total weight of the arcs whose tail lies in ``S`` (default: all tails).

    Heads may lie outside ``S``; this makes the weight additive over disjoint
    vertex sets.
    """
    if S is None:
        tails = arcs.keys()
    else:
        tails = [q for q in S if q in arcs]
    return float(sum(g.w[q, arcs[q]] for q in tails))
