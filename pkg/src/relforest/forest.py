"""Entering forests: validation, tree queries, arc replacement and the
component search that turns an exit forest into a single reattachment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .digraph import WeightedDigraph


class ForestError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EnteringForest:
    """Parent-pointer forest; ``parent[v] == -1`` marks a root."""

    parent: np.ndarray

    def __post_init__(self):
        self.parent.setflags(write=False)

    @property
    def n(self) -> int:
        return self.parent.shape[0]

    @classmethod
    def empty(cls, n: int) -> "EnteringForest":
        return cls(np.full(n, -1, dtype=np.int64))

    @classmethod
    def from_arcs(cls, n: int, arcs: Mapping[int, int]) -> "EnteringForest":
        parent = np.full(n, -1, dtype=np.int64)
        for q, p in arcs.items():
            parent[q] = p
        return cls(parent)

    def arcs(self) -> dict[int, int]:
        return {int(q): int(self.parent[q]) for q in np.flatnonzero(self.parent >= 0)}

    def weight(self, g: WeightedDigraph) -> float:
        tails = np.flatnonzero(self.parent >= 0)
        return float(g.w[tails, self.parent[tails]].sum())

    def __eq__(self, other):
        if not isinstance(other, EnteringForest):
            return NotImplemented
        return np.array_equal(self.parent, other.parent)

    def __hash__(self):
        return hash(self.parent.tobytes())

    def __repr__(self):
        return f"EnteringForest({self.arcs()})"


@dataclass(frozen=True)
class Violation:
    kind: str  # "cycle", "missing-arc", "bad-vertex"
    vertices: tuple[int, ...]

    def __str__(self):
        return f"{self.kind}: {list(self.vertices)}"


def validate(f: EnteringForest, g: WeightedDigraph | None = None) -> Violation | None:
    """Return the first problem found in ``f``, or ``None`` for a valid forest.

    Checks head ranges, that every arc exists in ``g`` with finite weight
    (when ``g`` is given) and acyclicity.
    """
    n = f.n
    parent = f.parent
    for q in range(n):
        p = int(parent[q])
        if p < -1 or p >= n or p == q:
            return Violation("bad-vertex", (q, p))
        if p >= 0 and g is not None and not math.isfinite(g.w[q, p]):
            return Violation("missing-arc", (q, p))
    # 0 = unseen, 1 = on current chain, 2 = known to reach a root
    state = np.zeros(n, dtype=np.int8)
    for s in range(n):
        chain = []
        v = s
        while v >= 0 and state[v] == 0:
            state[v] = 1
            chain.append(v)
            v = int(parent[v])
        if v >= 0 and state[v] == 1:
            i = chain.index(v)
            return Violation("cycle", tuple(chain[i:]))
        for u in chain:
            state[u] = 2
    return None


def is_forest(arcs: Mapping[int, int], n: int, g: WeightedDigraph | None = None) -> bool:
    return validate(EnteringForest.from_arcs(n, arcs), g) is None


class RootIndex:
    """Maps every vertex to the root of its tree."""

    def __init__(self, root_of: np.ndarray):
        self.root_of = root_of

    @classmethod
    def from_forest(cls, f: EnteringForest) -> "RootIndex":
        n = f.n
        root_of = np.full(n, -1, dtype=np.int64)
        for s in range(n):
            chain = []
            v = s
            while root_of[v] < 0 and f.parent[v] >= 0:
                chain.append(v)
                v = int(f.parent[v])
            r = v if f.parent[v] < 0 else int(root_of[v])
            root_of[v] = r
            root_of[chain] = r
        return cls(root_of)

    def __getitem__(self, v: int) -> int:
        return int(self.root_of[v])

    def copy(self) -> "RootIndex":
        return RootIndex(self.root_of.copy())


def roots(f: EnteringForest) -> set[int]:
    return {int(r) for r in np.flatnonzero(f.parent < 0)}


def tree_vertices(f: EnteringForest, r: int, index: RootIndex | None = None) -> set[int]:
    if f.parent[r] >= 0:
        raise ForestError(f"vertex {r} is not a root")
    index = index or RootIndex.from_forest(f)
    return {int(v) for v in np.flatnonzero(index.root_of == r)}


def trees(f: EnteringForest) -> dict[int, set[int]]:
    """Vertex set of every tree, keyed by root."""
    index = RootIndex.from_forest(f)
    out: dict[int, set[int]] = {int(r): set() for r in np.flatnonzero(f.parent < 0)}
    for v, r in enumerate(index.root_of):
        out[int(r)].add(v)
    return out


def replace_arcs(f: EnteringForest | Mapping[int, int], donor_arcs: Mapping[int, int], S: Iterable[int]) -> dict[int, int]:
    """Arcs of ``f`` with the arcs leaving ``S`` swapped for the donor's.

    The result is not validated.
    """
    base = f.arcs() if isinstance(f, EnteringForest) else dict(f)
    for q in S:
        base.pop(q, None)
        if q in donor_arcs:
            base[q] = donor_arcs[q]
    return base


@dataclass(frozen=True)
class ExitSearchResult:
    D: tuple[int, ...]
    exit_arc: tuple[int, int]
    absorbing_root: int


def component_with_exit(H_arcs: Mapping[int, int], y: int, Y: Iterable[int], index: RootIndex) -> ExitSearchResult:
    """Component of ``H`` restricted to ``Y`` that contains ``y``.

    ``H_arcs`` must hold exactly one arc from every vertex of ``Y``. The
    search ignores arc orientation, and the single arc of the component that
    leaves ``Y`` is reported together with the root of the tree it enters.
    """
    Y = set(Y)
    if y not in Y:
        raise ForestError(f"start vertex {y} not in Y")
    children: dict[int, list[int]] = {}
    for q in Y:
        if q not in H_arcs:
            raise ForestError(f"vertex {q} of Y emits no arc in H")
        p = H_arcs[q]
        if p in Y:
            children.setdefault(p, []).append(q)
    if len(H_arcs) != len(Y):
        raise ForestError("H has arcs from vertices outside Y")

    seen = {y}
    stack = [y]
    exit_arc = None
    while stack:
        v = stack.pop()
        p = H_arcs[v]
        if p in Y:
            if p not in seen:
                seen.add(p)
                stack.append(p)
        else:
            if exit_arc is not None:
                raise ForestError("component has more than one arc leaving Y")
            exit_arc = (v, p)
        for c in children.get(v, ()):
            if c not in seen:
                seen.add(c)
                stack.append(c)
    if exit_arc is None:
        raise ForestError("component has no arc leaving Y; H is not a forest")
    return ExitSearchResult(tuple(sorted(seen)), exit_arc, index[exit_arc[1]])


def _root_change(f_parent: EnteringForest, f_child: EnteringForest):
    if f_parent.n != f_child.n:
        return None
    kp, kc = roots(f_parent), roots(f_child)
    gone = kp - kc
    if len(gone) != 1 or not kc < kp:
        return None
    return gone.pop()


def is_pseudo_descendant(f_parent: EnteringForest, f_child: EnteringForest) -> tuple[bool, int | None]:
    """Child differs from parent only on the arcs of one dissolved tree."""
    y = _root_change(f_parent, f_child)
    if y is None:
        return False, None
    index = RootIndex.from_forest(f_parent)
    outside = index.root_of != y
    if not np.array_equal(f_parent.parent[outside], f_child.parent[outside]):
        return False, None
    return True, y


def is_descendant(f_parent: EnteringForest, f_child: EnteringForest) -> tuple[bool, int | None]:
    """Child reattaches exactly one tree of the parent by a single exit arc.

    Returns ``(True, y)`` with ``y`` the root of the reattached tree.
    """
    ok, y = is_pseudo_descendant(f_parent, f_child)
    if not ok:
        return False, None
    index = RootIndex.from_forest(f_parent)
    Y = np.flatnonzero(index.root_of == y)
    heads = f_child.parent[Y]
    leaving = int(np.count_nonzero(index.root_of[heads] != y))
    if leaving != 1:
        return False, None
    return True, y
