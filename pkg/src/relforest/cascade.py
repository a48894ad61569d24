"""Cascade of minimum spanning entering forests with N, N-1, ... trees.

Starting from the empty forest, each step dissolves the tree whose exit
increment ``mu_circ - mu_bullet`` is smallest and reattaches only the
component of its exit forest that contains the old root, so every forest
is a descendant of the previous one. Only the tree that just absorbed
another tree needs a new Chu-Liu-Edmonds call per step; every other root
keeps its cached exit forest.

Notation used in names:

``mu_bullet``
    weight of a root's tree in the current forest.
``mu_circ``
    cheapest weight of the arcs leaving a tree's vertex set when every one
    of its vertices must emit an arc (see :mod:`relforest.minima`).
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .digraph import WeightedDigraph, arcset_weight, min_out_arc
from .forest import EnteringForest, RootIndex, component_with_exit, validate
from .minima import mu_circ


class CascadeInvariantError(RuntimeError):
    """An internal identity failed; this is a bug, not an infeasible input."""


class Status(enum.Enum):
    PROGRESSED = "progressed"
    HALTED = "halted_minimum_k"
    FINISHED = "finished_spanning_tree"
    EMPTY = "empty_graph"


@dataclass
class RootRecord:
    root: int
    mu_bullet: float
    mu_circ: float | None = None
    H: dict[int, int] | None = None


class IncrementList:
    """Ascending ``(increment, root)`` list with removal by root."""

    def __init__(self):
        self._items: list[tuple[float, int]] = []
        self._key: dict[int, float] = {}

    def insert(self, increment: float, root: int) -> None:
        if root in self._key:
            raise KeyError(f"root {root} already listed")
        self._key[root] = increment
        bisect.insort(self._items, (increment, root))

    def discard(self, root: int) -> None:
        inc = self._key.pop(root, None)
        if inc is None:
            return
        i = bisect.bisect_left(self._items, (inc, root))
        del self._items[i]

    def head(self) -> tuple[float, int]:
        return self._items[0]

    def __contains__(self, root) -> bool:
        return root in self._key

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(list(self._items))


@dataclass(frozen=True)
class StepRecord:
    k: int  # trees after the step
    y: int
    x: int
    D: tuple[int, ...]
    exit_arc: tuple[int, int]
    increment: float
    mu_circ_y: float
    mu_bullet_y: float
    mu_bullet_x: float  # weight of the enlarged tree

    def as_dict(self):
        return {
            "k": self.k,
            "y": self.y,
            "x": self.x,
            "D": list(self.D),
            "exit": list(self.exit_arc),
            "increment": self.increment,
        }


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9 * max(1.0, abs(a), abs(b)))


class CascadeState:
    def __init__(self, g: WeightedDigraph, backend: str | None = None, check: bool = True):
        self.g = g
        self.backend = backend
        self.check = check
        self.parent = np.full(g.n, -1, dtype=np.int64)
        self.root_index = RootIndex(np.arange(g.n, dtype=np.int64))
        self.members: dict[int, list[int]] = {q: [q] for q in range(g.n)}
        self.records: dict[int, RootRecord] = {q: RootRecord(q, 0.0) for q in range(g.n)}
        self.delta = IncrementList()
        self.x: int | None = None
        self.step_no = 0
        self.status: Status | None = None
        self.last: StepRecord | None = None

    @property
    def k(self) -> int:
        return len(self.records)

    def forest(self) -> EnteringForest:
        return EnteringForest(self.parent.copy())

    def weight(self) -> float:
        return float(sum(r.mu_bullet for r in self.records.values()))

    def _set_exit(self, q: int, value: float, H: dict[int, int]) -> None:
        rec = self.records[q]
        rec.mu_circ = value
        rec.H = H
        self.delta.insert(value - rec.mu_bullet, q)

    def _drop_exit(self, q: int) -> None:
        rec = self.records.get(q)
        if rec is not None:
            rec.mu_circ = None
            rec.H = None
        self.delta.discard(q)

    def _absorb(self) -> StepRecord:
        increment, y = self.delta.head()
        rec_y = self.records[y]
        H = rec_y.H
        mu_circ_y, mu_bullet_y = rec_y.mu_circ, rec_y.mu_bullet
        Y = self.members[y]
        found = component_with_exit(H, y, Y, self.root_index)
        x = found.absorbing_root
        g = self.g

        if self.check:
            old = {q: int(self.parent[q]) for q in found.D if self.parent[q] >= 0}
            lhs = mu_bullet_y - arcset_weight(g, old, found.D) + arcset_weight(g, H, found.D)
            if not _close(lhs, mu_circ_y):
                raise CascadeInvariantError(
                    f"exit-forest identity failed at y={y}: {lhs} != mu_circ {mu_circ_y}"
                )

        for q in found.D:
            self.parent[q] = H[q]

        rec_x = self.records[x]
        rec_x.mu_bullet += mu_circ_y
        self._drop_exit(y)
        self._drop_exit(x)
        del self.records[y]
        self.root_index.root_of[Y] = x
        self.members[x].extend(self.members.pop(y))
        self.x = x
        self.step_no += 1

        if self.check:
            Z = self.members[x]
            tails = np.asarray(Z)[self.parent[Z] >= 0]
            actual = float(g.w[tails, self.parent[tails]].sum())
            if not _close(actual, rec_x.mu_bullet):
                raise CascadeInvariantError(
                    f"tree weight bookkeeping failed at x={x}: {actual} != {rec_x.mu_bullet}"
                )
            bad = validate(EnteringForest(self.parent.copy()), g)
            if bad is not None:
                raise CascadeInvariantError(f"step {self.step_no} produced an invalid forest: {bad}")

        self.last = StepRecord(
            k=self.k,
            y=y,
            x=x,
            D=found.D,
            exit_arc=found.exit_arc,
            increment=increment,
            mu_circ_y=mu_circ_y,
            mu_bullet_y=mu_bullet_y,
            mu_bullet_x=rec_x.mu_bullet,
        )
        return self.last

    def _after_merge(self) -> Status:
        self.status = Status.FINISHED if self.k == 1 else Status.PROGRESSED
        return self.status


def init(g: WeightedDigraph, backend: str | None = None, check: bool = True) -> CascadeState:
    """First step: every vertex offers its cheapest out-arc, the cheapest
    one overall is added.

    The returned state's ``status`` is ``EMPTY`` when the graph has no arcs
    (and ``FINISHED`` for a single vertex).
    """
    state = CascadeState(g, backend=backend, check=check)
    if g.n == 1:
        state.status = Status.FINISHED
        return state
    for q in range(g.n):
        best = min_out_arc(g, q)
        if best is not None:
            p, wq = best
            state._set_exit(q, wq, {q: p})
    if not len(state.delta):
        state.status = Status.EMPTY
        return state
    state._absorb()
    state._after_merge()
    return state


def step(state: CascadeState) -> Status:
    """Advance from ``k + 1`` trees to ``k`` trees, or report halting."""
    if state.status in (Status.HALTED, Status.FINISHED, Status.EMPTY):
        return state.status
    x = state.x
    res = mu_circ(state.g, state.members[x], backend=state.backend)
    if res.finite:
        state._set_exit(x, res.value, res.H_arcs)
    elif not len(state.delta):
        state.status = Status.HALTED
        return state.status
    state._absorb()
    return state._after_merge()


@dataclass
class CascadeResult:
    n: int
    status: Status
    phi: dict[int, float]
    trace: list[StepRecord]
    snapshots: dict[int, EnteringForest] | None = None
    deltas: list[dict[int, int]] | None = field(default=None, repr=False)

    @property
    def k_min(self) -> int:
        return min(self.phi)

    @property
    def ks(self) -> list[int]:
        return sorted(self.phi, reverse=True)

    def forest(self, k: int) -> EnteringForest:
        if k not in self.phi:
            raise KeyError(f"no forest with {k} trees was constructed")
        if self.snapshots is not None:
            return self.snapshots[k]
        parent = np.full(self.n, -1, dtype=np.int64)
        for arcs in self.deltas[: self.n - k]:
            for q, p in arcs.items():
                parent[q] = p
        return EnteringForest(parent)

    def forests(self):
        """``(k, forest)`` pairs from ``k = n`` downwards."""
        if self.snapshots is not None:
            for k in self.ks:
                yield k, self.snapshots[k]
            return
        parent = np.full(self.n, -1, dtype=np.int64)
        yield self.n, EnteringForest(parent.copy())
        for i, arcs in enumerate(self.deltas):
            for q, p in arcs.items():
                parent[q] = p
            yield self.n - i - 1, EnteringForest(parent.copy())


def run(g: WeightedDigraph, deltas_only: bool = False, backend: str | None = None, check: bool = True) -> CascadeResult:
    """Build the whole cascade down to the fewest trees reachable."""
    state = init(g, backend=backend, check=check)
    phi = {g.n: 0.0}
    trace: list[StepRecord] = []
    snapshots = None if deltas_only else {g.n: EnteringForest.empty(g.n)}
    deltas = [] if deltas_only else None

    def record():
        rec = state.last
        trace.append(rec)
        phi[state.k] = state.weight()
        if deltas_only:
            deltas.append({q: int(state.parent[q]) for q in rec.D})
        else:
            snapshots[state.k] = state.forest()

    if state.status in (Status.EMPTY, Status.FINISHED) and state.last is None:
        return CascadeResult(g.n, state.status, phi, trace, snapshots, deltas)
    record()
    while state.status is Status.PROGRESSED:
        before = state.step_no
        step(state)
        if state.step_no != before:
            record()
    return CascadeResult(g.n, state.status, phi, trace, snapshots, deltas)
