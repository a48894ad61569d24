"""Exhaustive ground truth for small graphs.

Everything here enumerates parent assignments directly and shares no code
with the cascade, the minima module or the Chu-Liu-Edmonds kernels. Cost is
exponential in ``n``; calls refuse graphs above ``cap`` vertices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .digraph import INF, WeightedDigraph
from .forest import EnteringForest, is_descendant, trees

DEFAULT_CAP = 8


class OracleCapExceeded(ValueError):
    pass


def _check_cap(g: WeightedDigraph, cap: int) -> None:
    if g.n > cap:
        raise OracleCapExceeded(f"oracle limited to n <= {cap}, got n={g.n}")


def _heads(g: WeightedDigraph, q: int) -> list[int]:
    return [p for p in range(g.n) if p != q and math.isfinite(g.w[q, p])]


def _closes_cycle(parent: list[int], q: int, p: int) -> bool:
    """Would the arc q -> p close a cycle among the arcs assigned so far?"""
    v = p
    while v >= 0:
        if v == q:
            return True
        v = parent[v]
    return False


def _assignments(g: WeightedDigraph, emitters: list[int], optional: bool) -> Iterator[tuple[list[int], float, int]]:
    """Yield ``(parent, weight, arc_count)`` for every acyclic choice of
    out-arcs for ``emitters``. With ``optional`` a vertex may also emit
    nothing. ``parent`` is reused between yields; copy it to keep it.
    """
    n = g.n
    parent = [-1] * n
    choices = [(([-1] if optional else []) + _heads(g, q)) for q in emitters]

    def rec(i, weight, arcs):
        if i == len(emitters):
            yield parent, weight, arcs
            return
        q = emitters[i]
        for p in choices[i]:
            if p < 0:
                yield from rec(i + 1, weight, arcs)
            elif not _closes_cycle(parent, q, p):
                parent[q] = p
                yield from rec(i + 1, weight + float(g.w[q, p]), arcs + 1)
                parent[q] = -1

    yield from rec(0, 0.0, 0)


def enumerate_forests(g: WeightedDigraph, k: int | None = None, cap: int = DEFAULT_CAP) -> Iterator[EnteringForest]:
    """Every spanning entering forest of ``g`` (with ``k`` trees if given)."""
    _check_cap(g, cap)
    for parent, _, arcs in _assignments(g, list(range(g.n)), optional=True):
        if k is None or g.n - arcs == k:
            yield EnteringForest(np.array(parent, dtype=np.int64))


def count_forests_product(g: WeightedDigraph, k: int, cap: int = DEFAULT_CAP) -> int:
    """Independent count: scan the full product of parent choices."""
    _check_cap(g, cap)
    n = g.n
    opts = [[-1] + _heads(g, q) for q in range(n)]
    count = 0
    for parent in itertools.product(*opts):
        if sum(p >= 0 for p in parent) != n - k:
            continue
        ok = True
        for s in range(n):
            v, steps = s, 0
            while v >= 0 and steps <= n:
                v = parent[v]
                steps += 1
            if v >= 0:
                ok = False
                break
        count += ok
    return count


def phi_table(g: WeightedDigraph, cap: int = DEFAULT_CAP) -> dict[int, float]:
    """Minimum forest weight for every ``k`` in ``1..n`` (``inf`` if none)."""
    _check_cap(g, cap)
    best = {k: INF for k in range(1, g.n + 1)}
    for _, weight, arcs in _assignments(g, list(range(g.n)), optional=True):
        k = g.n - arcs
        if weight < best[k]:
            best[k] = weight
    return best


def phi_oracle(g: WeightedDigraph, k: int, cap: int = DEFAULT_CAP) -> float:
    if not 1 <= k <= g.n:
        raise ValueError(f"k must lie in 1..{g.n}")
    _check_cap(g, cap)
    if k == g.n:
        return 0.0
    return phi_table(g, cap)[k]


def oracle_min_arborescence(g: WeightedDigraph, root: int, cap: int = DEFAULT_CAP) -> float | None:
    """Minimum weight of a spanning entering tree rooted at ``root``."""
    _check_cap(g, cap)
    emitters = [q for q in range(g.n) if q != root]
    best = None
    for _, weight, _ in _assignments(g, emitters, optional=False):
        if best is None or weight < best:
            best = weight
    return best


def oracle_mu_circ(g: WeightedDigraph, S: Iterable[int], cap: int = DEFAULT_CAP) -> float:
    """Minimum weight of arcs from ``S`` over forests where all of ``S`` emits."""
    _check_cap(g, cap)
    best = INF
    for _, weight, _ in _assignments(g, sorted(set(S)), optional=False):
        best = min(best, weight)
    return best


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __str__(self):
        return "\n".join(f"{'PASS' if c.passed else 'FAIL'} {c.name} {c.detail}".rstrip() for c in self.checks)


def _forest_weight(g: WeightedDigraph, f: EnteringForest, S=None) -> float:
    verts = range(g.n) if S is None else S
    return float(sum(g.w[q, f.parent[q]] for q in verts if f.parent[q] >= 0))


def verify_cascade(g: WeightedDigraph, result, cap: int = DEFAULT_CAP) -> VerifyReport:
    """Check a cascade result against exhaustive enumeration.

    Covered: weight and tree count of every forest, halting exactness,
    relatedness of consecutive forests with the traced root, minimality of
    the chosen increment, and the per-step tree-weight identities.
    """
    _check_cap(g, cap)
    report = VerifyReport()
    phi = phi_table(g, cap)
    phi[g.n] = 0.0
    forests = dict(result.forests())

    for k in sorted(forests, reverse=True):
        f = forests[k]
        nroots = int((f.parent < 0).sum())
        weight = _forest_weight(g, f)
        report.add(f"roots[k={k}]", nroots == k, f"got {nroots}")
        report.add(f"weight[k={k}]", weight == phi[k] and result.phi[k] == weight,
                   f"forest {weight}, reported {result.phi[k]}, oracle {phi[k]}")

    k_min = result.k_min
    expect_halt = k_min == 1 or phi[k_min - 1] == INF
    report.add("halting", expect_halt and all(phi[k] < INF for k in forests),
               f"k_min={k_min}, oracle phi[k_min-1]={phi.get(k_min - 1, 'n/a')}")

    for rec in result.trace:
        before, after = forests[rec.k + 1], forests[rec.k]
        ok, y = is_descendant(before, after)
        report.add(f"related[k={rec.k}]", ok and y == rec.y, f"witness {y}, traced {rec.y}")

        tree_sets = trees(before)
        after_sets = trees(after)
        if rec.y not in tree_sets or rec.x not in after_sets:
            report.add(f"trace-roots[k={rec.k}]", False, f"y={rec.y} or x={rec.x} is not a root")
            continue
        Y = tree_sets[rec.y]
        incs = {q: oracle_mu_circ(g, V, cap) - _forest_weight(g, before, V) for q, V in tree_sets.items()}
        best = min(incs.values())
        report.add(f"min-increment[k={rec.k}]", rec.increment == best and incs[rec.y] == best,
                   f"chosen {rec.increment}, oracle min {best}")
        report.add(f"recurrence[k={rec.k}]",
                   _forest_weight(g, after) - _forest_weight(g, before) == rec.increment)
        report.add(f"exit-identity[k={rec.k}]", _forest_weight(g, after, Y) == rec.mu_circ_y,
                   f"{_forest_weight(g, after, Y)} vs {rec.mu_circ_y}")
        Z = after_sets[rec.x]
        report.add(f"tree-weight[k={rec.k}]", _forest_weight(g, after, Z) == rec.mu_bullet_x)
    return report
