import math

import numpy as np
import pytest
from hypothesis import given, settings

from relforest import (
    EnteringForest,
    Status,
    build_from_arcs,
    init,
    is_descendant,
    roots,
    run,
    step,
    validate,
)
from relforest.cascade import IncrementList
from relforest.oracle import phi_table

from .strategies import digraphs


def test_increment_list_order_and_removal():
    d = IncrementList()
    for inc, root in [(3, 5), (1, 7), (3, 2), (-2, 9)]:
        d.insert(inc, root)
    assert list(d) == [(-2, 9), (1, 7), (3, 2), (3, 5)]
    d.discard(7)
    d.discard(42)
    assert d.head() == (-2, 9) and 7 not in d and len(d) == 3
    with pytest.raises(KeyError):
        d.insert(0, 9)


def test_init_empty_graph():
    state = init(build_from_arcs(3, []))
    assert state.status is Status.EMPTY
    result = run(build_from_arcs(3, []))
    assert result.phi == {3: 0} and result.k_min == 3
    assert result.forest(3) == EnteringForest.empty(3)


def test_init_g3(g3):
    state = init(g3)
    assert state.last.y == 0 and state.x == 1
    assert state.forest().arcs() == {0: 1}
    assert state.records[1].mu_bullet == 1
    # the entries of y=0 and x=1 are gone, only root 2 stays listed
    assert list(state.delta) == [(3, 2)]


def test_init_uniform_tie_break():
    c = 4.0
    g = build_from_arcs(5, [(q, p, c) for q in range(5) for p in range(5)])
    state = init(g)
    assert state.last.y == 0
    assert state.weight() == c


def test_step_g3(g3):
    state = init(g3)
    assert step(state) is Status.FINISHED
    rec = state.last
    assert (rec.y, rec.x, rec.D, rec.exit_arc) == (2, 1, (2,), (2, 0))
    assert rec.increment == 3
    assert state.forest().arcs() == {0: 1, 2: 0}
    assert state.weight() == 4


def test_step_g3_delta_contents(g3):
    # before the merge of step 2 the list holds root 2 (3) and root 1 (5 - 1)
    state = init(g3)
    from relforest.minima import mu_circ

    res = mu_circ(g3, state.members[1])
    assert res.value == 5
    state._set_exit(1, res.value, res.H_arcs)
    assert list(state.delta) == [(3, 2), (4, 1)]


def test_run_g3(g3):
    result = run(g3)
    assert result.phi == {3: 0, 2: 1, 1: 4}
    assert result.status is Status.FINISHED
    assert result.forest(2).arcs() == {0: 1}
    assert result.forest(1).arcs() == {0: 1, 2: 0}
    assert roots(result.forest(1)) == {result.trace[-1].x}


def test_two_components_halt():
    g = build_from_arcs(4, [(0, 1, 2), (1, 0, 5), (2, 3, 1), (3, 2, 7)])
    result = run(g)
    assert result.status is Status.HALTED
    assert result.k_min == 2
    assert result.phi == {4: 0, 3: 1, 2: 3}
    assert math.isinf(phi_table(g)[1])


def test_single_vertex():
    result = run(build_from_arcs(1, []))
    assert result.phi == {1: 0} and result.status is Status.FINISHED


def test_single_arc():
    result = run(build_from_arcs(3, [(0, 1, 5)]))
    assert result.k_min == 2 and result.phi[2] == 5


def test_deltas_only_matches_snapshots(g3):
    a = run(g3)
    b = run(g3, deltas_only=True)
    assert b.snapshots is None
    assert [f for _, f in a.forests()] == [f for _, f in b.forests()]
    for k in a.ks:
        assert a.forest(k) == b.forest(k)
    with pytest.raises(KeyError):
        b.forest(0)


def test_negative_weights():
    g = build_from_arcs(3, [(0, 1, -5), (1, 0, -5), (2, 0, -1), (1, 2, 3)])
    result = run(g)
    assert result.phi == {k: v for k, v in phi_table(g).items()} | {3: 0}


def test_numpy_backend_same_result(g3):
    rng = np.random.default_rng(11)
    from .strategies import random_digraph

    for _ in range(20):
        g = random_digraph(rng, int(rng.integers(2, 30)), 0.5)
        a = run(g, backend="numpy")
        b = run(g)
        assert a.phi == b.phi
        assert [f for _, f in a.forests()] == [f for _, f in b.forests()]


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=6))
def test_cascade_properties(g):
    result = run(g)
    oracle = phi_table(g)
    oracle[g.n] = 0.0
    forests = dict(result.forests())
    for k, f in forests.items():
        assert validate(f, g) is None
        assert len(roots(f)) == k
        assert f.weight(g) == oracle[k] == result.phi[k]
    if result.k_min > 1:
        assert math.isinf(oracle[result.k_min - 1])
    for rec in result.trace:
        ok, y = is_descendant(forests[rec.k + 1], forests[rec.k])
        assert ok and y == rec.y
        assert result.phi[rec.k] - result.phi[rec.k + 1] == rec.increment


def test_closed_tree_is_skipped_not_halted():
    # {0,1} closes first and has no exit; the 3-cycle must still be merged
    g = build_from_arcs(5, [(0, 1, 1), (1, 0, 1), (2, 3, 5), (3, 4, 5), (4, 2, 5)])
    state = init(g)
    assert state.x == 1
    assert step(state) is Status.PROGRESSED
    assert state.last.y == 2
    result = run(g)
    assert result.status is Status.HALTED
    assert result.phi == {5: 0, 4: 1, 3: 6, 2: 11}
    assert result.phi[2] == phi_table(g)[2]
