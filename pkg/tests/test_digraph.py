import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relforest import GraphError, WeightedDigraph, arcset_weight, build_from_arcs, min_out_arc

from .strategies import digraphs


def test_empty_graph_all_infinite():
    g = build_from_arcs(2, [])
    assert np.isinf(g.w).all()


def test_parallel_arcs_keep_minimum():
    g = build_from_arcs(2, [(0, 1, 5), (0, 1, 3)])
    assert g.weight(0, 1) == 3


def test_self_loops_dropped():
    g = build_from_arcs(2, [(0, 0, -4), (0, 1, 2)])
    assert math.isinf(g.weight(0, 0))
    assert min_out_arc(g, 0) == (1, 2)


@pytest.mark.parametrize(
    "arcs",
    [[(0, 2, 1)], [(-1, 0, 1)], [(0, 1, float("nan"))], [(0, 1, float("inf"))]],
)
def test_bad_arcs_rejected(arcs):
    with pytest.raises(GraphError):
        build_from_arcs(2, arcs)


def test_from_matrix_rejects_nan():
    with pytest.raises(GraphError):
        WeightedDigraph.from_matrix([[0, np.nan], [1, 0]])


def test_weights_read_only(g3):
    with pytest.raises(ValueError):
        g3.w[0, 1] = 7


def test_min_out_arc(g3):
    assert min_out_arc(g3, 0) == (1, 1)
    assert min_out_arc(g3, 1, restrict_heads={2}) == (2, 4)
    assert min_out_arc(g3, 1) == (0, 2)
    assert min_out_arc(build_from_arcs(3, []), 0) is None
    assert min_out_arc(g3, 0, restrict_heads={0}) is None


def test_min_out_arc_tie_smallest_head():
    g = build_from_arcs(4, [(0, 3, 2), (0, 1, 2), (0, 2, 2)])
    assert min_out_arc(g, 0) == (1, 2)


def test_arcset_weight(g3):
    arcs = {0: 1, 2: 0}
    assert arcset_weight(g3, arcs, {0, 2}) == 4
    assert arcset_weight(g3, arcs, set()) == 0
    assert arcset_weight(g3, arcs, {2}) == 3
    assert arcset_weight(g3, arcs) == 4


@given(digraphs(min_n=2), st.data())
def test_arcset_weight_additive(g, data):
    arcs = {}
    for q in range(g.n):
        heads = [p for p in range(g.n) if np.isfinite(g.w[q, p])]
        if heads and data.draw(st.booleans()):
            arcs[q] = data.draw(st.sampled_from(heads))
    split = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    S = {v for v in range(g.n) if split[v] == 0}
    T = {v for v in range(g.n) if split[v] == 1}
    assert arcset_weight(g, arcs, S) + arcset_weight(g, arcs, T) == arcset_weight(g, arcs, S | T)


@given(digraphs())
def test_min_out_arc_never_loop_or_inf(g):
    for q in range(g.n):
        got = min_out_arc(g, q)
        if got is None:
            assert np.isinf(g.w[q]).all()
        else:
            p, w = got
            assert p != q and math.isfinite(w)
            assert w == g.w[q].min()
