import numpy as np
from hypothesis import strategies as st

from relforest import WeightedDigraph


def random_digraph(rng, n, density, lo=-9, hi=9):
    mask = rng.random((n, n)) < density
    weights = rng.integers(lo, hi + 1, size=(n, n)).astype(np.float64)
    return WeightedDigraph.from_matrix(np.where(mask, weights, np.inf))


@st.composite
def digraphs(draw, min_n=1, max_n=6, lo=-9, hi=9):
    n = draw(st.integers(min_n, max_n))
    cells = draw(st.lists(st.one_of(st.none(), st.integers(lo, hi)), min_size=n * n, max_size=n * n))
    w = np.array([np.inf if c is None else float(c) for c in cells]).reshape(n, n)
    return WeightedDigraph.from_matrix(w)
