"""Related minimum-weight spanning entering forests of weighted digraphs."""

from ._jit import DEFAULT_BACKEND, HAVE_NUMBA
from .arborescence import Arborescence, min_in_arborescence
from .cascade import CascadeInvariantError, CascadeResult, Status, init, run, step
from .digraph import INF, GraphError, WeightedDigraph, arcset_weight, build_from_arcs, min_out_arc
from .forest import (
    EnteringForest,
    RootIndex,
    component_with_exit,
    is_descendant,
    is_pseudo_descendant,
    replace_arcs,
    roots,
    tree_vertices,
    validate,
)
from .minima import MuCircResult, mu_circ

__version__ = "0.1.0"
