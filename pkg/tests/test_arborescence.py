import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relforest import HAVE_NUMBA, EnteringForest, build_from_arcs, min_in_arborescence, roots, validate
from relforest.oracle import oracle_min_arborescence

from .strategies import digraphs, random_digraph

BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def test_single_vertex(backend):
    tree = min_in_arborescence(build_from_arcs(1, []), 0, backend=backend)
    assert tree.weight == 0 and tree.arcs() == {}


def test_g3_root1(g3, backend):
    tree = min_in_arborescence(g3, 1, backend=backend)
    assert tree.weight == 4
    assert tree.arcs() == {0: 1, 2: 0}


@pytest.mark.parametrize("root, weight", [(0, 5), (1, 4), (2, 5)])
def test_g3_all_roots(g3, backend, root, weight):
    assert min_in_arborescence(g3, root, backend=backend).weight == weight


def test_infeasible(backend):
    g = build_from_arcs(2, [(0, 1, 1)])
    assert min_in_arborescence(g, 0, backend=backend) is None
    assert min_in_arborescence(g, 1, backend=backend).weight == 1


def test_nested_cycles(backend):
    # two cheap 2-cycles joined by a cheap 3-cycle of supernodes; only
    # expensive arcs reach the root 6
    arcs = [
        (0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1), (4, 5, 1), (5, 4, 1),
        (1, 2, 2), (3, 4, 2), (5, 0, 2),
        (0, 6, 10), (2, 6, 11), (4, 6, 9),
    ]
    g = build_from_arcs(7, arcs)
    tree = min_in_arborescence(g, 6, backend=backend)
    assert tree.weight == oracle_min_arborescence(g, 6) == 9 + 3 * 1 + 2 * 2
    f = EnteringForest(tree.parent)
    assert validate(f, g) is None and roots(f) == {6}


def test_unknown_backend(g3):
    with pytest.raises(ValueError):
        min_in_arborescence(g3, 0, backend="cuda")


def test_accepts_raw_table():
    w = np.array([[np.inf, 2.0], [np.inf, np.inf]])
    assert min_in_arborescence(w, 1).weight == 2


@settings(max_examples=300, deadline=None)
@given(digraphs(max_n=6), st.data())
def test_matches_oracle(g, data):
    root = data.draw(st.integers(0, g.n - 1))
    expected = oracle_min_arborescence(g, root)
    for backend in BACKENDS:
        tree = min_in_arborescence(g, root, backend=backend)
        if expected is None:
            assert tree is None
            continue
        assert tree.weight == expected
        f = EnteringForest(tree.parent)
        assert validate(f, g) is None
        assert roots(f) == {root}


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")
def test_backends_agree_exactly():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = int(rng.integers(2, 40))
        g = random_digraph(rng, n, rng.choice([0.2, 0.5, 1.0]), lo=-3, hi=3)
        root = int(rng.integers(n))
        a = min_in_arborescence(g, root, backend="numba")
        b = min_in_arborescence(g, root, backend="numpy")
        assert (a is None) == (b is None)
        if a is not None:
            np.testing.assert_array_equal(a.parent, b.parent)
            assert a.weight == b.weight


def test_env_flag_forces_numpy():
    import os
    import subprocess
    import sys

    env = dict(os.environ, RELFOREST_DISABLE_NUMBA="1")
    code = (
        "import relforest, relforest.arborescence as a\n"
        "assert relforest.DEFAULT_BACKEND == 'numpy' and not relforest.HAVE_NUMBA\n"
        "try:\n"
        "    a.min_in_arborescence([[0, 1], [1, 0]], 0, backend='numba')\n"
        "except RuntimeError:\n"
        "    print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "ok"
