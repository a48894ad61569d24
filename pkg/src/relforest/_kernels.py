"""Dense Chu-Liu-Edmonds kernels for entering (in-)arborescences.

Both kernels run the same path-growing contraction and must return
identical parent arrays, ties included:

* ``cle_loops`` is written as explicit loops and is compiled with numba
  when it is available;
* ``cle_numpy`` vectorises every row scan and every contraction with numpy.

The weight table stays ``n x n``: a contracted cycle reuses the matrix slot
of its first path member, while the contraction history lives in a separate
id space of at most ``2n - 1`` supernode ids. Each supernode selects its
cheapest outgoing arc exactly once and each contraction touches
``O(|cycle| * n)`` cells, so a call costs ``O(n^2)``.

Return value of both kernels: ``(ok, parent)`` where ``parent[root] == -1``.
When ``ok`` is false no spanning entering tree rooted at ``root`` exists and
``parent`` is meaningless.
"""

import numpy as np

from ._jit import njit


@njit(cache=False)
def cle_loops(w, root):
    n = w.shape[0]
    cap = 2 * n
    inf = np.inf
    W = w.copy()
    ot = np.empty((n, n), dtype=np.int32)
    oh = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        for b in range(n):
            ot[a, b] = a
            oh[a, b] = b

    # per matrix slot
    alive = np.ones(n, dtype=np.bool_)
    final = np.zeros(n, dtype=np.bool_)
    on_path = np.zeros(n, dtype=np.bool_)
    id_of = np.arange(n)
    final[root] = True
    path = np.empty(n, dtype=np.int64)
    row_w = np.empty(n)
    row_t = np.empty(n, dtype=np.int32)
    row_h = np.empty(n, dtype=np.int32)
    # per supernode id
    sel_w = np.zeros(cap)
    sel_t = np.full(cap, -1, dtype=np.int64)
    sel_h = np.full(cap, -1, dtype=np.int64)
    absorbed_by = np.full(cap, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    nxt = n

    for s in range(n):
        if final[s] or not alive[s]:
            continue
        path[0] = s
        plen = 1
        on_path[s] = True
        while True:
            a = path[plen - 1]
            best = inf
            bi = -1
            for b in range(n):
                if alive[b] and b != a and W[a, b] < best:
                    best = W[a, b]
                    bi = b
            if bi < 0:
                return False, parent
            ida = id_of[a]
            sel_w[ida] = best
            sel_t[ida] = ot[a, bi]
            sel_h[ida] = oh[a, bi]
            if final[bi]:
                for i in range(plen):
                    final[path[i]] = True
                    on_path[path[i]] = False
                break
            if not on_path[bi]:
                path[plen] = bi
                plen += 1
                on_path[bi] = True
                continue

            # cycle path[j:plen] closes at bi; contract it into slot c
            j = plen - 1
            while path[j] != bi:
                j -= 1
            c = path[j]
            new_id = nxt
            nxt += 1
            for i in range(j, plen):
                v = path[i]
                alive[v] = False
                on_path[v] = False
                absorbed_by[id_of[v]] = new_id
            # c = path[j] is visited first, so column c is read before it is overwritten
            for b in range(n):
                if not alive[b]:
                    continue
                out_best = inf
                in_best = inf
                for i in range(j, plen):
                    v = path[i]
                    val = W[v, b] - sel_w[id_of[v]]
                    if val < out_best:
                        out_best = val
                        row_t[b] = ot[v, b]
                        row_h[b] = oh[v, b]
                    if W[b, v] < in_best:
                        in_best = W[b, v]
                        ot[b, c] = ot[b, v]
                        oh[b, c] = oh[b, v]
                row_w[b] = out_best
                W[b, c] = in_best
            for b in range(n):
                if alive[b]:
                    W[c, b] = row_w[b]
                    ot[c, b] = row_t[b]
                    oh[c, b] = row_h[b]
            W[c, c] = inf
            alive[c] = True
            id_of[c] = new_id
            plen = j
            path[plen] = c
            plen += 1
            on_path[c] = True

    # unwind: every supernode is entered by exactly one arc of the result
    arc_t = np.full(cap, -1, dtype=np.int64)
    arc_h = np.full(cap, -1, dtype=np.int64)
    for a in range(n):
        if alive[a] and a != root:
            arc_t[id_of[a]] = sel_t[id_of[a]]
            arc_h[id_of[a]] = sel_h[id_of[a]]
    for c in range(nxt - 1, n - 1, -1):
        m = arc_t[c]
        while absorbed_by[m] != c:
            m = absorbed_by[m]
        for v in range(c):
            if absorbed_by[v] == c:
                if v == m:
                    arc_t[v] = arc_t[c]
                    arc_h[v] = arc_h[c]
                else:
                    arc_t[v] = sel_t[v]
                    arc_h[v] = sel_h[v]
    for i in range(n):
        if i != root:
            parent[i] = arc_h[i]
    return True, parent


def cle_numpy(w, root):
    n = w.shape[0]
    cap = 2 * n
    W = w.copy()
    ot = np.repeat(np.arange(n, dtype=np.int32)[:, None], n, axis=1)
    oh = np.repeat(np.arange(n, dtype=np.int32)[None, :], n, axis=0)

    alive = np.ones(n, dtype=bool)
    final = np.zeros(n, dtype=bool)
    final[root] = True
    on_path = np.zeros(n, dtype=bool)
    id_of = np.arange(n)
    sel_w = np.zeros(cap)
    sel_t = np.full(cap, -1, dtype=np.int64)
    sel_h = np.full(cap, -1, dtype=np.int64)
    absorbed_by = np.full(cap, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    cols = np.arange(n)
    nxt = n

    for s in range(n):
        if final[s] or not alive[s]:
            continue
        path = [s]
        on_path[s] = True
        while True:
            a = path[-1]
            row = np.where(alive, W[a], np.inf)
            row[a] = np.inf
            bi = int(np.argmin(row))
            best = row[bi]
            if not best < np.inf:
                return False, parent
            ida = id_of[a]
            sel_w[ida] = best
            sel_t[ida] = ot[a, bi]
            sel_h[ida] = oh[a, bi]
            if final[bi]:
                final[path] = True
                on_path[path] = False
                break
            if not on_path[bi]:
                path.append(bi)
                on_path[bi] = True
                continue

            j = path.index(bi)
            members = np.asarray(path[j:], dtype=np.int64)
            c = path[j]
            new_id = nxt
            nxt += 1
            alive[members] = False
            on_path[members] = False
            absorbed_by[id_of[members]] = new_id

            out = W[members] - sel_w[id_of[members]][:, None]
            k = np.argmin(out, axis=0)
            new_w = out[k, cols]
            new_t = ot[members[k], cols]
            new_h = oh[members[k], cols]

            inc = W[:, members]
            k = np.argmin(inc, axis=1)
            W[:, c] = inc[cols, k]
            ot[:, c] = ot[cols, members[k]]
            oh[:, c] = oh[cols, members[k]]
            W[c] = new_w
            ot[c] = new_t
            oh[c] = new_h

            W[c, ~alive] = np.inf
            W[~alive, c] = np.inf
            alive[c] = True
            id_of[c] = new_id
            del path[j:]
            path.append(c)
            on_path[c] = True

    arc_t = np.full(cap, -1, dtype=np.int64)
    arc_h = np.full(cap, -1, dtype=np.int64)
    top = np.flatnonzero(alive)
    top = id_of[top[top != root]]
    arc_t[top] = sel_t[top]
    arc_h[top] = sel_h[top]
    for c in range(nxt - 1, n - 1, -1):
        m = arc_t[c]
        while absorbed_by[m] != c:
            m = absorbed_by[m]
        members = np.flatnonzero(absorbed_by[:c] == c)
        arc_t[members] = sel_t[members]
        arc_h[members] = sel_h[members]
        arc_t[m] = arc_t[c]
        arc_h[m] = arc_h[c]
    parent[:] = arc_h[:n]
    parent[root] = -1
    return True, parent
