"""Hot inner loops with a numba path and a pure numpy/python fallback.

Set ``PLUMGRAPH_NO_NUMBA=1`` to force the fallback path.  Both
implementations of every kernel stay importable (``*_numba`` /
``*_numpy``) so they can be compared directly.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("PLUMGRAPH_NO_NUMBA", "") not in ("1", "true", "yes")

if numba is not None:
    njit = numba.njit(cache=True, nogil=True)
else:  # pragma: no cover
    def njit(fn):
        return fn


# ---------------------------------------------------------------------------
# lattice BFS layer expansion

def expand_layer_numpy(states, gens, lo, hi, target, pinned, slack):
    """Neighbours of ``states`` (m x n) under every generator.

    Returns ``(new_states, parent_row, gen_index)`` for the candidates
    inside the box ``[lo, hi]`` whose pinned coordinates are within
    ``slack`` of ``target``.  Candidate order: state-major, generator-minor.
    """
    m, n = states.shape
    g = gens.shape[0]
    cand = (states[:, None, :] + gens[None, :, :]).reshape(m * g, n)
    ok = np.all((cand >= lo) & (cand <= hi), axis=1)
    if slack is not None:
        gap = np.abs(cand - target)
        ok &= np.all(~pinned | (gap <= slack), axis=1)
    rows = np.nonzero(ok)[0]
    return cand[rows], rows // g, rows % g


def _expand_layer_impl(states, gens, lo, hi, target, pinned, slack, use_slack):
    m, n = states.shape
    g = gens.shape[0]
    out = np.empty((m * g, n), dtype=np.int64)
    parent = np.empty(m * g, dtype=np.int64)
    gidx = np.empty(m * g, dtype=np.int64)
    cnt = 0
    for r in range(m):
        for k in range(g):
            good = True
            for i in range(n):
                x = states[r, i] + gens[k, i]
                if x < lo[i] or x > hi[i]:
                    good = False
                    break
                if use_slack and pinned[i]:
                    dlt = x - target[i]
                    if dlt < 0:
                        dlt = -dlt
                    if dlt > slack:
                        good = False
                        break
                out[cnt, i] = x
            if good:
                parent[cnt] = r
                gidx[cnt] = k
                cnt += 1
    return out[:cnt], parent[:cnt], gidx[:cnt]


if numba is not None:
    _expand_layer_jit = njit(_expand_layer_impl)

    def expand_layer_numba(states, gens, lo, hi, target, pinned, slack):
        use = slack is not None
        return _expand_layer_jit(states, gens, lo, hi, target, pinned,
                                 slack if use else 0, use)
else:  # pragma: no cover
    expand_layer_numba = None


# ---------------------------------------------------------------------------
# bracket state sum: loop count of every smoothing state

def _state_loops_impl(n_ends, fixed, a_pairs, b_pairs):
    c = a_pairs.shape[0]
    total = 1 << c
    loops = np.empty(total, dtype=np.int64)
    parent = np.empty(n_ends, dtype=np.int64)
    for s in range(total):
        for i in range(n_ends):
            parent[i] = i
        comps = n_ends
        for r in range(fixed.shape[0]):
            x = fixed[r, 0]
            while parent[x] != x:
                x = parent[x]
            y = fixed[r, 1]
            while parent[y] != y:
                y = parent[y]
            if x != y:
                parent[x] = y
                comps -= 1
        for j in range(c):
            pairs = a_pairs if ((s >> j) & 1) == 0 else b_pairs
            for t in range(2):
                x = pairs[j, t, 0]
                while parent[x] != x:
                    x = parent[x]
                y = pairs[j, t, 1]
                while parent[y] != y:
                    y = parent[y]
                if x != y:
                    parent[x] = y
                    comps -= 1
        loops[s] = comps
    return loops


def state_loops_python(n_ends, fixed, a_pairs, b_pairs):
    """Loop count per state; bit j set means crossing j takes its B-smoothing."""
    return _state_loops_impl(int(n_ends), np.asarray(fixed), np.asarray(a_pairs),
                             np.asarray(b_pairs))


if numba is not None:
    state_loops_numba = njit(_state_loops_impl)
else:  # pragma: no cover
    state_loops_numba = None


expand_layer = expand_layer_numba if USE_NUMBA else expand_layer_numpy
state_loops = state_loops_numba if USE_NUMBA else state_loops_python
