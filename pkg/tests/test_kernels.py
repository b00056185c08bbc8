import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plumgraph import _kernels

needs_numba = pytest.mark.skipif(_kernels.expand_layer_numba is None, reason="numba missing")


def _case(seed, dim=3, m=40, g=5):
    rng = np.random.default_rng(seed)
    states = rng.integers(-4, 5, size=(m, dim)).astype(np.int64)
    gens = rng.integers(-2, 3, size=(g, dim)).astype(np.int64)
    lo = np.full(dim, -5, dtype=np.int64)
    hi = np.full(dim, 5, dtype=np.int64)
    target = rng.integers(-3, 4, size=dim).astype(np.int64)
    pinned = rng.random(dim) < 0.6
    return states, gens, lo, hi, target, pinned


@needs_numba
@given(st.integers(0, 2**32 - 1), st.sampled_from([None, 0, 2, 4]))
@settings(max_examples=40, deadline=None)
def test_expand_layer_paths_agree(seed, slack):
    args = _case(seed)
    a = _kernels.expand_layer_numpy(*args, slack)
    b = _kernels.expand_layer_numba(*args, slack)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


def test_expand_layer_respects_box():
    states, gens, lo, hi, target, pinned = _case(3)
    out, par, gi = _kernels.expand_layer_numpy(states, gens, lo, hi, target, pinned, 1)
    assert ((out >= lo) & (out <= hi)).all()
    assert np.array_equal(out, states[par] + gens[gi])
    gap = np.abs(out - target)[:, pinned]
    assert (gap <= 1).all()


def test_env_flag_selects_fallback():
    code = ("from plumgraph import _kernels as k; "
            "print(k.USE_NUMBA, k.expand_layer is k.expand_layer_numpy)")
    env = dict(os.environ, PLUMGRAPH_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out == ["False", "True"]


def test_fallback_gives_same_lower_bounds():
    code = ("from plumgraph.l1 import verify_unknotting_number as v; "
            "print([v(n)['lower'] for n in (1, 2, 3)])")
    env = dict(os.environ, PLUMGRAPH_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.strip()
    assert out == "[2, 4, 6]"
