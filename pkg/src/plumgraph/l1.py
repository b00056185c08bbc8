"""Exact minimum-L1 integer representations by layered lattice BFS.

States are points of Z^dim reached from the origin by steps +-generator;
the BFS layer of a point is the least sum |phi| needed to reach it.
Pruning is admissible: a step moves any coordinate by at most
``max |generator entry|``, so points too far from the target for the
remaining budget are dropped.  Only the last two layers are kept for
duplicate detection (generators are sign-symmetric), plus parent links
for witness reconstruction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .moves import EQ_EQ, MoveSet, move_set, normalize

EXACT = "exact"
UNRESOLVED = "unresolved"

DEFAULT_MAX_STATES = 20_000_000
CHUNK = 200_000


@dataclass
class L1Problem:
    generators: List[Tuple[int, ...]]
    target: Tuple[int, ...]
    pinned: Optional[int] = None   # only the first ``pinned`` coordinates constrained

    def __post_init__(self):
        self.generators = [tuple(int(x) for x in g) for g in self.generators]
        self.target = tuple(int(x) for x in self.target)
        n = len(self.target)
        if any(len(g) != n for g in self.generators):
            raise ValueError("generator length differs from target length")
        if self.pinned is not None and not 0 <= self.pinned <= n:
            raise ValueError("pinned prefix longer than the dimension")

    @property
    def dim(self) -> int:
        return len(self.target)


@dataclass
class L1Solution:
    status: str
    cost: Optional[int]
    phi: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    achieved: Optional[Tuple[int, ...]] = None
    states: int = 0
    budget: int = 0

    def to_dict(self) -> dict:
        return {"status": self.status, "cost": self.cost,
                "phi": [[list(g), c] for g, c in sorted(self.phi.items()) if c],
                "achieved": None if self.achieved is None else list(self.achieved),
                "states": self.states, "budget": self.budget}


@dataclass
class _Search:
    status: str
    cost: Optional[int]
    layers: list
    hits: Optional[np.ndarray]
    states: int


def _bfs(gens: np.ndarray, target: np.ndarray, pinned: np.ndarray, budget: int,
         max_states: int, keep_parents: bool) -> _Search:
    dim = gens.shape[1]
    step = int(np.abs(gens).max()) if gens.size else 0
    reach = step * budget
    lo = np.full(dim, -reach, dtype=np.int64)
    hi = np.full(dim, reach, dtype=np.int64)
    lo[pinned] = np.maximum(lo[pinned], target[pinned] - reach)
    hi[pinned] = np.minimum(hi[pinned], target[pinned] + reach)
    if np.any(lo > hi) or np.any(lo > 0) or np.any(hi < 0):
        return _Search(UNRESOLVED, None, [], None, 1)
    width = hi - lo + 1
    if float(np.prod(width.astype(float))) >= 2.0 ** 62:
        raise OverflowError("search box too large for 64-bit keys")
    stride = np.ones(dim, dtype=np.int64)
    for i in range(1, dim):
        stride[i] = stride[i - 1] * width[i - 1]

    def keys_of(s):
        return (s - lo) @ stride

    cur = np.zeros((1, dim), dtype=np.int64)
    cur_keys = keys_of(cur)
    prev_keys = np.empty(0, dtype=np.int64)
    layers = [(cur, None, None)]
    total = 1
    for depth in range(budget + 1):
        hit = np.all(cur[:, pinned] == target[pinned], axis=1)
        if hit.any():
            return _Search(EXACT, depth, layers, np.nonzero(hit)[0], total)
        if depth == budget:
            break
        slack = step * (budget - depth - 1)
        parts = []
        for s in range(0, cur.shape[0], CHUNK):
            block = cur[s:s + CHUNK]
            st, par, gi = _kernels.expand_layer(block, gens, lo, hi, target,
                                                pinned, slack)
            parts.append((st, par + s, gi))
        st = np.concatenate([p[0] for p in parts])
        par = np.concatenate([p[1] for p in parts])
        gi = np.concatenate([p[2] for p in parts])
        k = keys_of(st) if st.size else np.empty(0, dtype=np.int64)
        uk, first = np.unique(k, return_index=True)
        fresh = ~(_member(uk, cur_keys) | _member(uk, prev_keys))
        sel = first[fresh]
        nxt = st[sel]
        total += nxt.shape[0]
        if total > max_states:
            return _Search(UNRESOLVED, None, layers, None, total)
        layers.append((nxt, par[sel] if keep_parents else None,
                       gi[sel] if keep_parents else None))
        prev_keys, cur_keys = cur_keys, uk[fresh]
        cur = nxt
        if cur.shape[0] == 0:
            break
    return _Search(UNRESOLVED, None, layers, None, total)


def _member(values, pool):
    """Membership test against a sorted key array."""
    if pool.size == 0 or values.size == 0:
        return np.zeros(values.shape[0], dtype=bool)
    idx = np.searchsorted(pool, values)
    idx[idx == pool.size] = 0
    return pool[idx] == values


def _signed(generators):
    rows = []
    for g in generators:
        rows.append(g)
        rows.append(tuple(-x for x in g))
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1)


def _budgets(start: int, stop: int):
    b = max(1, start)
    while b < stop:
        yield b
        b *= 2
    yield stop


def min_l1(problem: L1Problem, max_cost: int = 24,
           max_states: int = DEFAULT_MAX_STATES) -> L1Solution:
    """Least sum |phi| with sum phi(v) v == target (pinned coordinates only
    when ``problem.pinned`` is set).  Budget overflow gives ``unresolved``."""
    gens = list(dict.fromkeys(problem.generators))
    gens = [g for g in gens if any(g)]
    dim = problem.dim
    target = np.array(problem.target, dtype=np.int64)
    pinned = np.zeros(dim, dtype=bool)
    pinned[: dim if problem.pinned is None else problem.pinned] = True
    if not pinned.any() or not np.any(target[pinned]):
        return L1Solution(EXACT, 0, {g: 0 for g in gens}, (0,) * dim, 1, 0)
    if not gens:
        return L1Solution(UNRESOLVED, None, budget=max_cost)
    signed = _signed(gens)
    step = int(np.abs(signed).max())
    first = math.ceil(int(np.abs(target[pinned]).max()) / step)
    states = 0
    search = None
    for budget in _budgets(first, max_cost):
        search = _bfs(signed, target, pinned, budget, max_states, True)
        states += search.states
        if search.status == EXACT or search.states > max_states:
            break
    if search is None or search.status != EXACT:
        return L1Solution(UNRESOLVED, None, states=states, budget=max_cost)
    phi = {g: 0 for g in gens}
    row = int(search.hits[0])
    for depth in range(search.cost, 0, -1):
        _, par, gi = search.layers[depth]
        k = int(gi[row])
        phi[gens[k // 2]] += 1 if k % 2 == 0 else -1
        row = int(par[row])
    achieved = tuple(int(x) for x in search.layers[search.cost][0][int(search.hits[0])])
    sol = L1Solution(EXACT, search.cost, phi, achieved, states, budget)
    assert sum(abs(c) for c in phi.values()) == search.cost
    return sol


@dataclass
class PrefixResult:
    n: int
    k: int
    status: str
    cost: Optional[int]
    values: Optional[List[int]]     # achievable coordinate k+2 at minimal cost
    states: int = 0

    def to_dict(self):
        return {"n": self.n, "k": self.k, "status": self.status, "cost": self.cost,
                "values": self.values, "states": self.states}


def prefix_min_l1(generators: Sequence[Sequence[int]], n: int, k: int,
                  max_cost: Optional[int] = None,
                  max_states: int = DEFAULT_MAX_STATES) -> PrefixResult:
    """Least sum |phi| whose sum starts (2n+1, 0, ..., 0) (k pinned entries).

    The search runs in the projection onto coordinates 1..k (and k+2 when
    k <= n-2); the value set is read off the whole final layer.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    coords = list(range(k)) + ([k + 1] if k + 2 <= n else [])
    proj = []
    for g in generators:
        p = tuple(int(g[c]) for c in coords)
        if any(p) and p not in proj:
            proj.append(p)
    target = np.zeros(len(coords), dtype=np.int64)
    target[0] = 2 * n + 1
    pinned = np.zeros(len(coords), dtype=bool)
    pinned[:k] = True
    budget = 2 * n if max_cost is None else max_cost
    search = _bfs(_signed(proj), target, pinned, budget, max_states, False)
    if search.status != EXACT:
        return PrefixResult(n, k, UNRESOLVED, None, None, search.states)
    values = None
    if k + 2 <= n:
        final = search.layers[search.cost][0][search.hits]
        values = sorted({int(x) for x in final[:, -1]})
    return PrefixResult(n, k, EXACT, search.cost, values, search.states)


# ---------------------------------------------------------------------------

def unknotting_sequence(n: int) -> List[Tuple[int, ...]]:
    """n copies of (2,0,...,0), then the alternating b-chain ending in +-q."""
    seq = []
    a1 = tuple([2] + [0] * (n - 1))
    seq.extend([a1] * n)
    for j in range(1, n):
        b = [0] * n
        b[j - 1] = b[j] = 1
        s = (-1) ** (j - 1)
        seq.append(tuple(s * x for x in b))
    q = [0] * n
    q[-1] = (-1) ** (n - 1)
    seq.append(tuple(q))
    return seq


def verify_unknotting_number(n: int, certify_lower: Optional[bool] = None,
                             max_states: int = DEFAULT_MAX_STATES,
                             moves: Optional[MoveSet] = None) -> dict:
    """Certified lower bound 2n (exhaustive) and the explicit 2n-term sequence."""
    if certify_lower is None:
        certify_lower = n <= 4
    ms = moves or move_set(n)
    target = tuple([2 * n + 1] + [0] * (n - 1))
    report = {"n": n, "target": list(target)}
    if certify_lower:
        sol = min_l1(L1Problem(ms.vectors, target), max_cost=2 * n, max_states=max_states)
        report["lower"] = sol.cost
        report["lowerStatus"] = sol.status
        report["witness"] = sol.to_dict()["phi"]
        report["states"] = sol.states
    else:
        report["lower"] = None
        report["lowerStatus"] = "skipped"
    seq = unknotting_sequence(n)
    eqeq = {v for v, pairs in ms.realized_by.items() if any(p.kind == EQ_EQ for p in pairs)}
    realized = [normalize(t) in eqeq for t in seq]
    total = tuple(sum(col) for col in zip(*seq))
    report["upper"] = len(seq)
    report["sequence"] = [list(t) for t in seq]
    report["sequenceSum"] = list(total)
    report["sequenceRealized"] = all(realized)
    upper_ok = len(seq) == 2 * n and all(realized) and total == target
    lower_ok = (not certify_lower) or (sol.status == EXACT and sol.cost == 2 * n)
    report["upperOk"] = upper_ok
    report["ok"] = upper_ok and lower_ok
    return report


def verify_subclaims(n: int, max_states: int = DEFAULT_MAX_STATES) -> dict:
    ms = move_set(n)
    rows = []
    ok = True
    for k in range(1, n + 1):
        r = prefix_min_l1(ms.vectors, n, k, max_states=max_states)
        good = r.status == EXACT and r.cost == n + k
        if r.values is not None:
            allowed = {0, 1} if k == 1 else {-1, 0, 1}
            good &= set(r.values) <= allowed
        ok &= good
        row = r.to_dict()
        row["ok"] = good
        rows.append(row)
    return {"n": n, "ok": ok, "rows": rows}
