"""The ten acceptance checks, shared by ``selftest`` and the test suite.

Each ``criterion_k`` returns a :class:`CriterionResult`; ``run_all`` runs
them in order.  Time limits are part of the pass condition.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List

from .bounds import (apply_descending, branch_indices, descending_audit,
                     descending_change_set, theorem2_constants, trivializable_bound)
from .diagram import (change_crossings, cube_knotted_projection, diagram_from_graph,
                      random_finger_moves, resolutions, restrict_to_cycles,
                      standard_plum_diagram)
from .graph import (PlanarGraph, SpanningTree, build_plum_graph, cube_graph,
                    cycle_graph, disjoint_cycle_pairs, random_planar_graph,
                    random_spanning_tree, spanning_tree)
from .invariants import (bracket_determinant, knot_determinant, linking_vector,
                         nontriviality_certificate)
from .l1 import EXACT, L1Problem, min_l1, unknotting_sequence, verify_subclaims
from .moves import EQ_EQ, closed_form_labels, move_set, normalize, verify_delta_realization


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    seconds: float = 0.0
    detail: Dict = field(default_factory=dict)

    def line(self) -> str:
        return (f"criterion {self.number:2d} [{'PASS' if self.ok else 'FAIL'}] "
                f"{self.title} ({self.seconds:.2f}s)")

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "ok": self.ok,
                "seconds": round(self.seconds, 3), "detail": self.detail}


def _timed(number: int, title: str, limit=None):
    def wrap(fn: Callable[[], tuple]):
        def run() -> CriterionResult:
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if limit is not None and dt >= limit:
                ok = False
                detail["timeLimit"] = limit
            return CriterionResult(number, title, bool(ok), dt, detail)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(1, "linking vector of the standard diagram, n = 1..6", limit=5.0)
def criterion_1():
    got = {}
    ok = True
    for n in range(1, 7):
        L = tuple(linking_vector(standard_plum_diagram(n), build_plum_graph(n)))
        got[n] = list(L)
        ok &= L == tuple([2 * n + 1] + [0] * (n - 1))
    return ok, {"vectors": got}


@_timed(2, "exhaustive L1 lower bound 2n, n = 1..4")
def criterion_2():
    rows = {}
    ok = True
    for n in range(1, 5):
        t0 = time.perf_counter()
        target = tuple([2 * n + 1] + [0] * (n - 1))
        sol = min_l1(L1Problem(move_set(n).vectors, target), max_cost=2 * n)
        dt = time.perf_counter() - t0
        good = sol.status == EXACT and sol.cost == 2 * n and (n < 4 or dt < 120)
        rows[n] = {"cost": sol.cost, "status": sol.status, "seconds": round(dt, 3)}
        ok &= good
    return ok, rows


@_timed(3, "explicit 2n-term sequence, n = 1..12", limit=1.0)
def criterion_3():
    ok = True
    bad = []
    for n in range(1, 13):
        ms = move_set(n)
        eqeq = {v for v, pairs in ms.realized_by.items()
                if any(p.kind == EQ_EQ for p in pairs)}
        seq = unknotting_sequence(n)
        total = tuple(sum(c) for c in zip(*seq))
        good = (len(seq) == 2 * n and total == tuple([2 * n + 1] + [0] * (n - 1))
                and all(normalize(t) in eqeq for t in seq))
        if not good:
            bad.append(n)
        ok &= good
    return ok, {"failed": bad}


@_timed(4, "move set equals the closed form, n = 2..5")
def criterion_4():
    ok = True
    sizes = {}
    for n in range(2, 6):
        ms = move_set(n)
        L = closed_form_labels(n)
        same_q = L["q"] == L[f"b{n}"] == L[f"c{n}"] == L[f"e{n}"]
        ok &= ms.matches_closed_form() and same_q
        sizes[n] = len(ms.vectors)
    return ok, {"sizes": sizes}


@_timed(5, "prefix minima n+k and value sets, n = 2..4")
def criterion_5():
    ok = True
    rows = {}
    for n in range(2, 5):
        r = verify_subclaims(n)
        ok &= r["ok"]
        rows[n] = [(row["k"], row["cost"], row["values"]) for row in r["rows"]]
    return ok, rows


@_timed(6, "cube knotted projection: 8 certified resolutions", limit=1.0)
def criterion_6():
    p = cube_knotted_projection()
    g = p.graph
    counts = []
    verdicts = []
    for d in resolutions(p):
        cert = nontriviality_certificate(d, g)
        verdicts.append(cert.verdict)
        counts.append(cert.hopf_count)
    ok = (len(counts) == 8 and all(v == "nontrivial" for v in verdicts)
          and sorted(counts) == [1, 1, 1, 1, 1, 1, 3, 3])
    return ok, {"hopfCounts": counts, "verdicts": verdicts}


@_timed(7, "cube has exactly 3 disjoint cycle pairs")
def criterion_7():
    k = len(disjoint_cycle_pairs(cube_graph()))
    return k == 3, {"pairs": k}


@_timed(8, "equator determinant 2n+1 against the bracket, n = 1..5")
def criterion_8():
    ok = True
    rows = {}
    for n in range(1, 6):
        P = build_plum_graph(n)
        K = restrict_to_cycles(standard_plum_diagram(n), [P.equator])
        det, br = knot_determinant(K), bracket_determinant(K)
        rows[n] = [det, br]
        ok &= det == br == 2 * n + 1
    return ok, rows


@_timed(9, "linking-vector change equals the move vector, 200 trials")
def criterion_9(trials: int = 200, seed: int = 20241):
    rng = random.Random(seed)
    bases = {n: standard_plum_diagram(n) for n in (1, 2, 3)}
    fails = []
    for t in range(trials):
        n = rng.choice((1, 2, 3))
        d = random_finger_moves(bases[n], rng, rng.randint(0, 2))
        d = change_crossings(d, [x for x in d.crossing_ids if rng.random() < 0.3])
        x = rng.choice(d.crossing_ids)
        r = verify_delta_realization(n, d, [x])
        if not r["ok"]:
            fails.append({"trial": t, "n": n, "row": r["rows"][0]})
    return not fails, {"trials": trials, "failures": fails[:5]}


# ---------------------------------------------------------------------------

def branch_index_oracle(g: PlanarGraph, T: SpanningTree) -> Dict[int, int]:
    """Memoized top-down recursion; far endpoints from explicit root paths."""
    adj = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.id in T.edges:
            adj[e.tail].append((e.id, e.head))
            adj[e.head].append((e.id, e.tail))
    dist = {T.root: 0}
    stack = [T.root]
    while stack:
        v = stack.pop()
        for _, w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                stack.append(w)

    @lru_cache(maxsize=None)
    def b(eid: int) -> int:
        if eid not in T.edges:
            return 1
        e = g.edge(eid)
        far = e.head if dist[e.head] > dist[e.tail] else e.tail
        total = 0
        for d in g.edges:
            mult = (d.tail == far) + (d.head == far)
            if d.id != eid and mult:
                total += b(d.id) * mult
        return total or 1

    return {e.id: b(e.id) for e in g.edges}


def random_descending_case(rng: random.Random):
    g = random_planar_graph(rng, rng.randint(2, 6), rng.randint(1, 5))
    T = random_spanning_tree(g, rng)
    free = [e.id for e in g.edges if e.id not in T.edges]
    d = random_finger_moves(diagram_from_graph(g), rng, rng.randint(0, 4), set(free))
    d = change_crossings(d, [x for x in d.crossing_ids if rng.random() < 0.5])
    order = free[:]
    rng.shuffle(order)
    orient = {e: rng.choice((1, -1)) for e in free}
    return d, T, order, orient


@_timed(10, "bound constants, branch-index oracle, descending sets", limit=10.0)
def criterion_10(pairs: int = 50, diagrams: int = 100, seed: int = 7):
    rng = random.Random(seed)
    issues = []
    for k in (3, 4, 5, 6, 8):
        g = cycle_graph(k)
        c = theorem2_constants(g, spanning_tree(g))
        if (c.A, c.B) != (Fraction(1, 2), 0):
            issues.append(f"C_{k} gives {(str(c.A), str(c.B))}")
    for _ in range(pairs):
        g = random_planar_graph(rng, rng.randint(2, 9), rng.randint(0, 8))
        T = random_spanning_tree(g, rng)
        if branch_indices(g, T) != branch_index_oracle(g, T):
            issues.append(f"branch indices differ on {g.to_json().strip()}")
    for _ in range(diagrams):
        d, T, order, orient = random_descending_case(rng)
        r = descending_change_set(d, T.edges, order, orient)
        c = len(d)
        if r.size != min(len(r.descending), c - len(r.descending)) or \
                r.size > trivializable_bound(c):
            issues.append(f"size {r.size} for {c} crossings")
        after = apply_descending(d, r)
        if descending_audit(after, T.edges, order, orient, ascending=r.ascending):
            issues.append("audit failed")
    return not issues, {"issues": issues[:5]}


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(emit: Callable[[str], None] = None) -> List[CriterionResult]:
    out = []
    for fn in CRITERIA:
        r = fn()
        if emit is not None:
            emit(r.line())
        out.append(r)
    return out
