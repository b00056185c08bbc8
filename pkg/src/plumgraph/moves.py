"""Changes of the linking vector of P_{2n+1} under a single crossing change.

Deltas are derived from region-cycle membership and traversal signs: a
crossing change between edges d and e alters lk(N_i, S_j) by
``eps * sigma(N_i, d) * sigma(S_j, e)`` whenever N_i contains one edge, S_j
the other and the two cycles are disjoint.  ``eps`` is the sign of the
change; changing a crossing whose sign (edges oriented by reference) is
``s`` gives ``eps = -s``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .diagram import Diagram, crossing_change, standard_plum_diagram
from .graph import PlumGraph, build_plum_graph

Vector = Tuple[int, ...]

EQ_EQ = "equatorial-equatorial"
EQ_SPOKE = "equatorial-spoke"
NS_SPOKE = "north-south-spoke"


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class EdgePair:
    d: int
    e: int
    kind: str


@dataclass(frozen=True)
class MoveVector:
    vector: Vector
    pair: EdgePair
    eps: int


def normalize(v) -> Vector:
    """Representative up to sign: first nonzero entry positive."""
    v = tuple(int(x) for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _pair_kind(P: PlumGraph, d: int, e: int) -> str:
    kinds = sorted((P.edge_class(d), P.edge_class(e)))
    if kinds == ["equatorial", "equatorial"]:
        return EQ_EQ
    if kinds[0] == "equatorial":
        return EQ_SPOKE
    if kinds == ["north-spoke", "south-spoke"]:
        return NS_SPOKE
    raise MoveError("two spokes at the same pole are never disjoint")


def disjoint_edge_pairs(P: PlumGraph) -> List[EdgePair]:
    g = P.graph
    out = []
    for x, y in combinations(g.edges, 2):
        if {x.tail, x.head} & {y.tail, y.head}:
            continue
        out.append(EdgePair(x.id, y.id, _pair_kind(P, x.id, y.id)))
    return out


def offset_bucket(P: PlumGraph, i: int, j: int) -> int:
    """0-based index k-1 of the l_k receiving lk(N_i, S_j)."""
    r = (j - i) % P.m
    assert r not in (P.n, P.n + 1), "N_i and S_j meet"
    return min(r, P.m - r)


def crossing_change_delta(P: PlumGraph, pair, eps: int) -> MoveVector:
    if isinstance(pair, EdgePair):
        d, e = pair.d, pair.e
    else:
        d, e = pair
    g = P.graph
    ed, ee = g.edge(d), g.edge(e)
    if {ed.tail, ed.head} & {ee.tail, ee.head}:
        raise MoveError(f"edges {d} and {e} are not disjoint")
    if eps not in (1, -1):
        raise MoveError("eps must be +1 or -1")
    vec = [0] * P.n
    member = P.region_cycles_of_edge
    for x, y in ((d, e), (e, d)):
        for side_x, i, sx in member[x]:
            if side_x != "N":
                continue
            for side_y, j, sy in member[y]:
                if side_y == "S" and P.disjoint_NS(i, j):
                    vec[offset_bucket(P, i, j)] += eps * sx * sy
    ep = pair if isinstance(pair, EdgePair) else EdgePair(d, e, _pair_kind(P, d, e))
    return MoveVector(tuple(vec), ep, eps)


# ---------------------------------------------------------------------------
# closed form

def _unit(n, entries) -> Vector:
    v = [0] * n
    for pos, val in entries:
        v[pos - 1] = val
    return tuple(v)


def closed_form_labels(n: int) -> Dict[str, Vector]:
    """The labeled generators a_i, b_i, c_i, d, e_i, p, q (with aliases)."""
    if n < 1:
        raise MoveError("n must be positive")
    L: Dict[str, Vector] = {}
    for i in range(1, n + 1):
        L[f"a{i}"] = _unit(n, [(i, 2)])
    q = _unit(n, [(n, 1)])
    if n == 1:
        L["q"] = q
        L["b1"] = L["c1"] = L["e1"] = q
        return L
    for i in range(1, n):
        L[f"b{i}"] = _unit(n, [(i, 1), (i + 1, 1)])
        L[f"c{i}"] = _unit(n, [(i, 1), (i + 1, -1)])
    L["d"] = L["e0"] = _unit(n, [(1, 2), (2, -2)])
    for i in range(1, n - 1):
        L[f"e{i}"] = _unit(n, [(i, 1), (i + 1, -2), (i + 2, 1)])
    L["p"] = L[f"e{n - 1}"] = _unit(n, [(n - 1, 1), (n, -2)])
    L["q"] = L[f"b{n}"] = L[f"c{n}"] = L[f"e{n}"] = q
    return L


def closed_form_B(n: int) -> set:
    return {normalize(v) for v in closed_form_labels(n).values()}


@dataclass
class MoveSet:
    n: int
    labels: Dict[str, Vector]
    vectors: List[Vector]                       # deduplicated, sign-normalized
    realized_by: Dict[Vector, List[EdgePair]] = field(default_factory=dict)

    def kinds(self, v) -> set:
        return {p.kind for p in self.realized_by.get(normalize(v), [])}

    def matches_closed_form(self) -> bool:
        return set(self.vectors) == closed_form_B(self.n)

    def table(self, P: Optional[PlumGraph] = None) -> List[dict]:
        P = P or build_plum_graph(self.n)
        rows = []
        for p in disjoint_edge_pairs(P):
            v = crossing_change_delta(P, p, 1).vector
            rows.append({"pair": [P.edge_name(p.d), P.edge_name(p.e)],
                         "edges": [p.d, p.e], "class": p.kind, "vector": list(v)})
        return rows


def move_set(n: int) -> MoveSet:
    P = build_plum_graph(n)
    realized: Dict[Vector, List[EdgePair]] = {}
    for pair in disjoint_edge_pairs(P):
        # the two signs give opposite vectors, hence one normalized class
        v = normalize(crossing_change_delta(P, pair, 1).vector)
        if any(v):
            realized.setdefault(v, []).append(pair)
    labels = closed_form_labels(n)
    ms = MoveSet(n, labels, sorted(realized, reverse=True), realized)
    assert ms.matches_closed_form(), "enumerated moves differ from B_{2n+1}"
    return ms


def odd_prefix_labels(n: int, k: int) -> set:
    """Labels v of B with v(1) + ... + v(k) odd."""
    return {name for name, v in closed_form_labels(n).items() if sum(v[:k]) % 2}


# ---------------------------------------------------------------------------
# cross-module check

def verify_delta_realization(n: int, diagram: Optional[Diagram] = None,
                             crossings=None) -> dict:
    """Compare recomputed linking-vector changes with predicted deltas."""
    from .invariants import linking_vector

    P = build_plum_graph(n)
    D = diagram if diagram is not None else standard_plum_diagram(n)
    base = linking_vector(D, P)
    rows = []
    ok = True
    for x in (D.crossing_ids if crossings is None else crossings):
        d, e = D.crossing_edges(x)
        after = linking_vector(crossing_change(D, x), P)
        delta = tuple(a - b for a, b in zip(after, base))
        ed, ee = P.graph.edge(d), P.graph.edge(e)
        if {ed.tail, ed.head} & {ee.tail, ee.head}:
            expected = (0,) * n
        else:
            expected = crossing_change_delta(P, (d, e), -D.sign(x)).vector
        good = delta == expected
        ok &= good
        rows.append({"crossing": x, "edges": [d, e], "delta": list(delta),
                     "expected": list(expected), "ok": good})
    return {"n": n, "ok": ok, "rows": rows}
